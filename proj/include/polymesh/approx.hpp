///
/// \file approx.hpp
///
/// Discrete orthonormal bases on a norming mesh and the operators built on
/// them: interpolation at Approximate Fekete / Discrete Leja points and
/// discrete least squares.
///
/// The pipeline follows the usual recipe:
///
///  1. a bounding box of the mesh X fixes a shifted tensor Chebyshev basis of
///     total degree n, giving the Vandermonde-like matrix U_X;
///  2. Householder QR with column pivoting U_X(:, pivot) = Q R selects eta
///     independent columns and Q(:, 1:eta) is orthonormal on X;
///  3. a second QR pass on U_X(:, pivot(1:eta)) R^{-1} = Q2 R2 restores
///     orthogonality lost to the conditioning of R;
///  4. the basis is evaluated anywhere as U_Y(:, pivot(1:eta)) R^{-1} R2^{-1}.
///
/// Everything is templated on the scalar: `double` for real sets, and
/// `std::complex<double>` for sets in complex space, where transposes become
/// adjoints.
///

#ifndef POLYMESH_APPROX_HPP
#define POLYMESH_APPROX_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polymesh/polycore.hpp"

namespace polymesh {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Axis-aligned box of the real parts (and, for complex sets, of the
/// imaginary parts) of a point set.
struct Box {
    Eigen::VectorXd lo, hi;    ///< real parts
    Eigen::VectorXd ilo, ihi;  ///< imaginary parts

    Eigen::Index dim() const { return lo.size(); }
};

/// Coordinatewise min/max widened by pad * (width + 1) per side. Degenerate
/// axes get half-width 2 * pad, or 1 when pad is zero.
Box bounding_box(const PointSet& points, double pad = 0.0);

/// Total-degree multi-indices |alpha| <= n in D variables, graded
/// lexicographic (degree first, then larger leading exponent first).
std::vector<Exponent> total_degree_indices(int D, int n);

/// Shifted tensor Chebyshev basis evaluated on Y, one column per index.
template <typename Scalar>
Matrix<Scalar> chebyshev_vandermonde(const Box& box, int n, const PointSet& Y);

/// Same, restricted to the listed multi-indices (all of degree <= n).
template <typename Scalar>
Matrix<Scalar> chebyshev_vandermonde(const Box& box, const std::vector<Exponent>& indices,
                                     const PointSet& Y);

struct OrthoOptions {
    std::optional<int> eta_hint;  ///< dimension of P_n on the set, when known
    double rank_tol = 1e-10;      ///< relative |R_ii| cut for the numeric rank
    double hint_tol = 1e-14;      ///< |R_eta,eta| floor when eta is prescribed
    std::optional<Eigen::VectorXd> weights;
};

template <typename Scalar>
struct OrthoBasis {
    Box box;
    int degree = 0;
    int eta    = 0;
    std::vector<Exponent> indices;  ///< all C(D+n, D) basis multi-indices
    Eigen::VectorXi pivot;          ///< column permutation of U_X
    Matrix<Scalar> R;               ///< leading eta x eta triangular block
    Matrix<Scalar> R2;              ///< triangular factor of the second pass
    Matrix<Scalar> Q;               ///< N x eta, orthonormal w.r.t. weights
    PointSet X;
    Eigen::VectorXd weights;

    Eigen::Index ambient_dim() const { return X.cols(); }
    /// Multi-indices of the eta retained columns in pivot order.
    std::vector<Exponent> retained_indices() const;
};

/// Pivoted QR of an explicit Vandermonde matrix (box/indices left empty).
template <typename Scalar>
OrthoBasis<Scalar> orthonormalize(const Matrix<Scalar>& U, const OrthoOptions& opts = {});

/// Box, Vandermonde and pivoted QR for the mesh X at degree n.
template <typename Scalar>
OrthoBasis<Scalar> make_ortho_basis(const PointSet& X, int n, const OrthoOptions& opts = {},
                                    double pad = 0.0);

/// V_Y = U_Y(:, pivot(1:eta)) R^{-1} R2^{-1}.
template <typename Scalar>
Matrix<Scalar> ortho_eval(const OrthoBasis<Scalar>& basis, const PointSet& Y);

/// Approximate Fekete points: column-pivoted QR of Q^T, first eta pivots.
template <typename Scalar>
Eigen::VectorXi afp_select(const OrthoBasis<Scalar>& basis);

/// Discrete Leja points: LU with row pivoting on Q, in pivot order.
template <typename Scalar>
Eigen::VectorXi dlp_select(const OrthoBasis<Scalar>& basis);

enum class OperatorKind { interp_afp, interp_dlp, least_squares };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

template <typename Scalar>
struct Operator {
    OperatorKind kind = OperatorKind::least_squares;
    Eigen::VectorXi nodes;           ///< empty for least squares
    Matrix<Scalar> node_inverse;     ///< inverse of V at the nodes

    Eigen::Index card_nodes(const OrthoBasis<Scalar>& basis) const
    {
        return kind == OperatorKind::least_squares ? basis.X.rows() : nodes.size();
    }
};

/// Selects nodes (interpolation kinds) and factors the node matrix.
/// Throws Error("interp_singular") when it is numerically singular.
template <typename Scalar>
Operator<Scalar> make_operator(OperatorKind kind, const OrthoBasis<Scalar>& basis);

/// Coefficients in the orthonormal basis from samples on X.
template <typename Scalar>
Vector<Scalar> fit(const Operator<Scalar>& op, const OrthoBasis<Scalar>& basis,
                   const Vector<Scalar>& samples);

/// sum_j c_j psi_j(y) for each row y of Y.
template <typename Scalar>
Vector<Scalar> evaluate(const OrthoBasis<Scalar>& basis, const Vector<Scalar>& coeffs,
                        const PointSet& Y);

/// ||f - Lf||_2 / ||f||_2 on the control set. Throws Error("zero_function").
template <typename Scalar>
double rel_error(const Vector<Scalar>& f_control, const Vector<Scalar>& approx_control);

/// max over control points of the sum of |cardinal functions| (interpolation)
/// or of the weighted absolute reproducing kernel (least squares).
template <typename Scalar>
double lebesgue_constant(const Operator<Scalar>& op, const OrthoBasis<Scalar>& basis,
                         const PointSet& control);

/// Same for several operators on one basis; the basis is evaluated on the
/// control set once.
template <typename Scalar>
std::vector<double> lebesgue_constants(const std::vector<Operator<Scalar>>& ops,
                                       const OrthoBasis<Scalar>& basis, const PointSet& control);

// ------------------------------------------------------------ test functions

enum class TestFunction { f1, f2, f3, f4, f4_viviani };

std::string to_string(TestFunction f);
TestFunction test_function_from_string(const std::string& tag);

/// Real test function of a point of R^3.
double test_function(TestFunction f, double x, double y, double z);

/// Samples on a real 3-D point set (real parts used).
Eigen::VectorXd sample_test_function(TestFunction f, const PointSet& points);

} // namespace polymesh

#endif // POLYMESH_APPROX_HPP
