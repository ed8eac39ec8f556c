#include "polymesh/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "polymesh/error.hpp"

namespace polymesh {

namespace {

template <typename Scalar>
constexpr bool is_complex_v = !std::is_same_v<Scalar, double>;

// Affine map of one coordinate onto the reference square [-1, 1].
template <typename Scalar>
Scalar to_reference(const Box& box, Eigen::Index axis, Complex x)
{
    const double lo = box.lo[axis], hi = box.hi[axis];
    if constexpr (is_complex_v<Scalar>) {
        const double ilo = box.ilo[axis], ihi = box.ihi[axis];
        const Complex center(0.5 * (lo + hi), 0.5 * (ilo + ihi));
        const double half = std::max(0.5 * (hi - lo), 0.5 * (ihi - ilo));
        return (x - center) / half;
    } else {
        return (2.0 * x.real() - lo - hi) / (hi - lo);
    }
}

// Row blocks used when evaluating large control sets.
constexpr Eigen::Index kBlockRows = 2048;

PointSet row_block(const PointSet& Y, Eigen::Index start, Eigen::Index count)
{
    return Y.middleRows(start, count);
}

} // namespace

// ---------------------------------------------------------------------- box

Box bounding_box(const PointSet& points, double pad)
{
    if (points.rows() == 0) throw Error("no_points", "cannot bound an empty point set");
    if (pad < 0.0) throw Error("arity", "padding must be nonnegative");
    const Eigen::Index D = points.cols();
    Box box;
    box.lo  = points.real().colwise().minCoeff().transpose();
    box.hi  = points.real().colwise().maxCoeff().transpose();
    box.ilo = points.imag().colwise().minCoeff().transpose();
    box.ihi = points.imag().colwise().maxCoeff().transpose();
    for (Eigen::Index d = 0; d < D; ++d) {
        const double width = box.hi[d] - box.lo[d];
        if (width <= 0.0) {
            const double half = pad > 0.0 ? 2.0 * pad : 1.0;
            const double mid  = box.lo[d];
            box.lo[d] = mid - half;
            box.hi[d] = mid + half;
        } else {
            box.lo[d] -= pad * (width + 1.0);
            box.hi[d] += pad * (width + 1.0);
        }
        const double iwidth = box.ihi[d] - box.ilo[d];
        box.ilo[d] -= pad * (iwidth + 1.0);
        box.ihi[d] += pad * (iwidth + 1.0);
    }
    return box;
}

// --------------------------------------------------------------- Vandermonde

std::vector<Exponent> total_degree_indices(int D, int n)
{
    std::vector<Exponent> out;
    Exponent e(D, 0);
    // Enumerate exponents of exact degree `deg` with the leading exponent
    // decreasing, recursively over the coordinates.
    auto fill = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == D - 1) {
            e[axis] = remaining;
            out.push_back(e);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            e[axis] = v;
            self(self, axis + 1, remaining - v);
        }
    };
    for (int deg = 0; deg <= n; ++deg) {
        if (D == 0) break;
        fill(fill, 0, deg);
    }
    return out;
}

template <typename Scalar>
Matrix<Scalar> chebyshev_vandermonde(const Box& box, const std::vector<Exponent>& indices,
                                     const PointSet& Y)
{
    const Eigen::Index D = Y.cols();
    if (D != box.dim()) throw Error("arity", "points and box differ in dimension");
    int n = 0;
    for (const auto& e : indices) {
        int s = 0;
        for (int v : e) s += v;
        n = std::max(n, s);
    }
    Matrix<Scalar> U(Y.rows(), static_cast<Eigen::Index>(indices.size()));
    // T(d, j) = T_j of the mapped d-th coordinate.
    Matrix<Scalar> T(D, n + 1);
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
        for (Eigen::Index d = 0; d < D; ++d) {
            const Scalar t = to_reference<Scalar>(box, d, Y(i, d));
            T(d, 0) = Scalar(1.0);
            if (n >= 1) T(d, 1) = t;
            for (int j = 2; j <= n; ++j) T(d, j) = Scalar(2.0) * t * T(d, j - 1) - T(d, j - 2);
        }
        for (std::size_t c = 0; c < indices.size(); ++c) {
            Scalar v(1.0);
            for (Eigen::Index d = 0; d < D; ++d) v *= T(d, indices[c][d]);
            U(i, static_cast<Eigen::Index>(c)) = v;
        }
    }
    return U;
}

template <typename Scalar>
Matrix<Scalar> chebyshev_vandermonde(const Box& box, int n, const PointSet& Y)
{
    if (n < 0) throw Error("arity", "degree must be nonnegative");
    return chebyshev_vandermonde<Scalar>(box, total_degree_indices(static_cast<int>(Y.cols()), n), Y);
}

// ------------------------------------------------------------- orthonormal

template <typename Scalar>
std::vector<Exponent> OrthoBasis<Scalar>::retained_indices() const
{
    if (indices.empty()) throw Error("arity", "basis was built from a bare matrix");
    std::vector<Exponent> out(eta);
    for (int j = 0; j < eta; ++j) out[j] = indices[pivot[j]];
    return out;
}

template <typename Scalar>
OrthoBasis<Scalar> orthonormalize(const Matrix<Scalar>& U, const OrthoOptions& opts)
{
    const Eigen::Index N = U.rows();
    const Eigen::Index M = U.cols();
    if (N == 0 || M == 0) throw Error("no_points", "empty Vandermonde matrix");

    OrthoBasis<Scalar> basis;
    basis.weights = opts.weights.value_or(Eigen::VectorXd::Ones(N));
    if (basis.weights.size() != N || (basis.weights.array() <= 0.0).any()) {
        throw Error("arity", "weights must be positive, one per row");
    }
    const Eigen::VectorXd sqrt_w = basis.weights.array().sqrt();

    const Matrix<Scalar> Uw = sqrt_w.asDiagonal() * U;
    // Tall matrices: column pivoting runs on the triangular factor of a
    // blocked QR, which has the same column norms and pivot order.
    Matrix<Scalar> reduced;
    if (N > M) {
        Eigen::HouseholderQR<Matrix<Scalar>> pre(Uw);
        reduced = pre.matrixQR().topRows(M).template triangularView<Eigen::Upper>();
    }
    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(N > M ? reduced : Uw);
    const auto& packed = qr.matrixQR();
    const Eigen::Index maxrank = std::min(N, M);
    const double r00 = std::abs(packed(0, 0));

    int numeric_rank = 0;
    while (numeric_rank < maxrank &&
           std::abs(packed(numeric_rank, numeric_rank)) > opts.rank_tol * r00) {
        ++numeric_rank;
    }

    int eta = numeric_rank;
    if (opts.eta_hint) {
        eta = *opts.eta_hint;
        if (eta < 1 || eta > maxrank ||
            !(std::abs(packed(eta - 1, eta - 1)) > opts.hint_tol * r00)) {
            std::ostringstream msg;
            msg << "requested eta = " << eta << " but numeric rank is " << numeric_rank << " of "
                << M << " columns (|R_11| = " << r00 << ")";
            throw Error("rank_deficient", msg.str());
        }
    }
    if (eta == 0) throw Error("rank_deficient", "Vandermonde matrix is numerically zero");

    basis.eta   = eta;
    basis.pivot = qr.colsPermutation().indices();
    basis.R     = packed.topLeftCorner(eta, eta).template triangularView<Eigen::Upper>();

    Matrix<Scalar> V(N, eta);
    for (int j = 0; j < eta; ++j) V.col(j) = Uw.col(basis.pivot[j]);
    basis.R.template triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(V);
    Eigen::HouseholderQR<Matrix<Scalar>> qr2(V);
    basis.R2 = qr2.matrixQR().topLeftCorner(eta, eta).template triangularView<Eigen::Upper>();
    Matrix<Scalar> Q = Matrix<Scalar>::Identity(N, eta);
    Q.applyOnTheLeft(qr2.householderQ());
    basis.Q = sqrt_w.cwiseInverse().asDiagonal() * Q;
    return basis;
}

template <typename Scalar>
OrthoBasis<Scalar> make_ortho_basis(const PointSet& X, int n, const OrthoOptions& opts, double pad)
{
    const Box box = bounding_box(X, pad);
    auto indices  = total_degree_indices(static_cast<int>(X.cols()), n);
    auto basis    = orthonormalize<Scalar>(chebyshev_vandermonde<Scalar>(box, indices, X), opts);
    basis.box     = box;
    basis.degree  = n;
    basis.indices = std::move(indices);
    basis.X       = X;
    return basis;
}

template <typename Scalar>
Matrix<Scalar> ortho_eval(const OrthoBasis<Scalar>& basis, const PointSet& Y)
{
    if (Y.cols() != basis.ambient_dim()) throw Error("arity", "point dimension mismatch");
    Matrix<Scalar> V = chebyshev_vandermonde<Scalar>(basis.box, basis.retained_indices(), Y);
    basis.R.template triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(V);
    basis.R2.template triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(V);
    return V;
}

// ------------------------------------------------------------ node selection

template <typename Scalar>
Eigen::VectorXi afp_select(const OrthoBasis<Scalar>& basis)
{
    const Matrix<Scalar> At = (basis.weights.asDiagonal() * basis.Q).adjoint();
    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(At);
    const auto& packed = qr.matrixQR();
    const int eta = basis.eta;
    if (At.cols() < eta ||
        !(std::abs(packed(eta - 1, eta - 1)) > 1e-13 * std::abs(packed(0, 0)))) {
        throw Error("degenerate_mesh", "fewer than eta independent mesh points");
    }
    return qr.colsPermutation().indices().head(eta);
}

/// Pivots within this relative distance of the largest count as ties.
constexpr double kPivotTie = 1e-12;

template <typename Scalar>
Eigen::VectorXi dlp_select(const OrthoBasis<Scalar>& basis)
{
    Matrix<Scalar> A = basis.weights.asDiagonal() * basis.Q;
    const Eigen::Index N = A.rows();
    const int eta = basis.eta;
    if (N < eta) throw Error("degenerate_mesh", "fewer mesh points than basis functions");

    Eigen::VectorXi order(N);
    for (Eigen::Index i = 0; i < N; ++i) order[i] = static_cast<int>(i);

    double first_pivot = 0.0;
    for (int j = 0; j < eta; ++j) {
        Eigen::Index best = j;
        double best_abs = std::abs(A(j, j));
        for (Eigen::Index i = j + 1; i < N; ++i) {
            const double v = std::abs(A(i, j));
            const bool tie = std::abs(v - best_abs) <= kPivotTie * best_abs;
            if ((v > best_abs && !tie) || (tie && order[i] < order[best])) {
                best = i;
                best_abs = v;
            }
        }
        if (j == 0) first_pivot = best_abs;
        if (!(best_abs > 1e-13 * first_pivot) || best_abs == 0.0) {
            throw Error("degenerate_mesh", "LU pivot vanished before eta Leja points");
        }
        if (best != j) {
            A.row(j).swap(A.row(best));
            std::swap(order[j], order[best]);
        }
        const Eigen::Index below = N - j - 1;
        if (below > 0) {
            A.col(j).tail(below) /= A(j, j);
            const Eigen::Index right = eta - j - 1;
            if (right > 0) {
                A.bottomRightCorner(below, right).noalias() -=
                    A.col(j).tail(below) * A.row(j).segment(j + 1, right);
            }
        }
    }
    return order.head(eta);
}

// ---------------------------------------------------------------- operators

std::string to_string(OperatorKind kind)
{
    switch (kind) {
    case OperatorKind::interp_afp: return "afp";
    case OperatorKind::interp_dlp: return "dlp";
    case OperatorKind::least_squares: return "ls";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& name)
{
    if (name == "afp") return OperatorKind::interp_afp;
    if (name == "dlp") return OperatorKind::interp_dlp;
    if (name == "ls") return OperatorKind::least_squares;
    throw Error("usage", "unknown method '" + name + "' (expected afp, dlp or ls)");
}

template <typename Scalar>
Operator<Scalar> make_operator(OperatorKind kind, const OrthoBasis<Scalar>& basis)
{
    Operator<Scalar> op;
    op.kind = kind;
    if (kind == OperatorKind::least_squares) return op;

    op.nodes = kind == OperatorKind::interp_afp ? afp_select(basis) : dlp_select(basis);
    Matrix<Scalar> Vn(basis.eta, basis.eta);
    for (int i = 0; i < basis.eta; ++i) Vn.row(i) = basis.Q.row(op.nodes[i]);
    Eigen::PartialPivLU<Matrix<Scalar>> lu(Vn);
    if (!(lu.rcond() > 1e-15)) {
        throw Error("interp_singular", "node Vandermonde matrix is numerically singular");
    }
    op.node_inverse = lu.inverse();
    return op;
}

template <typename Scalar>
Vector<Scalar> fit(const Operator<Scalar>& op, const OrthoBasis<Scalar>& basis,
                   const Vector<Scalar>& samples)
{
    if (samples.size() != basis.X.rows()) throw Error("arity", "one sample per mesh point expected");
    if (op.kind == OperatorKind::least_squares) {
        return basis.Q.adjoint() * (basis.weights.asDiagonal() * samples);
    }
    Vector<Scalar> at_nodes(op.nodes.size());
    for (Eigen::Index i = 0; i < op.nodes.size(); ++i) at_nodes[i] = samples[op.nodes[i]];
    return op.node_inverse * at_nodes;
}

template <typename Scalar>
Vector<Scalar> evaluate(const OrthoBasis<Scalar>& basis, const Vector<Scalar>& coeffs,
                        const PointSet& Y)
{
    if (coeffs.size() != basis.eta) throw Error("arity", "coefficient count differs from eta");
    Vector<Scalar> out(Y.rows());
    for (Eigen::Index start = 0; start < Y.rows(); start += kBlockRows) {
        const Eigen::Index count = std::min(kBlockRows, Y.rows() - start);
        out.segment(start, count) = ortho_eval(basis, row_block(Y, start, count)) * coeffs;
    }
    return out;
}

template <typename Scalar>
double rel_error(const Vector<Scalar>& f_control, const Vector<Scalar>& approx_control)
{
    if (f_control.size() != approx_control.size()) throw Error("arity", "length mismatch");
    const double denom = f_control.norm();
    if (!(denom > 0.0)) throw Error("zero_function", "function vanishes on the control set");
    return (f_control - approx_control).norm() / denom;
}

template <typename Scalar>
std::vector<double> lebesgue_constants(const std::vector<Operator<Scalar>>& ops,
                                       const OrthoBasis<Scalar>& basis, const PointSet& control)
{
    if (control.rows() == 0) throw Error("no_points", "empty control set");
    const Eigen::Index N = basis.X.rows();
    Eigen::Index rows = kBlockRows;
    // Right factors: Q^H W for least squares, the node inverse otherwise.
    std::vector<Matrix<Scalar>> right(ops.size());
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].kind == OperatorKind::least_squares) {
            right[k] = basis.Q.adjoint() * basis.weights.asDiagonal();
            rows = std::min(rows, std::max<Eigen::Index>(64, 4'000'000 / std::max<Eigen::Index>(N, 1)));
        } else {
            right[k] = ops[k].node_inverse;
        }
    }
    std::vector<double> lebesgue(ops.size(), 0.0);
    Matrix<Scalar> V, L;
    for (Eigen::Index start = 0; start < control.rows(); start += rows) {
        const Eigen::Index count = std::min(rows, control.rows() - start);
        V = ortho_eval(basis, row_block(control, start, count));
        for (std::size_t k = 0; k < ops.size(); ++k) {
            L.noalias() = V * right[k];
            lebesgue[k] = std::max(lebesgue[k], L.cwiseAbs().rowwise().sum().maxCoeff());
        }
    }
    return lebesgue;
}

template <typename Scalar>
double lebesgue_constant(const Operator<Scalar>& op, const OrthoBasis<Scalar>& basis,
                         const PointSet& control)
{
    return lebesgue_constants<Scalar>({op}, basis, control).front();
}

// ----------------------------------------------------------- test functions

std::string to_string(TestFunction f)
{
    switch (f) {
    case TestFunction::f1: return "f1";
    case TestFunction::f2: return "f2";
    case TestFunction::f3: return "f3";
    case TestFunction::f4: return "f4";
    case TestFunction::f4_viviani: return "f4_viviani";
    }
    return "unknown";
}

TestFunction test_function_from_string(const std::string& tag)
{
    if (tag == "f1") return TestFunction::f1;
    if (tag == "f2") return TestFunction::f2;
    if (tag == "f3") return TestFunction::f3;
    if (tag == "f4") return TestFunction::f4;
    if (tag == "f4_viviani") return TestFunction::f4_viviani;
    throw Error("usage", "unknown test function '" + tag + "'");
}

double test_function(TestFunction f, double x, double y, double z)
{
    switch (f) {
    case TestFunction::f1: return std::pow(x + 0.5 * y + 2.0 * z + 1.0, 14);
    case TestFunction::f2: return std::exp(-(x * x + 0.5 * y * y + 2.0 * z * z));
    case TestFunction::f3: return std::sin(4.0 * x + 5.0 * y + 3.0 * z);
    case TestFunction::f4:
        return std::sqrt((x - 1.0) * (x - 1.0) + y * y + (z - 1.0) * (z - 1.0)) +
               std::sqrt((x - 1.0) * (x - 1.0) + y * y + (z + 1.0) * (z + 1.0));
    case TestFunction::f4_viviani:
        return std::sqrt(x * x + y * y + (z - 2.0) * (z - 2.0)) +
               std::sqrt(x * x + y * y + (z + 2.0) * (z + 2.0));
    }
    return 0.0;
}

Eigen::VectorXd sample_test_function(TestFunction f, const PointSet& points)
{
    if (points.cols() != 3) throw Error("arity", "test functions are defined on R^3");
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        out[i] = test_function(f, points(i, 0).real(), points(i, 1).real(), points(i, 2).real());
    }
    return out;
}

// ------------------------------------------------------------ instantiation

#define POLYMESH_INSTANTIATE(S)                                                                   \
    template Matrix<S> chebyshev_vandermonde<S>(const Box&, int, const PointSet&);                \
    template Matrix<S> chebyshev_vandermonde<S>(const Box&, const std::vector<Exponent>&,         \
                                                const PointSet&);                                 \
    template struct OrthoBasis<S>;                                                                \
    template OrthoBasis<S> orthonormalize<S>(const Matrix<S>&, const OrthoOptions&);              \
    template OrthoBasis<S> make_ortho_basis<S>(const PointSet&, int, const OrthoOptions&, double); \
    template Matrix<S> ortho_eval<S>(const OrthoBasis<S>&, const PointSet&);                      \
    template Eigen::VectorXi afp_select<S>(const OrthoBasis<S>&);                                 \
    template Eigen::VectorXi dlp_select<S>(const OrthoBasis<S>&);                                 \
    template Operator<S> make_operator<S>(OperatorKind, const OrthoBasis<S>&);                    \
    template Vector<S> fit<S>(const Operator<S>&, const OrthoBasis<S>&, const Vector<S>&);        \
    template Vector<S> evaluate<S>(const OrthoBasis<S>&, const Vector<S>&, const PointSet&);      \
    template double rel_error<S>(const Vector<S>&, const Vector<S>&);                             \
    template double lebesgue_constant<S>(const Operator<S>&, const OrthoBasis<S>&, const PointSet&);   \
    template std::vector<double> lebesgue_constants<S>(const std::vector<Operator<S>>&,               \
                                                       const OrthoBasis<S>&, const PointSet&);

POLYMESH_INSTANTIATE(double)
POLYMESH_INSTANTIATE(Complex)

#undef POLYMESH_INSTANTIATE

} // namespace polymesh
