///
/// \file polycore.hpp
///
/// Sparse multivariate polynomials over C, equations monic in a
/// distinguished variable, fiber root solving and pointwise resultants.
///

#ifndef POLYMESH_POLYCORE_HPP
#define POLYMESH_POLYCORE_HPP

#include <complex>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polymesh {

using Complex = std::complex<double>;

/// A point of C^D. Point sets are stored row-wise in a PointSet.
using Point    = Eigen::VectorXcd;
using PointSet = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Exponent = std::vector<int>;

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

///
/// Sparse polynomial in `nvars` variables with complex coefficients.
///
/// Terms with a zero coefficient are never stored, so the zero polynomial has
/// an empty term map.
///
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Complex>;

    explicit MultiPoly(int nvars = 0);

    static MultiPoly constant(int nvars, Complex c);
    static MultiPoly variable(int nvars, int index);
    static MultiPoly monomial(int nvars, const Exponent& exps, Complex c = 1.0);

    int nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * x^exps, dropping the term if the coefficient cancels.
    void add_term(const Exponent& exps, Complex c);
    Complex coefficient(const Exponent& exps) const;

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(Complex c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, Complex c) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

    /// Largest absolute coefficient, 0 for the zero polynomial.
    double coefficient_scale() const;

private:
    int nvars_;
    TermMap terms_;
};

Complex eval_poly(const MultiPoly& p, const Eigen::Ref<const Point>& z);

/// Maximum multi-index sum, or kDegreeOfZero for the zero polynomial.
int total_degree(const MultiPoly& p);

///
/// s(z, y) = y^k + sum_{j<k} coeffs[j](z) y^j.
///
/// The coefficient polynomials live in the base variables z; `y` is the
/// distinguished variable. `pure_power()` is true when only coeffs[0] can be
/// nonzero, in which case the fiber over z is the set of k-th roots of
/// -coeffs[0](z).
///
class MonicInY {
public:
    MonicInY(int k, std::vector<MultiPoly> coeffs);

    int k() const noexcept { return k_; }
    int base_dim() const noexcept { return coeffs_.front().nvars(); }
    const std::vector<MultiPoly>& coeffs() const noexcept { return coeffs_; }
    bool pure_power() const noexcept { return pure_power_; }

    /// Total degree of s in (z, y).
    int degree() const;

    /// Coefficients a_0..a_k (a_k = 1) of y -> s(base, y).
    std::vector<Complex> univariate_at(const Eigen::Ref<const Point>& base) const;

    /// s evaluated at (base, y).
    Complex eval(const Eigen::Ref<const Point>& base, Complex y) const;

    /// Largest |coefficient| over all coefficient polynomials.
    double coefficient_scale() const;

private:
    int k_;
    std::vector<MultiPoly> coeffs_;
    bool pure_power_;
};

///
/// One hypersurface (a single equation) or a codimension-2 set given by a
/// tower of two equations. Equation i has coefficients in the base variables
/// together with the distinguished variables of the equations before it, so
/// its base dimension is `base_dim() + i`.
///
struct SurfaceSpec {
    std::string id;
    int ambient_dim = 0;
    std::vector<MonicInY> equations;
    bool real_flag = false;

    int base_dim() const { return ambient_dim - static_cast<int>(equations.size()); }
    int codim() const { return static_cast<int>(equations.size()); }

    /// Throws Error("surface") when the tower structure is inconsistent.
    void validate() const;

    /// Largest absolute equation residual at a point of C^ambient_dim.
    double residual(const Eigen::Ref<const Point>& point) const;

    double coefficient_scale() const;
};

/// All k complex k-th roots of c, sorted by argument in [0, 2pi).
std::vector<Complex> kth_roots(Complex c, int k);

struct RootSolverOptions {
    int max_iterations = 200;
    double step_tol    = 1e-13;
};

///
/// The k roots (with multiplicity) of y -> s(base, y), sorted by
/// (argument, modulus). Pure powers go through kth_roots; everything else
/// through Aberth-Ehrlich iteration. Throws Error("roots_diverged").
///
std::vector<Complex> fiber_roots(const MonicInY& eq, const Eigen::Ref<const Point>& base,
                                 const RootSolverOptions& opts = {});

/// Roots of the monic polynomial with coefficients a_0..a_k (a_k = 1).
std::vector<Complex> aberth_roots(const std::vector<Complex>& monic,
                                  const RootSolverOptions& opts = {});

/// Determinant of the Sylvester matrix of s(base, .) and ds/dy(base, .).
Complex sylvester_resultant_at(const MonicInY& eq, const Eigen::Ref<const Point>& base);

/// Sylvester determinant for two univariate polynomials given low-to-high.
Complex sylvester_resultant(const std::vector<Complex>& f, const std::vector<Complex>& g);

/// Default membership tolerance 1e-10 * (1 + max_j |coeff_j(base)|).
double default_discriminant_tol(const MonicInY& eq, const Eigen::Ref<const Point>& base);

bool in_discriminant_set(const MonicInY& eq, const Eigen::Ref<const Point>& base, double tol);

} // namespace polymesh

#endif // POLYMESH_POLYCORE_HPP
