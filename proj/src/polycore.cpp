#include "polymesh/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polymesh/error.hpp"

namespace polymesh {

namespace {

Complex ipow(Complex base, int e)
{
    Complex result = 1.0;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// Argument normalized to [0, 2pi); angles within 1e-12 of 2pi wrap to 0.
double unit_argument(Complex z)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::arg(z);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi - 1e-12) a = 0.0;
    return a;
}

void sort_by_argument(std::vector<Complex>& roots)
{
    std::stable_sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        const double aa = unit_argument(a);
        const double ab = unit_argument(b);
        if (aa != ab) return aa < ab;
        return std::abs(a) < std::abs(b);
    });
}

// p and p' by Horner, coefficients low to high.
void horner(const std::vector<Complex>& a, Complex z, Complex& p, Complex& dp)
{
    p  = a.back();
    dp = 0.0;
    for (int j = static_cast<int>(a.size()) - 2; j >= 0; --j) {
        dp = dp * z + p;
        p  = p * z + a[j];
    }
}

double backward_error_bound(const std::vector<Complex>& a, Complex z)
{
    double bound = 0.0;
    double zpow  = 1.0;
    for (const auto& c : a) {
        bound += std::abs(c) * zpow;
        zpow *= std::abs(z);
    }
    return bound;
}

} // namespace

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(int nvars) : nvars_(nvars)
{
    if (nvars < 0) throw Error("arity", "negative variable count");
}

MultiPoly MultiPoly::constant(int nvars, Complex c)
{
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index)
{
    if (index < 0 || index >= nvars) throw Error("arity", "variable index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, e);
}

MultiPoly MultiPoly::monomial(int nvars, const Exponent& exps, Complex c)
{
    MultiPoly p(nvars);
    p.add_term(exps, c);
    return p;
}

void MultiPoly::add_term(const Exponent& exps, Complex c)
{
    if (static_cast<int>(exps.size()) != nvars_) {
        throw Error("arity", "exponent length does not match variable count");
    }
    if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
        throw Error("arity", "negative exponent");
    }
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        if (c != Complex(0.0)) terms_.emplace(exps, c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
}

Complex MultiPoly::coefficient(const Exponent& exps) const
{
    auto it = terms_.find(exps);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other)
{
    if (other.nvars_ != nvars_) throw Error("arity", "adding polynomials in different variables");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other)
{
    if (other.nvars_ != nvars_) throw Error("arity", "subtracting polynomials in different variables");
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(Complex c)
{
    if (c == Complex(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coef] : terms_) coef *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    if (a.nvars_ != b.nvars_) throw Error("arity", "multiplying polynomials in different variables");
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

double MultiPoly::coefficient_scale() const
{
    double s = 0.0;
    for (const auto& [e, c] : terms_) s = std::max(s, std::abs(c));
    return s;
}

Complex eval_poly(const MultiPoly& p, const Eigen::Ref<const Point>& z)
{
    if (z.size() != p.nvars()) {
        std::ostringstream msg;
        msg << "point has " << z.size() << " coordinates, polynomial has " << p.nvars()
            << " variables";
        throw Error("arity", msg.str());
    }
    Complex sum = 0.0;
    for (const auto& [e, c] : p.terms()) {
        Complex term = c;
        for (int i = 0; i < p.nvars(); ++i) {
            if (e[i] != 0) term *= ipow(z[i], e[i]);
        }
        sum += term;
    }
    return sum;
}

int total_degree(const MultiPoly& p)
{
    if (p.is_zero()) return kDegreeOfZero;
    int deg = 0;
    for (const auto& [e, c] : p.terms()) {
        int s = 0;
        for (int v : e) s += v;
        deg = std::max(deg, s);
    }
    return deg;
}

// ----------------------------------------------------------------- MonicInY

MonicInY::MonicInY(int k, std::vector<MultiPoly> coeffs) : k_(k), coeffs_(std::move(coeffs))
{
    if (k_ < 1) throw Error("surface", "degree in the distinguished variable must be >= 1");
    if (static_cast<int>(coeffs_.size()) != k_) {
        throw Error("surface", "need exactly k coefficient polynomials");
    }
    const int nv = coeffs_.front().nvars();
    for (const auto& c : coeffs_) {
        if (c.nvars() != nv) throw Error("surface", "coefficient polynomials differ in arity");
    }
    pure_power_ = std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                              [](const MultiPoly& c) { return c.is_zero(); });
}

int MonicInY::degree() const
{
    int d = k_;
    for (int j = 0; j < k_; ++j) {
        const int dj = total_degree(coeffs_[j]);
        if (dj != kDegreeOfZero) d = std::max(d, dj + j);
    }
    return d;
}

std::vector<Complex> MonicInY::univariate_at(const Eigen::Ref<const Point>& base) const
{
    std::vector<Complex> a(k_ + 1);
    for (int j = 0; j < k_; ++j) a[j] = eval_poly(coeffs_[j], base);
    a[k_] = 1.0;
    return a;
}

Complex MonicInY::eval(const Eigen::Ref<const Point>& base, Complex y) const
{
    const auto a = univariate_at(base);
    Complex p = 0.0;
    for (int j = k_; j >= 0; --j) p = p * y + a[j];
    return p;
}

double MonicInY::coefficient_scale() const
{
    double s = 1.0;
    for (const auto& c : coeffs_) s = std::max(s, c.coefficient_scale());
    return s;
}

// -------------------------------------------------------------- SurfaceSpec

void SurfaceSpec::validate() const
{
    if (equations.empty() || equations.size() > 2) {
        throw Error("surface", "a surface needs one or two equations");
    }
    if (base_dim() < 1) throw Error("surface", "ambient dimension too small for the equations");
    for (int i = 0; i < codim(); ++i) {
        if (equations[i].base_dim() != base_dim() + i) {
            std::ostringstream msg;
            msg << "equation " << i << " has coefficients in " << equations[i].base_dim()
                << " variables, expected " << base_dim() + i;
            throw Error("surface", msg.str());
        }
    }
}

double SurfaceSpec::residual(const Eigen::Ref<const Point>& point) const
{
    if (point.size() != ambient_dim) throw Error("arity", "point dimension mismatch");
    double r = 0.0;
    for (int i = 0; i < codim(); ++i) {
        const int nb = base_dim() + i;
        r = std::max(r, std::abs(equations[i].eval(point.head(nb), point[nb])));
    }
    return r;
}

double SurfaceSpec::coefficient_scale() const
{
    double s = 1.0;
    for (const auto& eq : equations) s = std::max(s, eq.coefficient_scale());
    return s;
}

// -------------------------------------------------------------------- roots

std::vector<Complex> kth_roots(Complex c, int k)
{
    if (k < 1) throw Error("arity", "root order must be >= 1");
    if (c == Complex(0.0)) return std::vector<Complex>(k, Complex(0.0));
    const double r     = std::pow(std::abs(c), 1.0 / k);
    const double theta = unit_argument(c);
    std::vector<Complex> roots(k);
    for (int m = 0; m < k; ++m) {
        roots[m] = std::polar(r, (theta + 2.0 * std::numbers::pi * m) / k);
    }
    return roots;
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& a, const RootSolverOptions& opts)
{
    const int k = static_cast<int>(a.size()) - 1;
    if (k < 1) return {};
    if (k == 1) return {-a[0]};

    double radius = 0.0;
    for (int j = 0; j < k; ++j) radius = std::max(radius, std::abs(a[j]));
    radius += 1.0;

    std::vector<Complex> z(k);
    for (int i = 0; i < k; ++i) {
        z[i] = std::polar(radius, 2.0 * std::numbers::pi * i / k + 0.4 + 0.1 * i / k);
    }

    bool converged = false;
    for (int iter = 0; iter < opts.max_iterations && !converged; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < k; ++i) {
            Complex p, dp;
            horner(a, z[i], p, dp);
            if (p == Complex(0.0)) continue;
            Complex repulsion = 0.0;
            for (int j = 0; j < k; ++j) {
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex denom = dp - p * repulsion;
            const Complex step  = denom == Complex(0.0)
                                      ? std::polar(1e-3 * radius, 1.0 + i)
                                      : p / denom;
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        converged = worst <= opts.step_tol;
    }

    if (!converged) {
        // Clustered roots stall the step test; accept a tiny backward error.
        double worst_ratio = 0.0;
        for (const auto& r : z) {
            Complex p, dp;
            horner(a, r, p, dp);
            const double bound = backward_error_bound(a, r);
            worst_ratio = std::max(worst_ratio, bound > 0.0 ? std::abs(p) / bound : 0.0);
        }
        if (worst_ratio > 1e-12) {
            std::ostringstream msg;
            msg << "Aberth iteration did not converge in " << opts.max_iterations
                << " steps; worst relative residual " << worst_ratio;
            throw Error("roots_diverged", msg.str());
        }
    }
    return z;
}

std::vector<Complex> fiber_roots(const MonicInY& eq, const Eigen::Ref<const Point>& base,
                                 const RootSolverOptions& opts)
{
    if (base.size() != eq.base_dim()) {
        throw Error("arity", "base point dimension does not match the equation");
    }
    std::vector<Complex> roots;
    if (eq.pure_power()) {
        roots = kth_roots(-eval_poly(eq.coeffs()[0], base), eq.k());
    } else {
        roots = aberth_roots(eq.univariate_at(base), opts);
    }
    sort_by_argument(roots);
    return roots;
}

// --------------------------------------------------------------- resultants

Complex sylvester_resultant(const std::vector<Complex>& f, const std::vector<Complex>& g)
{
    const int m    = static_cast<int>(f.size()) - 1;
    const int n    = static_cast<int>(g.size()) - 1;
    const int size = m + n;
    if (size <= 0) return 1.0;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j <= m; ++j) S(r, r + j) = f[m - j];
    }
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j <= n; ++j) S(n + r, r + j) = g[n - j];
    }
    return S.partialPivLu().determinant();
}

Complex sylvester_resultant_at(const MonicInY& eq, const Eigen::Ref<const Point>& base)
{
    if (base.size() != eq.base_dim()) {
        throw Error("arity", "base point dimension does not match the equation");
    }
    const auto f = eq.univariate_at(base);
    std::vector<Complex> df(eq.k());
    for (int j = 1; j <= eq.k(); ++j) df[j - 1] = static_cast<double>(j) * f[j];
    return sylvester_resultant(f, df);
}

double default_discriminant_tol(const MonicInY& eq, const Eigen::Ref<const Point>& base)
{
    const auto f = eq.univariate_at(base);
    double scale = 0.0;
    for (int j = 0; j < eq.k(); ++j) scale = std::max(scale, std::abs(f[j]));
    return 1e-10 * (1.0 + scale);
}

bool in_discriminant_set(const MonicInY& eq, const Eigen::Ref<const Point>& base, double tol)
{
    if (tol < 0.0) throw Error("arity", "tolerance must be nonnegative");
    return std::abs(sylvester_resultant_at(eq, base)) <= tol;
}

} // namespace polymesh
