#include "polymesh/lift.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polymesh/error.hpp"

namespace polymesh {

namespace {

void check_params(int d, int k, int n)
{
    if (k < 1) throw Error("not_monic_normalized", "k must be >= 1");
    if (d < k) {
        std::ostringstream msg;
        msg << "total degree d = " << d << " is below k = " << k;
        throw Error("not_monic_normalized", msg.str());
    }
    if (n < 0) throw Error("arity", "degree must be nonnegative");
}

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

bool nearly_repeated(const std::vector<Complex>& roots)
{
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[i] - roots[j]) <= 1e-6 * (1.0 + std::abs(roots[i]))) return true;
        }
    }
    return false;
}

void require_pure_powers(const SurfaceSpec& surface)
{
    for (const auto& eq : surface.equations) {
        if (!eq.pure_power()) {
            throw Error("not_pure_power",
                        "the certified constructions need equations of the form y^k = c");
        }
    }
}

void require_codim(const SurfaceSpec& surface, Construction c)
{
    const int want = (c == Construction::hyper_specific || c == Construction::hyper_general) ? 1 : 2;
    if (surface.codim() != want) {
        throw Error("construction_mismatch",
                    to_string(c) + " needs " + std::to_string(want) + " equation(s)");
    }
}

} // namespace

std::string to_string(Construction c)
{
    switch (c) {
    case Construction::hyper_specific: return "hyper_specific";
    case Construction::hyper_general: return "hyper_general";
    case Construction::codim2_specific: return "codim2_specific";
    case Construction::codim2_general: return "codim2_general";
    }
    return "unknown";
}

Construction construction_from_string(const std::string& name)
{
    if (name == "hyper_specific") return Construction::hyper_specific;
    if (name == "hyper_general") return Construction::hyper_general;
    if (name == "codim2_specific") return Construction::codim2_specific;
    if (name == "codim2_general") return Construction::codim2_general;
    throw Error("usage", "unknown construction '" + name + "'");
}

bool is_specific(Construction c)
{
    return c == Construction::hyper_specific || c == Construction::codim2_specific;
}

// ---------------------------------------------------------------- index maps

int ell_hyper_specific(int d, int k, int n)
{
    check_params(d, k, n);
    const int by_ratio  = ceil_div(static_cast<long long>(d) * d * n, k);
    const int by_offset = d * n + (k - 1) * (d - k);
    return std::min(by_ratio, by_offset);
}

int ell_hyper_general(int d, int k, int n)
{
    check_params(d, k, n);
    return d == k ? 2 * (n + k * k - k) : 2 * d * n;
}

int ell_codim2_specific(int d1, int k1, int d2, int k2, int n)
{
    check_params(d1, k1, n);
    check_params(d2, k2, n);
    const int t = ell_hyper_specific(d2, k2, n);
    return ell_hyper_specific(d1, k1, t);
}

int ell_codim2_headline(int d1, int k1, int d2, int k2, int n)
{
    check_params(d1, k1, n);
    check_params(d2, k2, n);
    return d1 * d2 * n + d1 * d2 * k2 + d1 * k1;
}

int ell_codim2_general(int d1, int k1, int d2, int k2, int n)
{
    check_params(d1, k1, n);
    check_params(d2, k2, n);
    const bool eq1 = d1 == k1;
    const bool eq2 = d2 == k2;
    if (eq1 && eq2) return 4 * n + 4 * (k2 * k2 - k2) + 2 * (k1 * k1 - k1);
    if (!eq1 && eq2) return 4 * d1 * n + 4 * d1 * (k2 * k2 - k2);
    if (eq1 && !eq2) return 4 * d2 * n + 2 * (k1 * k1 - k1);
    return 4 * d1 * d2 * n;
}

int ell_for(const SurfaceSpec& surface, Construction construction, int n)
{
    require_codim(surface, construction);
    const auto& e0 = surface.equations[0];
    switch (construction) {
    case Construction::hyper_specific:
        require_pure_powers(surface);
        return ell_hyper_specific(e0.degree(), e0.k(), n);
    case Construction::hyper_general: return ell_hyper_general(e0.degree(), e0.k(), n);
    case Construction::codim2_specific: {
        require_pure_powers(surface);
        const auto& e1 = surface.equations[1];
        return ell_codim2_specific(e0.degree(), e0.k(), e1.degree(), e1.k(), n);
    }
    case Construction::codim2_general: {
        const auto& e1 = surface.equations[1];
        return ell_codim2_general(e0.degree(), e0.k(), e1.degree(), e1.k(), n);
    }
    }
    return 0;
}

// ---------------------------------------------------------------- dimensions

long long binomial(int top, int bottom)
{
    if (bottom < 0 || top < 0 || top < bottom) return 0;
    bottom = std::min(bottom, top - bottom);
    long long r = 1;
    for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
    return r;
}

long long dim_Pn_hypersurface(int N, int k, int n)
{
    if (n < 0) return 0;
    const long long full = binomial(N + 1 + n, N + 1);
    if (n < k) return full;
    return full - binomial(N + 1 + n - k, N + 1);
}

long long dim_Pn_codim2(int N, int k, int kbar, int n)
{
    long long sum = 0;
    for (int m = std::max(0, n - kbar + 1); m <= n; ++m) sum += dim_Pn_hypersurface(N, k, m);
    return sum;
}

std::optional<long long> surface_dimension(const SurfaceSpec& surface, int n)
{
    const int N = surface.base_dim();
    if (surface.codim() == 1) return dim_Pn_hypersurface(N, surface.equations[0].degree(), n);
    if (surface.codim() == 2) {
        return dim_Pn_codim2(N, surface.equations[0].degree(), surface.equations[1].degree(), n);
    }
    return std::nullopt;
}

// ------------------------------------------------------------------- lifting

PointSet lift_fibers(const SurfaceSpec& surface, const PointSet& base_points,
                     const RootSolverOptions& roots, bool* complex_fibers, bool* degenerate_fiber)
{
    surface.validate();
    const int nb = surface.base_dim();
    if (base_points.cols() != nb) throw Error("arity", "base points do not match the surface");

    int fiber = 1;
    for (const auto& eq : surface.equations) fiber *= eq.k();

    PointSet out(base_points.rows() * fiber, surface.ambient_dim);
    bool any_complex = false;
    bool any_degenerate = false;
    Eigen::Index row = 0;

    auto snap = [&](Complex y) {
        if (!surface.real_flag) return y;
        if (std::abs(y.imag()) <= 1e-9) return Complex(y.real(), 0.0);
        any_complex = true;
        return y;
    };

    Point current(surface.ambient_dim);
    for (Eigen::Index b = 0; b < base_points.rows(); ++b) {
        current.head(nb) = base_points.row(b).transpose();
        const auto y1 = fiber_roots(surface.equations[0], current.head(nb), roots);
        any_degenerate = any_degenerate || nearly_repeated(y1);
        for (const auto& r1 : y1) {
            current[nb] = snap(r1);
            if (surface.codim() == 1) {
                out.row(row++) = current.transpose();
                continue;
            }
            const auto y2 = fiber_roots(surface.equations[1], current.head(nb + 1), roots);
            any_degenerate = any_degenerate || nearly_repeated(y2);
            for (const auto& r2 : y2) {
                current[nb + 1] = snap(r2);
                out.row(row++) = current.transpose();
            }
        }
    }
    if (complex_fibers) *complex_fibers = any_complex;
    if (degenerate_fiber) *degenerate_fiber = any_degenerate;
    return out;
}

Point find_point_outside_discriminant(const MonicInY& eq, const std::vector<Point>& candidates,
                                      double tol)
{
    if (candidates.empty()) throw Error("discriminant_everywhere", "no candidate points");
    for (const auto& z : candidates) {
        const auto f = eq.univariate_at(z);
        double scale = 0.0;
        for (int j = 0; j < eq.k(); ++j) scale = std::max(scale, std::abs(f[j]));
        if (std::abs(sylvester_resultant_at(eq, z)) > tol * (1.0 + scale)) return z;
    }
    throw Error("discriminant_everywhere",
                "every candidate lies numerically in the discriminant set");
}

double lifted_constant(const SurfaceSpec& surface, Construction construction, double base_constant)
{
    require_codim(surface, construction);
    if (construction == Construction::hyper_specific) {
        const double k = surface.equations[0].k();
        return k * std::pow(base_constant, 1.0 / k);
    }
    if (construction == Construction::codim2_specific) {
        const double k1 = surface.equations[0].k();
        const double k2 = surface.equations[1].k();
        return k2 * std::pow(k1, 1.0 / k2) * std::pow(base_constant, 1.0 / (k1 * k2));
    }
    throw Error("uncertified", "general constructions have no computable constant");
}

NormedMesh lift_mesh(const SurfaceSpec& surface, const BaseMesh& base, int n,
                     Construction construction, const LiftOptions& options)
{
    surface.validate();
    if (domain_dim(base.domain) != surface.base_dim()) {
        throw Error("arity", "base domain dimension does not match the surface");
    }
    NormedMesh mesh;
    mesh.surface      = surface;
    mesh.n            = n;
    mesh.ell          = ell_for(surface, construction, n);
    mesh.base         = base;
    mesh.construction = construction;

    if (base.n < mesh.ell && !options.allow_coarse_base) {
        std::ostringstream msg;
        msg << "base mesh certifies degree " << base.n << " but l(" << n << ") = " << mesh.ell;
        throw Error("base_too_coarse", msg.str());
    }

    std::vector<Point> candidates;
    if (!is_specific(construction) && options.extra_points.empty()) {
        candidates.reserve(base.points.rows());
        for (Eigen::Index i = 0; i < base.points.rows(); ++i) {
            candidates.emplace_back(base.points.row(i).transpose());
        }
    }

    if (construction == Construction::hyper_general) {
        mesh.extra_base_points.push_back(
            options.extra_points.empty()
                ? find_point_outside_discriminant(surface.equations[0], candidates,
                                                  options.discriminant_tol)
                : options.extra_points.front());
    } else if (construction == Construction::codim2_general) {
        if (options.extra_points.size() >= 2) {
            mesh.extra_base_points = {options.extra_points[0], options.extra_points[1]};
        } else {
            mesh.extra_base_points.push_back(find_point_outside_discriminant(
                surface.equations[0], candidates, options.discriminant_tol));
            // b: a base point over which some point of the first-level fiber
            // avoids the discriminant of the second equation.
            const int nb = surface.base_dim();
            std::optional<Point> b;
            for (const auto& z : candidates) {
                Point zy(nb + 1);
                zy.head(nb) = z;
                for (const auto& y1 : fiber_roots(surface.equations[0], z, options.roots)) {
                    zy[nb] = y1;
                    const auto f = surface.equations[1].univariate_at(zy);
                    double scale = 0.0;
                    for (int j = 0; j < surface.equations[1].k(); ++j) {
                        scale = std::max(scale, std::abs(f[j]));
                    }
                    if (std::abs(sylvester_resultant_at(surface.equations[1], zy)) >
                        options.discriminant_tol * (1.0 + scale)) {
                        b = z;
                        break;
                    }
                }
                if (b) break;
            }
            if (!b) {
                throw Error("discriminant_everywhere",
                            "no base point lifts outside the second discriminant set");
            }
            mesh.extra_base_points.push_back(*b);
        }
    }

    PointSet base_points = base.points;
    if (!mesh.extra_base_points.empty()) {
        const Eigen::Index m = base_points.rows();
        base_points.conservativeResize(m + static_cast<Eigen::Index>(mesh.extra_base_points.size()),
                                       Eigen::NoChange);
        for (std::size_t i = 0; i < mesh.extra_base_points.size(); ++i) {
            base_points.row(m + static_cast<Eigen::Index>(i)) =
                mesh.extra_base_points[i].transpose();
        }
    }
    mesh.points = lift_fibers(surface, base_points, options.roots, &mesh.has_complex_fibers,
                              &mesh.has_degenerate_fiber);

    if (is_specific(construction)) {
        mesh.constant = lifted_constant(surface, construction, base.constant);
    }
    return mesh;
}

BaseKind base_kind(const BaseDomain& domain)
{
    if (std::holds_alternative<Segment>(domain)) return BaseKind::segment;
    if (std::holds_alternative<ComplexDisk>(domain)) return BaseKind::cdisk;
    return BaseKind::rdisk;
}

double mesh_constant_bound(const SurfaceSpec& surface, Construction construction, BaseKind kind,
                           const LambdaRule& rule)
{
    if (!is_specific(construction)) {
        throw Error("uncertified", "general constructions have no computable constant");
    }
    if (rule.num <= rule.den || rule.offset < 0) {
        throw Error("not_optimal", "l/lambda is not bounded by a constant below 1");
    }
    const double ratio = static_cast<double>(rule.den) / rule.num;
    const double c     = std::cos(ratio * std::numbers::pi / 2.0);
    const double base  = kind == BaseKind::rdisk ? 1.0 / (c * c) : 1.0 / c;
    return lifted_constant(surface, construction, base);
}

} // namespace polymesh
