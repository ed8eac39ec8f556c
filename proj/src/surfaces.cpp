#include "polymesh/surfaces.hpp"

#include <algorithm>

#include "polymesh/error.hpp"

namespace polymesh {

namespace {

MultiPoly poly(int nvars, std::initializer_list<std::pair<Exponent, double>> terms)
{
    MultiPoly p(nvars);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

SurfaceSpec sphere()
{
    // z^2 + (x^2 + y^2 - 1)
    MonicInY eq(2, {poly(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}}), MultiPoly(2)});
    return {"sphere", 3, {eq}, true};
}

SurfaceSpec cubic_surface()
{
    // z^2 - x^3 - y^2
    MonicInY eq(2, {poly(2, {{{3, 0}, -1.0}, {{0, 2}, -1.0}}), MultiPoly(2)});
    return {"cubic_surface", 3, {eq}, true};
}

SurfaceSpec cubic_curve()
{
    // y^3 - x^2 + 1
    MonicInY eq(3, {poly(1, {{{2}, -1.0}, {{0}, 1.0}}), MultiPoly(1), MultiPoly(1)});
    return {"cubic_curve", 2, {eq}, false};
}

SurfaceSpec viviani()
{
    // y^2 + x^2 - 2x, then z^2 + x^2 + y^2 - 4
    MonicInY s1(2, {poly(1, {{{2}, 1.0}, {{1}, -2.0}}), MultiPoly(1)});
    MonicInY s2(2, {poly(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -4.0}}), MultiPoly(2)});
    return {"viviani", 3, {s1, s2}, true};
}

} // namespace

const std::vector<std::string>& builtin_ids()
{
    static const std::vector<std::string> ids{"sphere", "cubic_surface", "cubic_curve", "viviani"};
    return ids;
}

bool is_builtin(const std::string& id)
{
    const auto& ids = builtin_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ExampleSetup builtin_example(const std::string& id)
{
    if (id == "sphere") {
        return {sphere(), RealDisk{{0.0, 0.0}, 1.0}, {2, 1, 0}, Construction::hyper_specific,
                TestFunction::f4};
    }
    if (id == "cubic_surface") {
        return {cubic_surface(), RealDisk{{1.0, 0.0}, 1.0}, {4, 3, 0},
                Construction::hyper_specific, TestFunction::f4};
    }
    if (id == "cubic_curve") {
        return {cubic_curve(), ComplexDisk{0.0, 1.0}, {4, 3, 0}, Construction::hyper_specific,
                TestFunction::f4};
    }
    if (id == "viviani") {
        return {viviani(), Segment{0.0, 2.0}, {5, 4, 0}, Construction::codim2_specific,
                TestFunction::f4_viviani};
    }
    throw Error("usage", "unknown builtin surface '" + id + "'");
}

Construction default_construction(const SurfaceSpec& surface)
{
    const bool pure = std::all_of(surface.equations.begin(), surface.equations.end(),
                                  [](const MonicInY& eq) { return eq.pure_power(); });
    if (surface.codim() == 1) return pure ? Construction::hyper_specific : Construction::hyper_general;
    return pure ? Construction::codim2_specific : Construction::codim2_general;
}

int lambda_for(const LambdaRule& rule, int ell)
{
    return std::max(rule(ell), ell + 1);
}

NormedMesh build_mesh(const ExampleSetup& setup, int n, const MeshParams& params)
{
    const int ell   = ell_for(setup.surface, setup.construction, n) + params.ell_offset;
    if (ell < 0) throw Error("usage", "ell offset makes the base index negative");
    const int lambda = params.lambda.value_or(lambda_for(setup.rule, ell));
    const BaseMesh base = make_base_mesh(setup.domain, lambda, ell);
    LiftOptions opts;
    opts.allow_coarse_base = params.ell_offset < 0;
    return lift_mesh(setup.surface, base, n, setup.construction, opts);
}

NormedMesh build_mesh_at_index(const ExampleSetup& setup, int n, int index)
{
    const BaseMesh base = make_base_mesh(setup.domain, lambda_for(setup.rule, index), index);
    return lift_mesh(setup.surface, base, n, setup.construction);
}

std::vector<Exponent> restricted_monomials(const SurfaceSpec& surface, int n)
{
    const int N = surface.base_dim();
    std::vector<Exponent> out;
    for (auto& e : total_degree_indices(surface.ambient_dim, n)) {
        bool keep = true;
        for (int i = 0; i < surface.codim(); ++i) keep = keep && e[N + i] < surface.equations[i].k();
        if (keep) out.push_back(std::move(e));
    }
    return out;
}

Eigen::MatrixXcd monomial_matrix(const std::vector<Exponent>& exps, const PointSet& points)
{
    const Eigen::Index D = points.cols();
    Eigen::MatrixXcd M(points.rows(), static_cast<Eigen::Index>(exps.size()));
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (std::size_t c = 0; c < exps.size(); ++c) {
            if (static_cast<Eigen::Index>(exps[c].size()) != D) throw Error("arity", "exponent size");
            Complex v(1.0);
            for (Eigen::Index d = 0; d < D; ++d) {
                for (int p = 0; p < exps[c][d]; ++p) v *= points(i, d);
            }
            M(i, static_cast<Eigen::Index>(c)) = v;
        }
    }
    return M;
}

Eigen::MatrixXcd random_coefficients(Eigen::Index terms, int trials, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXcd C(terms, trials);
    for (Eigen::Index j = 0; j < trials; ++j) {
        for (Eigen::Index i = 0; i < terms; ++i) {
            const double re = unit(rng);
            const double im = unit(rng);
            C(i, j) = Complex(re, im);
        }
    }
    return C;
}

NormingReport check_norming(const NormedMesh& mesh, const PointSet& control, int trials,
                            std::mt19937_64& rng, double slack)
{
    if (trials < 1) throw Error("usage", "trials must be positive");
    const auto exps = restricted_monomials(mesh.surface, mesh.n);
    const Eigen::MatrixXcd C = random_coefficients(static_cast<Eigen::Index>(exps.size()), trials, rng);
    const Eigen::MatrixXcd on_mesh    = monomial_matrix(exps, mesh.points) * C;
    const Eigen::MatrixXcd on_control = monomial_matrix(exps, control) * C;

    NormingReport report;
    report.n            = mesh.n;
    report.trials       = trials;
    report.constant     = mesh.constant;
    report.mesh_card    = mesh.card();
    report.control_card = control.rows();
    for (int t = 0; t < trials; ++t) {
        const double num = on_control.col(t).cwiseAbs().maxCoeff();
        const double den = on_mesh.col(t).cwiseAbs().maxCoeff();
        const double ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (mesh.constant && !(ratio <= *mesh.constant * (1.0 + slack))) ++report.violations;
    }
    return report;
}

} // namespace polymesh
