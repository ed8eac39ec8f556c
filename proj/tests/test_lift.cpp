#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polymesh/error.hpp"
#include "polymesh/lift.hpp"
#include "polymesh/surfaces.hpp"

using namespace polymesh;

namespace {

constexpr double pi = std::numbers::pi;

Point pt(std::initializer_list<Complex> v)
{
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto c : v) p[i++] = c;
    return p;
}

void check_residuals(const NormedMesh& mesh)
{
    const double tol = 1e-9 * (1.0 + mesh.surface.coefficient_scale());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < mesh.card(); ++i) {
        worst = std::max(worst, mesh.surface.residual(mesh.points.row(i).transpose()));
    }
    CHECK(worst <= tol);
}

} // namespace

TEST_SUITE("lift") {

TEST_CASE("index map for pure hypersurfaces")
{
    CHECK(ell_hyper_specific(3, 2, 2) == 7);
    CHECK(ell_hyper_specific(2, 2, 5) == 10);
    CHECK(ell_hyper_specific(3, 3, 4) == 12);
    for (int n = 1; n <= 20; ++n) CHECK(ell_hyper_specific(3, 2, n) == 3 * n + 1);
    CHECK_THROWS_WITH_AS(ell_hyper_specific(1, 2, 3), doctest::Contains("not_monic_normalized"), Error);
}

TEST_CASE("index map for general hypersurfaces")
{
    CHECK(ell_hyper_general(2, 2, 3) == 10);
    CHECK(ell_hyper_general(3, 2, 3) == 18);
    for (int n = 1; n <= 10; ++n) CHECK(ell_hyper_general(1, 1, n) == 2 * n);
    CHECK_THROWS_AS(ell_hyper_general(2, 3, 1), Error);
}

TEST_CASE("index maps for codimension two")
{
    CHECK(ell_codim2_specific(2, 2, 2, 2, 4) == 16);
    for (int n = 1; n <= 20; ++n) CHECK(ell_codim2_specific(2, 2, 3, 2, n) == 6 * n + 2);
    for (int n = 1; n <= 20; ++n) CHECK(ell_codim2_specific(2, 2, 2, 2, n) == 4 * n);

    CHECK(ell_codim2_general(2, 2, 2, 2, 1) == 16);
    CHECK(ell_codim2_general(3, 2, 2, 2, 1) == 36);
    CHECK(ell_codim2_general(3, 2, 3, 2, 1) == 36);
    CHECK(ell_codim2_general(2, 2, 3, 2, 1) == 4 * 3 + 2 * 2);
}

TEST_CASE("headline bound dominates the nested index")
{
    for (int d1 = 1; d1 <= 4; ++d1)
        for (int k1 = 1; k1 <= d1; ++k1)
            for (int d2 = 1; d2 <= 4; ++d2)
                for (int k2 = 1; k2 <= d2; ++k2)
                    for (int n = 1; n <= 20; ++n) {
                        const int nested = ell_codim2_specific(d1, k1, d2, k2, n);
                        CHECK(ell_codim2_headline(d1, k1, d2, k2, n) >= nested);
                        if (d1 == k1 && d2 == k2) CHECK(nested == k1 * k2 * n);
                    }
}

TEST_CASE("index maps are nondecreasing")
{
    for (int d = 1; d <= 5; ++d)
        for (int k = 1; k <= d; ++k)
            for (int n = 1; n < 30; ++n) {
                CHECK(ell_hyper_specific(d, k, n) <= ell_hyper_specific(d, k, n + 1));
                CHECK(ell_hyper_general(d, k, n) <= ell_hyper_general(d, k, n + 1));
                CHECK(ell_codim2_specific(d, k, 2, 2, n) <= ell_codim2_specific(d, k, 2, 2, n + 1));
                CHECK(ell_codim2_general(d, k, 3, 2, n) <= ell_codim2_general(d, k, 3, 2, n + 1));
            }
}

TEST_CASE("hypersurface dimension formula")
{
    CHECK(dim_Pn_hypersurface(2, 2, 16) == 289);
    CHECK(binomial(19, 3) - binomial(17, 3) == 289);
    CHECK(dim_Pn_hypersurface(2, 2, 1) == 4);
    CHECK(dim_Pn_hypersurface(2, 2, 3) == 16);
    for (int N = 1; N <= 3; ++N)
        for (int k = 1; k <= 4; ++k)
            for (int n = 0; n <= 12; ++n) {
                CHECK(dim_Pn_hypersurface(N, k, n) == oracle::count_hypersurface(N, k, n));
            }
}

TEST_CASE("codimension-two dimension formula")
{
    CHECK(dim_Pn_codim2(1, 2, 2, 0) == 1);
    CHECK(dim_Pn_codim2(1, 2, 2, 5) == oracle::count_codim2(1, 2, 2, 5));
    for (int N = 1; N <= 3; ++N)
        for (int k = 1; k <= 4; ++k)
            for (int kb = 1; kb <= 4; ++kb)
                for (int n = 0; n <= 12; ++n) {
                    const long long count = oracle::count_codim2(N, k, kb, n);
                    CHECK(dim_Pn_codim2(N, k, kb, n) == count);
                    if (n <= std::min(k, kb) - 1) CHECK(count == binomial(N + 2 + n, N + 2));
                    if (n >= k + kb - 1) {
                        const int M = N + 2;
                        CHECK(count == binomial(M + n, M) - binomial(M + n - k, M) -
                                           binomial(M + n - kb, M) + binomial(M + n - k - kb, M));
                        if (k == kb) {
                            CHECK(count == binomial(M + n, M) - 2 * binomial(M + n - k, M) +
                                               binomial(M + n - k - kb, M));
                        }
                    }
                }
}

TEST_CASE("surface dimensions use total degrees")
{
    const auto cubic = builtin_example("cubic_surface").surface;
    CHECK(surface_dimension(cubic, 16).value() == binomial(19, 3) - binomial(16, 3));
    CHECK(surface_dimension(builtin_example("sphere").surface, 7).value() == 64);
    for (int n = 1; n <= 12; ++n) CHECK(surface_dimension(builtin_example("viviani").surface, n).value() == 4 * n);
    for (int n = 0; n <= 12; ++n) CHECK(surface_dimension(cubic, n).value() >= (n == 0 ? 1 : 0));
}

TEST_CASE("sphere meshes")
{
    const auto setup = builtin_example("sphere");
    for (int n = 1; n <= 6; ++n) {
        const auto mesh = build_mesh(setup, n);
        CHECK(mesh.ell == 2 * n);
        CHECK(mesh.base.lambda == 4 * n);
        CHECK(mesh.card() == 32 * n * n);
        CHECK(*mesh.constant == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
        CHECK_FALSE(mesh.has_complex_fibers);
        check_residuals(mesh);
    }
}

TEST_CASE("cubic surface meshes")
{
    const auto setup = builtin_example("cubic_surface");
    for (int n = 1; n <= 5; ++n) {
        const auto mesh = build_mesh(setup, n);
        CHECK(mesh.ell == 3 * n + 1);
        CHECK(mesh.base.lambda == 4 * n + 2);
        CHECK(mesh.card() == 2 * (4 * n + 2) * (4 * n + 2));
        CHECK(*mesh.constant == doctest::Approx(2.0 / std::cos((3 * n + 1) * pi / (8 * n + 4))));
        check_residuals(mesh);
    }
    CHECK(build_mesh(setup, 2).card() == 200);
    CHECK(rdisk_mesh({1.0, 0.0}, 1.0, 10, 7).card() == 100);
}

TEST_CASE("cubic curve and Viviani meshes")
{
    const auto curve = builtin_example("cubic_curve");
    for (int n = 1; n <= 6; ++n) {
        const auto mesh = build_mesh(curve, n);
        CHECK(mesh.card() == 24 * n);
        check_residuals(mesh);
    }
    const auto viv = builtin_example("viviani");
    for (int n = 1; n <= 6; ++n) {
        const auto mesh = build_mesh(viv, n);
        CHECK(mesh.card() == 20 * n);
        CHECK(*mesh.constant == doctest::Approx(2 * std::sqrt(2.0) / std::pow(std::cos(2 * pi / 5), 0.25)));
        check_residuals(mesh);
    }
    const auto m4 = build_mesh(viv, 4);
    CHECK(m4.base.lambda == 20);
    CHECK(m4.card() == 80);
    CHECK(*m4.constant <= 3.8);
    MeshParams p17;
    p17.lambda = 17;
    const auto m17 = build_mesh(viv, 4, p17);
    CHECK(m17.card() == 68);
    CHECK(*m17.constant == doctest::Approx(2 * std::sqrt(2.0) / std::pow(std::cos(16 * pi / 34), 0.25)));
}

TEST_CASE("under-resolved bases are refused")
{
    const auto setup = builtin_example("sphere");
    const auto base = rdisk_mesh({0.0, 0.0}, 1.0, 8, 3);
    CHECK_THROWS_WITH_AS(lift_mesh(setup.surface, base, 2, Construction::hyper_specific),
                         doctest::Contains("base_too_coarse"), Error);
    LiftOptions opts;
    opts.allow_coarse_base = true;
    CHECK(lift_mesh(setup.surface, base, 2, Construction::hyper_specific, opts).card() == 128);
}

TEST_CASE("general constructions add the extra fibers")
{
    // y^2 + x y - 1 over [-1, 1]
    MonicInY eq(2, {MultiPoly::constant(1, -1.0), MultiPoly::variable(1, 0)});
    const SurfaceSpec surface{"mixed", 2, {eq}, true};
    CHECK(default_construction(surface) == Construction::hyper_general);
    CHECK_THROWS_AS(ell_for(surface, Construction::hyper_specific, 2), Error);
    const int n = 2;
    const int ell = ell_for(surface, Construction::hyper_general, n);
    CHECK(ell == 2 * 2 * n);
    const auto base = segment_mesh(-1.0, 1.0, ell + 2, ell);
    const auto mesh = lift_mesh(surface, base, n, Construction::hyper_general);
    CHECK(mesh.card() == 2 * base.card() + 2);
    CHECK_FALSE(mesh.constant.has_value());
    REQUIRE(mesh.extra_base_points.size() == 1);
    check_residuals(mesh);

    const auto viv = builtin_example("viviani");
    const auto base2 = segment_mesh(0.0, 2.0, 20, ell_for(viv.surface, Construction::codim2_general, 1));
    const auto m2 = lift_mesh(viv.surface, base2, 1, Construction::codim2_general);
    CHECK(m2.card() == 4 * base2.card() + 8);
    CHECK(m2.extra_base_points.size() == 2);
    CHECK_FALSE(m2.constant.has_value());
}

TEST_CASE("points outside the discriminant set")
{
    MonicInY s(2, {MultiPoly::monomial(1, {1}, -1.0), MultiPoly(1)});
    const auto z = find_point_outside_discriminant(s, {pt({0.0}), pt({1.0})});
    CHECK(std::abs(z[0] - 1.0) < 1e-15);
    CHECK_THROWS_WITH_AS(find_point_outside_discriminant(s, {pt({0.0})}),
                         doctest::Contains("discriminant_everywhere"), Error);
    const auto viv = builtin_example("viviani").surface;
    const auto a = find_point_outside_discriminant(viv.equations[0], {pt({1.0})});
    CHECK(std::abs(a[0] - 1.0) < 1e-15);
    CHECK(std::abs(sylvester_resultant_at(viv.equations[0], pt({1.0})) - Complex(-4.0)) < 1e-12);
}

TEST_CASE("n-independent constant bounds")
{
    const auto cubic = builtin_example("cubic_surface");
    CHECK(mesh_constant_bound(cubic.surface, cubic.construction, BaseKind::rdisk, cubic.rule) ==
          doctest::Approx(2.0 / std::cos(3 * pi / 8)));
    CHECK(2.0 / std::cos(3 * pi / 8) == doctest::Approx(5.2263).epsilon(1e-4));

    const auto curve = builtin_example("cubic_curve");
    CHECK(mesh_constant_bound(curve.surface, curve.construction, BaseKind::cdisk, curve.rule) ==
          doctest::Approx(3.0 / std::cbrt(std::cos(3 * pi / 8))));

    const auto sphere = builtin_example("sphere");
    CHECK(mesh_constant_bound(sphere.surface, sphere.construction, BaseKind::rdisk, sphere.rule) ==
          doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));

    const auto viv = builtin_example("viviani");
    CHECK(mesh_constant_bound(viv.surface, viv.construction, BaseKind::segment, viv.rule) ==
          doctest::Approx(2 * std::sqrt(2.0) / std::pow(std::cos(2 * pi / 5), 0.25)));

    CHECK_THROWS_WITH_AS(mesh_constant_bound(sphere.surface, sphere.construction, BaseKind::rdisk,
                                             LambdaRule{1, 1, 1}),
                         doctest::Contains("not_optimal"), Error);
    CHECK_THROWS_WITH_AS(mesh_constant_bound(sphere.surface, Construction::hyper_general,
                                             BaseKind::rdisk, sphere.rule),
                         doctest::Contains("uncertified"), Error);
}

TEST_CASE("the bound dominates every mesh constant")
{
    for (const auto& id : builtin_ids()) {
        const auto setup = builtin_example(id);
        const double bound = mesh_constant_bound(setup.surface, setup.construction,
                                                 base_kind(setup.domain), setup.rule);
        for (int n = 1; n <= 20; ++n) CHECK(*build_mesh(setup, n).constant <= bound * (1 + 1e-12));
    }
}

TEST_CASE("lifted meshes are norming at low degree")
{
    std::mt19937_64 rng(31);
    for (const auto& id : builtin_ids()) {
        const auto setup = builtin_example(id);
        for (int n = 0; n <= 3; ++n) {
            const auto mesh = build_mesh(setup, n);
            const int ell = ell_for(setup.surface, setup.construction, n);
            const auto control = build_mesh_at_index(setup, n, 3 * std::max(ell, 1));
            const auto report = check_norming(mesh, control.points, 200, rng);
            CHECK(report.pass());
            if (n == 0) CHECK(report.max_ratio == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("complex fibers on real surfaces are flagged")
{
    // z^2 = x over [-1, 1]: negative x gives imaginary fibers
    MonicInY eq(2, {MultiPoly::monomial(1, {1}, -1.0), MultiPoly(1)});
    const SurfaceSpec surface{"parabola", 2, {eq}, true};
    const auto base = segment_mesh(-1.0, 1.0, 5, 4);
    bool complex_fibers = false, degenerate = false;
    const auto pts = lift_fibers(surface, base.points, {}, &complex_fibers, &degenerate);
    CHECK(pts.rows() == 10);
    CHECK(complex_fibers);
    CHECK(degenerate);  // x = 0 is a Chebyshev point for odd lambda
}

}
