#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polymesh/basemesh.hpp"
#include "polymesh/error.hpp"

using namespace polymesh;

namespace {

constexpr double pi = std::numbers::pi;

/// Random polynomial of total degree n in `dim` variables, monomial basis,
/// coefficients uniform in [-1, 1].
struct RandomPoly {
    std::vector<std::vector<int>> exps;
    std::vector<double> coeffs;

    double operator()(const std::vector<Complex>& x) const
    {
        Complex v = 0.0;
        for (std::size_t t = 0; t < exps.size(); ++t) {
            Complex m = coeffs[t];
            for (std::size_t d = 0; d < x.size(); ++d) m *= std::pow(x[d], exps[t][d]);
            v += m;
        }
        return std::abs(v);
    }
};

RandomPoly random_poly(int dim, int n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RandomPoly p;
    for (int a = 0; a <= n; ++a) {
        if (dim == 1) {
            p.exps.push_back({a});
            p.coeffs.push_back(u(rng));
            continue;
        }
        for (int b = 0; a + b <= n; ++b) {
            p.exps.push_back({a, b});
            p.coeffs.push_back(u(rng));
        }
    }
    return p;
}

double mesh_max(const RandomPoly& p, const BaseMesh& mesh)
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < mesh.points.rows(); ++i) {
        std::vector<Complex> x(mesh.points.cols());
        for (Eigen::Index d = 0; d < mesh.points.cols(); ++d) x[d] = mesh.points(i, d);
        m = std::max(m, p(x));
    }
    return m;
}

} // namespace

TEST_SUITE("basemesh") {

TEST_CASE("segment mesh examples")
{
    const auto m = segment_mesh(-1.0, 1.0, 3, 2);
    REQUIRE(m.card() == 3);
    std::vector<double> xs{m.points(0, 0).real(), m.points(1, 0).real(), m.points(2, 0).real()};
    std::sort(xs.begin(), xs.end());
    CHECK(std::abs(xs[0] + std::sqrt(3.0) / 2) < 1e-15);
    CHECK(std::abs(xs[1]) < 1e-15);
    CHECK(std::abs(xs[2] - std::sqrt(3.0) / 2) < 1e-15);
    CHECK(m.points.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.constant == doctest::Approx(2.0).epsilon(1e-14));

    const auto mid = segment_mesh(0.0, 2.0, 1, 0);
    REQUIRE(mid.card() == 1);
    CHECK(std::abs(mid.points(0, 0) - 1.0) < 1e-15);
    CHECK(mid.constant == 1.0);

    CHECK(segment_mesh(0.0, 2.0, 5, 4).constant == doctest::Approx(3.2361).epsilon(1e-4));
    CHECK_THROWS_WITH_AS(segment_mesh(0.0, 2.0, 4, 4), doctest::Contains("lambda_too_small"), Error);
}

TEST_CASE("complex disk mesh examples")
{
    const auto m = cdisk_mesh(0.0, 1.0, 2, 1);
    REQUIRE(m.card() == 4);
    CHECK(std::abs(m.points(0, 0) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(m.points(1, 0) + 1.0) < 1e-15);
    CHECK(std::abs(m.points(2, 0) - Complex(0, -1)) < 1e-15);
    CHECK(std::abs(m.points(3, 0) - 1.0) < 1e-15);

    for (int n = 1; n <= 4; ++n) {
        const auto roots = cdisk_mesh(0.0, 1.0, 4 * n, 3 * n);
        REQUIRE(roots.card() == 8 * n);
        for (Eigen::Index i = 0; i < roots.card(); ++i) {
            CHECK(std::abs(std::pow(roots.points(i, 0), 8 * n) - 1.0) < 1e-12);
        }
    }
    CHECK(cdisk_mesh(0.0, 1.0, 4, 3).constant == doctest::Approx(1.0 / std::cos(3 * pi / 8)));
    CHECK(cdisk_mesh(0.0, 1.0, 4, 3).constant == doctest::Approx(2.6131).epsilon(1e-4));
    CHECK_THROWS_AS(cdisk_mesh(0.0, 0.0, 4, 3), Error);
}

TEST_CASE("real disk mesh examples")
{
    const auto m = rdisk_mesh({1.0, 0.0}, 1.0, 10, 7);
    CHECK(m.card() == 100);
    CHECK(m.constant == doctest::Approx(1.0 / std::pow(std::cos(7 * pi / 20), 2)));
    CHECK(m.constant <= 4.86);
    CHECK(std::ceil(m.constant * 100) / 100 == doctest::Approx(4.86));

    const auto one = rdisk_mesh({0.3, -0.2}, 2.0, 1, 0);
    REQUIRE(one.card() == 1);
    CHECK(std::abs(one.points(0, 0) - 0.3) < 1e-15);
    CHECK(std::abs(one.points(0, 1) + 0.2) < 1e-15);

    for (int n = 1; n <= 5; ++n) CHECK(rdisk_mesh({0.0, 0.0}, 1.0, 4 * n, 2 * n).card() == 16 * n * n);
}

TEST_CASE("cardinalities and disk containment")
{
    for (int lambda = 1; lambda <= 12; ++lambda) {
        for (int n = 0; n < lambda; ++n) {
            CHECK(segment_mesh(-2.0, 3.0, lambda, n).card() == lambda);
            CHECK(cdisk_mesh(Complex(1, 1), 0.5, lambda, n).card() == 2 * lambda);
            const auto d = rdisk_mesh({1.0, -1.0}, 1.5, lambda, n);
            CHECK(d.card() == lambda * lambda);
            for (Eigen::Index i = 0; i < d.card(); ++i) {
                const double r = std::hypot(d.points(i, 0).real() - 1.0, d.points(i, 1).real() + 1.0);
                CHECK(r <= 1.5 + 1e-12);
            }
        }
    }
}

TEST_CASE("segment meshes are norming")
{
    std::mt19937_64 rng(21);
    const Complex a = -0.5, b = 2.0;
    for (auto [n, lambda] : {std::pair{2, 3}, {4, 5}, {5, 8}, {8, 12}, {10, 11}}) {
        const auto mesh = segment_mesh(a, b, lambda, n);
        for (int t = 0; t < 200; ++t) {
            const auto p = random_poly(1, n, rng);
            double sup = 0.0;
            for (int i = 0; i <= 10000; ++i) sup = std::max(sup, p({a + (b - a) * (i / 10000.0)}));
            CHECK(sup <= mesh.constant * mesh_max(p, mesh) * (1 + 1e-12));
        }
    }
}

TEST_CASE("complex disk meshes are norming")
{
    std::mt19937_64 rng(22);
    const Complex c(0.5, -0.25);
    const double r = 1.5;
    for (auto [n, lambda] : {std::pair{2, 3}, {3, 4}, {6, 8}, {7, 8}}) {
        const auto mesh = cdisk_mesh(c, r, lambda, n);
        for (int t = 0; t < 200; ++t) {
            const auto p = random_poly(1, n, rng);
            double sup = 0.0;
            for (int i = 0; i < 4096; ++i) sup = std::max(sup, p({c + std::polar(r, 2 * pi * i / 4096)}));
            CHECK(sup <= mesh.constant * mesh_max(p, mesh) * (1 + 1e-12));
        }
    }
}

TEST_CASE("real disk meshes are norming")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::array<double, 2> c{1.0, 0.0};
    auto monomials = [](int n, double x, double y) {
        std::vector<double> v;
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b) v.push_back(std::pow(x, a) * std::pow(y, b));
        return v;
    };
    for (auto [n, lambda] : {std::pair{2, 3}, {3, 4}, {5, 7}}) {
        const auto mesh = rdisk_mesh(c, 1.0, lambda, n);
        const auto terms = static_cast<Eigen::Index>(monomials(n, 0, 0).size());
        Eigen::MatrixXd on_mesh(mesh.card(), terms), on_grid(201 * 201, terms);
        for (Eigen::Index i = 0; i < mesh.card(); ++i) {
            const auto v = monomials(n, mesh.points(i, 0).real(), mesh.points(i, 1).real());
            on_mesh.row(i) = Eigen::Map<const Eigen::RowVectorXd>(v.data(), terms);
        }
        for (int i = 0; i <= 200; ++i) {
            for (int j = 0; j <= 200; ++j) {
                const double rho = i / 200.0, th = 2 * pi * j / 200.0;
                const auto v = monomials(n, c[0] + rho * std::cos(th), c[1] + rho * std::sin(th));
                on_grid.row(i * 201 + j) = Eigen::Map<const Eigen::RowVectorXd>(v.data(), terms);
            }
        }
        Eigen::MatrixXd C(terms, 200);
        for (Eigen::Index k = 0; k < C.size(); ++k) C.data()[k] = u(rng);
        const Eigen::RowVectorXd mesh_sup = (on_mesh * C).cwiseAbs().colwise().maxCoeff();
        const Eigen::RowVectorXd grid_sup = (on_grid * C).cwiseAbs().colwise().maxCoeff();
        for (int t = 0; t < 200; ++t) CHECK(grid_sup[t] <= mesh.constant * mesh_sup[t] * (1 + 1e-12));
    }
}

TEST_CASE("lambda rules")
{
    CHECK(default_lambda_rule(Segment{0.0, 1.0})(4) == 6);
    CHECK(default_lambda_rule(Segment{0.0, 1.0})(3) == 5);
    CHECK(default_lambda_rule(ComplexDisk{0.0, 1.0})(3) == 4);
    CHECK(default_lambda_rule(RealDisk{{0.0, 0.0}, 1.0})(7) == 10);
    CHECK((LambdaRule{4, 3, 0})(3 * 2 + 1) == 10);
    CHECK((LambdaRule{5, 4, 0})(16) == 20);
    CHECK_THROWS_AS((LambdaRule{0, 1, 0})(3), Error);
}

TEST_CASE("domain validation")
{
    CHECK_THROWS_WITH_AS(validate_domain(Segment{1.0, 1.0}), doctest::Contains("domain"), Error);
    CHECK_THROWS_AS(validate_domain(RealDisk{{0.0, 0.0}, -1.0}), Error);
    CHECK(domain_dim(RealDisk{{0.0, 0.0}, 1.0}) == 2);
    CHECK(domain_dim(Segment{0.0, 1.0}) == 1);
}

}
