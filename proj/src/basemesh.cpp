#include "polymesh/basemesh.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polymesh/error.hpp"

namespace polymesh {

namespace {

constexpr double pi = std::numbers::pi;

void check_lambda(int lambda, int n)
{
    if (n < 0) throw Error("lambda_too_small", "degree must be nonnegative");
    if (lambda <= n) {
        std::ostringstream msg;
        msg << "lambda = " << lambda << " must exceed n = " << n;
        throw Error("lambda_too_small", msg.str());
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

int domain_dim(const BaseDomain& domain)
{
    return std::holds_alternative<RealDisk>(domain) ? 2 : 1;
}

void validate_domain(const BaseDomain& domain)
{
    std::visit(overloaded{
                   [](const Segment& s) {
                       if (s.a == s.b) throw Error("domain", "segment endpoints coincide");
                   },
                   [](const ComplexDisk& d) {
                       if (!(d.radius > 0.0)) throw Error("domain", "disk radius must be positive");
                   },
                   [](const RealDisk& d) {
                       if (!(d.radius > 0.0)) throw Error("domain", "disk radius must be positive");
                   },
               },
               domain);
}

double base_constant(const BaseDomain& domain, int lambda, int n)
{
    check_lambda(lambda, n);
    const double c = std::cos(n * pi / (2.0 * lambda));
    return std::holds_alternative<RealDisk>(domain) ? 1.0 / (c * c) : 1.0 / c;
}

BaseMesh segment_mesh(Complex a, Complex b, int lambda, int n)
{
    const Segment seg{a, b};
    validate_domain(seg);
    BaseMesh mesh{seg, lambda, n, PointSet(lambda, 1), base_constant(seg, lambda, n)};
    const Complex mid  = 0.5 * (a + b);
    const Complex half = 0.5 * (a - b);
    for (int j = 1; j <= lambda; ++j) {
        mesh.points(j - 1, 0) = mid + half * std::cos((2.0 * j - 1.0) * pi / (2.0 * lambda));
    }
    return mesh;
}

BaseMesh cdisk_mesh(Complex center, double radius, int lambda, int n)
{
    const ComplexDisk disk{center, radius};
    validate_domain(disk);
    BaseMesh mesh{disk, lambda, n, PointSet(2 * lambda, 1), base_constant(disk, lambda, n)};
    for (int j = 1; j <= 2 * lambda; ++j) {
        mesh.points(j - 1, 0) = center + std::polar(radius, j * pi / lambda);
    }
    return mesh;
}

BaseMesh rdisk_mesh(const std::array<double, 2>& center, double radius, int lambda, int n)
{
    const RealDisk disk{center, radius};
    validate_domain(disk);
    BaseMesh mesh{disk, lambda, n, PointSet(lambda * lambda, 2), base_constant(disk, lambda, n)};
    Eigen::Index row = 0;
    for (int j = 1; j <= lambda; ++j) {
        const double rj = radius * std::cos((2.0 * j - 1.0) * pi / (2.0 * lambda));
        for (int m = 1; m <= lambda; ++m) {
            const double angle = m * pi / lambda;
            mesh.points(row, 0) = center[0] + rj * std::cos(angle);
            mesh.points(row, 1) = center[1] + rj * std::sin(angle);
            ++row;
        }
    }
    return mesh;
}

BaseMesh make_base_mesh(const BaseDomain& domain, int lambda, int n)
{
    return std::visit(overloaded{
                          [&](const Segment& s) { return segment_mesh(s.a, s.b, lambda, n); },
                          [&](const ComplexDisk& d) {
                              return cdisk_mesh(d.center, d.radius, lambda, n);
                          },
                          [&](const RealDisk& d) { return rdisk_mesh(d.center, d.radius, lambda, n); },
                      },
                      domain);
}

int LambdaRule::operator()(int n) const
{
    if (num <= 0 || den <= 0) throw Error("lambda_rule", "ratio must be positive");
    return (num * n + den - 1) / den + offset;
}

LambdaRule default_lambda_rule(const BaseDomain& domain)
{
    if (std::holds_alternative<Segment>(domain)) return {3, 2, 0};
    return {4, 3, 0};
}

} // namespace polymesh
