///
/// \file basemesh.hpp
///
/// Classical norming meshes on a segment, a complex disk and a real disk.
///
/// For every integer lambda > n each family satisfies
///
///     ||p||_K <= constant * ||p||_mesh,   deg p <= n,
///
/// with constant 1/cos(n pi / 2 lambda) (segment, complex disk) or its
/// square (real disk). Choosing lambda proportional to n keeps the constant
/// bounded, which is how the optimal meshes on lifted sets are obtained.
///

#ifndef POLYMESH_BASEMESH_HPP
#define POLYMESH_BASEMESH_HPP

#include <array>
#include <variant>

#include "polymesh/polycore.hpp"

namespace polymesh {

struct Segment {
    Complex a;
    Complex b;
};

struct ComplexDisk {
    Complex center;
    double radius;
};

struct RealDisk {
    std::array<double, 2> center;
    double radius;
};

using BaseDomain = std::variant<Segment, ComplexDisk, RealDisk>;

/// Number of base coordinates of a domain (1 for segment/cdisk, 2 for rdisk).
int domain_dim(const BaseDomain& domain);

/// Throws Error("domain") for a zero-length segment or a nonpositive radius.
void validate_domain(const BaseDomain& domain);

struct BaseMesh {
    BaseDomain domain;
    int lambda = 0;
    int n      = 0;
    PointSet points;
    double constant = 1.0;

    Eigen::Index card() const { return points.rows(); }
};

/// Chebyshev points (a+b)/2 + (a-b)/2 cos((2j-1) pi / 2 lambda), j = 1..lambda.
BaseMesh segment_mesh(Complex a, Complex b, int lambda, int n);

/// center + radius exp(i j pi / lambda), j = 1..2 lambda.
BaseMesh cdisk_mesh(Complex center, double radius, int lambda, int n);

/// Polar grid center + r_j (cos(m pi/lambda), sin(m pi/lambda)),
/// r_j = radius cos((2j-1) pi / 2 lambda), j, m = 1..lambda.
BaseMesh rdisk_mesh(const std::array<double, 2>& center, double radius, int lambda, int n);

BaseMesh make_base_mesh(const BaseDomain& domain, int lambda, int n);

/// Norming constant of the family on `domain` at degree n with parameter lambda.
double base_constant(const BaseDomain& domain, int lambda, int n);

/// lambda(n) = ceil(num * n / den) + offset.
struct LambdaRule {
    int num    = 3;
    int den    = 2;
    int offset = 0;

    int operator()(int n) const;
};

/// Default rules: ceil(3n/2) for segments, ceil(4n/3) for both disks.
LambdaRule default_lambda_rule(const BaseDomain& domain);

} // namespace polymesh

#endif // POLYMESH_BASEMESH_HPP
