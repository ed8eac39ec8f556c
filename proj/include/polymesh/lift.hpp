///
/// \file lift.hpp
///
/// Norming meshes on algebraic sets obtained as preimages of base meshes
/// under the projection (z, y) -> z.
///
/// Given a compact K in C^N with norming meshes A_l and a surface V given by
/// equations monic in their last variable, the lifted mesh
///
///     B_n = { (z, y) in V : z in A_l(n) }
///
/// is norming for E = pi^{-1}(K) at degree n once l(n) is large enough. The
/// index maps below give l(n) for the four constructions; for pure-power
/// equations (y^k = c(z)) the constant is certified from the base constant.
///

#ifndef POLYMESH_LIFT_HPP
#define POLYMESH_LIFT_HPP

#include <optional>
#include <string>
#include <vector>

#include "polymesh/basemesh.hpp"
#include "polymesh/polycore.hpp"

namespace polymesh {

enum class Construction {
    hyper_specific,   ///< y^k = c(z), certified constant k C^{1/k}
    hyper_general,    ///< any monic s; needs one point off the discriminant
    codim2_specific,  ///< tower of two pure powers, certified constant
    codim2_general,   ///< tower of two monic equations; needs two extra points
};

std::string to_string(Construction c);
Construction construction_from_string(const std::string& name);

/// True for the two constructions with a certified constant.
bool is_specific(Construction c);

// ------------------------------------------------------------ index maps

int ell_hyper_specific(int d, int k, int n);
int ell_hyper_general(int d, int k, int n);

/// The nested index j(t(n)), t built from (d2, k2) and j from (d1, k1).
int ell_codim2_specific(int d1, int k1, int d2, int k2, int n);

/// Upper bound d1 d2 n + d1 d2 k2 + d1 k1 on ell_codim2_specific.
int ell_codim2_headline(int d1, int k1, int d2, int k2, int n);

int ell_codim2_general(int d1, int k1, int d2, int k2, int n);

/// Index map for a surface and construction (dispatches to the above).
int ell_for(const SurfaceSpec& surface, Construction construction, int n);

// -------------------------------------------------------- dimension counts

/// Binomial coefficient C(top, bottom), 0 when top < bottom or top < 0.
long long binomial(int top, int bottom);

/// dim of {sum_{j<k} p_j(z) y^j : deg <= n}, z in C^N.
long long dim_Pn_hypersurface(int N, int k, int n);

/// dim of polynomials in (z, y1, y2), z in C^N, with deg_y1 < k,
/// deg_y2 < kbar and total degree <= n.
long long dim_Pn_codim2(int N, int k, int kbar, int n);

/// Dimension of P_n restricted to the surface, using the total degrees of
/// the defining equations. Empty when the surface is not a hypersurface or
/// a codim-2 tower.
std::optional<long long> surface_dimension(const SurfaceSpec& surface, int n);

// ------------------------------------------------------------ lifted meshes

struct NormedMesh {
    SurfaceSpec surface;
    int n   = 0;
    int ell = 0;
    BaseMesh base;
    PointSet points;
    std::optional<double> constant;  ///< empty means uncertified
    Construction construction = Construction::hyper_specific;
    std::vector<Point> extra_base_points;  ///< z0, or a and b
    bool has_complex_fibers  = false;  ///< real surface with a non-real fiber
    bool has_degenerate_fiber = false; ///< some fiber lies in the discriminant set

    Eigen::Index card() const { return points.rows(); }
};

struct LiftOptions {
    /// Extra base points for the general constructions. When empty they are
    /// chosen from the base mesh points.
    std::vector<Point> extra_points;
    /// Relative tolerance for discriminant avoidance.
    double discriminant_tol = 1e-10;
    /// Skip the l(n) <= base.n check (negative controls only).
    bool allow_coarse_base = false;
    RootSolverOptions roots;
};

/// All points of V over the given base points, fibers nested over the tower.
/// The flags report complex fibers on real surfaces and repeated roots.
PointSet lift_fibers(const SurfaceSpec& surface, const PointSet& base_points,
                     const RootSolverOptions& roots = {}, bool* complex_fibers = nullptr,
                     bool* degenerate_fiber = nullptr);

NormedMesh lift_mesh(const SurfaceSpec& surface, const BaseMesh& base, int n,
                     Construction construction, const LiftOptions& options = {});

/// First candidate whose resultant exceeds tol * (1 + coefficient size).
/// Throws Error("discriminant_everywhere") when none does.
Point find_point_outside_discriminant(const MonicInY& eq, const std::vector<Point>& candidates,
                                      double tol = 1e-10);

/// Certified constant of a specific construction from the base constant.
double lifted_constant(const SurfaceSpec& surface, Construction construction,
                       double base_constant);

/// Kind of base family, needed to turn a lambda rule into a constant bound.
enum class BaseKind { segment, cdisk, rdisk };

BaseKind base_kind(const BaseDomain& domain);

/// n-independent bound sup_n constant(B_n) for a specific construction when
/// lambda(l) = rule(l). Throws Error("not_optimal") when l/lambda is not
/// bounded away from 1, and Error("uncertified") for general constructions.
double mesh_constant_bound(const SurfaceSpec& surface, Construction construction,
                           BaseKind kind, const LambdaRule& rule);

} // namespace polymesh

#endif // POLYMESH_LIFT_HPP
