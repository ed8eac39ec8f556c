///
/// \file surfaces.hpp
///
/// The four builtin examples (sphere, cubic surface, complex cubic curve,
/// Viviani's window) and the glue that turns an example setup into lifted
/// meshes, control meshes and random test polynomials.
///

#ifndef POLYMESH_SURFACES_HPP
#define POLYMESH_SURFACES_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polymesh/approx.hpp"
#include "polymesh/basemesh.hpp"
#include "polymesh/lift.hpp"

namespace polymesh {

struct ExampleSetup {
    SurfaceSpec surface;
    BaseDomain domain;
    LambdaRule rule;
    Construction construction = Construction::hyper_specific;
    TestFunction f4 = TestFunction::f4;  ///< the two-point distance variant
};

/// sphere, cubic_surface, cubic_curve, viviani.
const std::vector<std::string>& builtin_ids();
bool is_builtin(const std::string& id);

/// Throws Error("usage") for unknown ids.
ExampleSetup builtin_example(const std::string& id);

/// Specific construction when every equation is a pure power, else general.
Construction default_construction(const SurfaceSpec& surface);

/// lambda = max(rule(ell), ell + 1).
int lambda_for(const LambdaRule& rule, int ell);

struct MeshParams {
    std::optional<int> lambda;  ///< overrides the rule
    int ell_offset = 0;         ///< negative values build an under-indexed base
};

/// B_n: base mesh at index l(n) (+ offset), lifted.
NormedMesh build_mesh(const ExampleSetup& setup, int n, const MeshParams& params = {});

/// Base mesh at index `index` with lambda from the rule, lifted; used as a
/// fine control set (e.g. index 3 l(n)).
NormedMesh build_mesh_at_index(const ExampleSetup& setup, int n, int index);

/// Monomials y^j z^alpha of the restricted space W_n, as ambient exponents:
/// j_i < k_i for each distinguished variable and total degree <= n.
std::vector<Exponent> restricted_monomials(const SurfaceSpec& surface, int n);

/// Matrix of monomial values, one row per point.
Eigen::MatrixXcd monomial_matrix(const std::vector<Exponent>& exps, const PointSet& points);

/// Coefficients uniform in the complex unit square [-1,1] x [-1,1], one
/// column per trial.
Eigen::MatrixXcd random_coefficients(Eigen::Index terms, int trials, std::mt19937_64& rng);

struct NormingReport {
    int n = 0;
    int trials = 0;
    double max_ratio = 0.0;   ///< max over trials of ||p||_control / ||p||_mesh
    std::optional<double> constant;
    int violations = 0;       ///< trials with ratio > constant (+ slack)
    Eigen::Index mesh_card = 0;
    Eigen::Index control_card = 0;

    bool pass() const { return violations == 0; }
};

/// Random W_n polynomials compared on the mesh and on the control set.
NormingReport check_norming(const NormedMesh& mesh, const PointSet& control, int trials,
                            std::mt19937_64& rng, double slack = 1e-9);

} // namespace polymesh

#endif // POLYMESH_SURFACES_HPP
