///
/// \file io.hpp
///
/// Text formats: JSON surface specifications and experiment configurations,
/// CSV point sets (meshes, base meshes, node sets) and result tables.
///
/// Surface specification:
///
///     {
///       "id": "viviani",
///       "ambient_dim": 3,
///       "real_flag": true,
///       "equations": [
///         { "k": 2, "vars": 1,
///           "coeffs": [ { "terms": [ { "exps": [2], "re": 1, "im": 0 },
///                                    { "exps": [1], "re": -2 } ] },
///                       { "terms": [] } ] },
///         ...
///       ]
///     }
///
/// Equation i reads y^k + sum_{j<k} coeffs[j](vars) y^j, where `vars` counts
/// its coefficient variables (base variables, then earlier distinguished
/// variables). `im` defaults to 0.
///

#ifndef POLYMESH_IO_HPP
#define POLYMESH_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polymesh/lift.hpp"
#include "polymesh/surfaces.hpp"

namespace polymesh {

// ------------------------------------------------------------------ surfaces

SurfaceSpec surface_from_json(const nlohmann::json& j);
nlohmann::json surface_to_json(const SurfaceSpec& surface);
SurfaceSpec load_surface(const std::string& path);

/// {"kind": "segment", "a": [re, im], "b": [re, im]},
/// {"kind": "cdisk", "center": [re, im], "radius": r},
/// {"kind": "rdisk", "center": [x, y], "radius": r}.
BaseDomain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const BaseDomain& domain);
std::string domain_kind(const BaseDomain& domain);

// ---------------------------------------------------------------- point CSV

/// `# k1=v1 k2=v2 ...`, a column-name row `re_1,im_1,...`, then one row per
/// point with %.17g values.
void write_points_csv(std::ostream& os,
                      const std::vector<std::pair<std::string, std::string>>& header,
                      const PointSet& points);

/// Header of a mesh file: surface, n, ell, lambda, constant, card.
std::vector<std::pair<std::string, std::string>> mesh_header(const NormedMesh& mesh);

void write_mesh_csv(std::ostream& os, const NormedMesh& mesh);

struct PointFile {
    std::map<std::string, std::string> header;
    PointSet points;
};

/// Parses any file written by write_points_csv. Throws Error("format").
PointFile read_points_csv(std::istream& is);

// -------------------------------------------------------------- result CSV

struct ApproxRow {
    int n = 0;
    std::string method;
    std::string f_tag;
    double rel_error = 0.0;
    double lebesgue  = 0.0;
    Eigen::Index card_nodes = 0;
    double seconds = 0.0;
};

/// n,method,f_tag,rel_error,lebesgue,card_nodes,seconds
void write_approx_csv(std::ostream& os, const std::vector<ApproxRow>& rows);

struct LebesgueRow {
    int n = 0;
    std::string method;
    double lebesgue = 0.0;
    Eigen::Index card_nodes = 0;
    double seconds = 0.0;
};

/// n,method,lebesgue,card_nodes,seconds. The methods of one degree share a
/// single evaluation of the basis on the control set; `seconds` is the node
/// selection time plus an equal share of that evaluation.
void write_lebesgue_csv(std::ostream& os, const std::vector<LebesgueRow>& rows);

/// %.17g
std::string format_double(double v);

// ---------------------------------------------------------------- configs

struct DegreeRange {
    int start = 1;
    int step  = 1;
    int stop  = 1;

    std::vector<int> values() const;
};

/// "stop", "start:stop" or "start:step:stop". Throws Error("usage").
DegreeRange parse_degree_range(const std::string& text);

struct ExperimentConfig {
    std::string surface = "sphere";  ///< builtin id or path to a surface file
    std::optional<BaseDomain> domain;
    std::optional<LambdaRule> lambda_rule;
    std::optional<Construction> construction;
    DegreeRange degrees;
    std::optional<int> lambda;
    std::vector<std::string> methods{"afp", "dlp", "ls"};
    std::vector<std::string> functions{"f1", "f2", "f3", "f4"};
    int control_degree = 30;
    std::uint64_t seed = 1;
    int trials = 200;
    int ell_offset = 0;
    std::string out = ".";
};

/// Unknown keys and malformed values throw Error("usage").
ExperimentConfig config_from_json(const nlohmann::json& j);
/// A relative surface path is taken relative to the config file.
ExperimentConfig load_config(const std::string& path);

/// Builtin example, or a surface file combined with the config's domain,
/// lambda rule and construction.
ExampleSetup resolve_setup(const ExperimentConfig& config);

} // namespace polymesh

#endif // POLYMESH_IO_HPP
