#include "polymesh/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "polymesh/error.hpp"

namespace polymesh {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Complex complex_from_json(const json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw Error("usage", "expected a number or a [re, im] pair, got " + j.dump());
}

json complex_to_json(Complex c)
{
    return json::array({c.real(), c.imag()});
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("usage", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error("usage", what + ": " + e.what());
    }
}

std::vector<std::string> string_list(const json& j, const std::string& key)
{
    if (!j.is_array()) throw Error("usage", "'" + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) out.push_back(v.get<std::string>());
    return out;
}

} // namespace

// ------------------------------------------------------------------ surfaces

SurfaceSpec surface_from_json(const json& j)
{
    try {
        SurfaceSpec surface;
        surface.id          = j.value("id", std::string("custom"));
        surface.ambient_dim = j.at("ambient_dim").get<int>();
        surface.real_flag   = j.value("real_flag", false);
        for (const auto& eq : j.at("equations")) {
            const int k    = eq.at("k").get<int>();
            const int vars = eq.at("vars").get<int>();
            const auto& coeffs = eq.at("coeffs");
            if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != k) {
                throw Error("surface", "an equation with k = " + std::to_string(k) +
                                           " needs exactly k coefficient polynomials");
            }
            std::vector<MultiPoly> polys;
            for (const auto& c : coeffs) {
                MultiPoly p(vars);
                for (const auto& t : c.at("terms")) {
                    const auto exps = t.at("exps").get<Exponent>();
                    if (static_cast<int>(exps.size()) != vars) {
                        throw Error("surface", "term exponent length differs from vars");
                    }
                    p += MultiPoly::monomial(vars, exps,
                                             Complex(t.at("re").get<double>(), t.value("im", 0.0)));
                }
                polys.push_back(std::move(p));
            }
            surface.equations.emplace_back(k, std::move(polys));
        }
        surface.validate();
        return surface;
    } catch (const json::exception& e) {
        throw Error("surface", std::string("malformed surface specification: ") + e.what());
    }
}

json surface_to_json(const SurfaceSpec& surface)
{
    json eqs = json::array();
    for (const auto& eq : surface.equations) {
        json coeffs = json::array();
        for (const auto& p : eq.coeffs()) {
            json terms = json::array();
            for (const auto& [e, c] : p.terms()) {
                terms.push_back({{"exps", e}, {"re", c.real()}, {"im", c.imag()}});
            }
            coeffs.push_back({{"terms", terms}});
        }
        eqs.push_back({{"k", eq.k()}, {"vars", eq.base_dim()}, {"coeffs", coeffs}});
    }
    return {{"id", surface.id},
            {"ambient_dim", surface.ambient_dim},
            {"real_flag", surface.real_flag},
            {"equations", eqs}};
}

SurfaceSpec load_surface(const std::string& path)
{
    SurfaceSpec surface = surface_from_json(parse_json(read_text(path), path));
    if (surface.id == "custom") surface.id = std::filesystem::path(path).stem().string();
    return surface;
}

BaseDomain domain_from_json(const json& j)
{
    try {
        const auto kind = j.at("kind").get<std::string>();
        BaseDomain domain;
        if (kind == "segment") {
            domain = Segment{complex_from_json(j.at("a")), complex_from_json(j.at("b"))};
        } else if (kind == "cdisk") {
            domain = ComplexDisk{complex_from_json(j.at("center")), j.at("radius").get<double>()};
        } else if (kind == "rdisk") {
            const auto c = j.at("center").get<std::vector<double>>();
            if (c.size() != 2) throw Error("usage", "rdisk center must be [x, y]");
            domain = RealDisk{{c[0], c[1]}, j.at("radius").get<double>()};
        } else {
            throw Error("usage", "unknown domain kind '" + kind + "'");
        }
        validate_domain(domain);
        return domain;
    } catch (const json::exception& e) {
        throw Error("usage", std::string("malformed domain: ") + e.what());
    }
}

json domain_to_json(const BaseDomain& domain)
{
    return std::visit(
        overloaded{
            [](const Segment& s) -> json {
                return {{"kind", "segment"}, {"a", complex_to_json(s.a)}, {"b", complex_to_json(s.b)}};
            },
            [](const ComplexDisk& d) -> json {
                return {{"kind", "cdisk"}, {"center", complex_to_json(d.center)}, {"radius", d.radius}};
            },
            [](const RealDisk& d) -> json {
                return {{"kind", "rdisk"},
                        {"center", json::array({d.center[0], d.center[1]})},
                        {"radius", d.radius}};
            },
        },
        domain);
}

std::string domain_kind(const BaseDomain& domain)
{
    return domain_to_json(domain).at("kind").get<std::string>();
}

// ---------------------------------------------------------------- point CSV

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_points_csv(std::ostream& os,
                      const std::vector<std::pair<std::string, std::string>>& header,
                      const PointSet& points)
{
    os << '#';
    for (const auto& [k, v] : header) os << ' ' << k << '=' << v;
    os << '\n';
    for (Eigen::Index d = 0; d < points.cols(); ++d) {
        os << (d ? "," : "") << "re_" << d + 1 << ",im_" << d + 1;
    }
    os << '\n';
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index d = 0; d < points.cols(); ++d) {
            os << (d ? "," : "") << format_double(points(i, d).real()) << ','
               << format_double(points(i, d).imag());
        }
        os << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> mesh_header(const NormedMesh& mesh)
{
    return {{"surface", mesh.surface.id},
            {"n", std::to_string(mesh.n)},
            {"ell", std::to_string(mesh.ell)},
            {"lambda", std::to_string(mesh.base.lambda)},
            {"constant", mesh.constant ? format_double(*mesh.constant) : "uncertified"},
            {"card", std::to_string(mesh.card())}};
}

void write_mesh_csv(std::ostream& os, const NormedMesh& mesh)
{
    write_points_csv(os, mesh_header(mesh), mesh.points);
}

PointFile read_points_csv(std::istream& is)
{
    PointFile file;
    std::string line;
    if (!std::getline(is, line) || line.empty() || line[0] != '#') {
        throw Error("format", "missing '#' header line");
    }
    std::istringstream hs(line.substr(1));
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw Error("format", "bad header field '" + field + "'");
        file.header[field.substr(0, eq)] = field.substr(eq + 1);
    }
    if (!std::getline(is, line)) throw Error("format", "missing column-name row");
    const auto columns = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ',') + 1);
    if (columns % 2 != 0) throw Error("format", "expected re/im column pairs");

    std::vector<std::vector<Complex>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> values;
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error("format", "bad number '" + cell + "'");
            }
        }
        if (static_cast<Eigen::Index>(values.size()) != columns) {
            throw Error("format", "row width differs from the column-name row");
        }
        std::vector<Complex> row;
        for (std::size_t d = 0; d < values.size(); d += 2) row.emplace_back(values[d], values[d + 1]);
        rows.push_back(std::move(row));
    }
    file.points.resize(static_cast<Eigen::Index>(rows.size()), columns / 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (Eigen::Index d = 0; d < columns / 2; ++d) {
            file.points(static_cast<Eigen::Index>(i), d) = rows[i][d];
        }
    }
    return file;
}

// -------------------------------------------------------------- result CSV

void write_approx_csv(std::ostream& os, const std::vector<ApproxRow>& rows)
{
    os << "n,method,f_tag,rel_error,lebesgue,card_nodes,seconds\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.method << ',' << r.f_tag << ',' << format_double(r.rel_error) << ','
           << format_double(r.lebesgue) << ',' << r.card_nodes << ',' << format_double(r.seconds)
           << '\n';
    }
}

void write_lebesgue_csv(std::ostream& os, const std::vector<LebesgueRow>& rows)
{
    os << "n,method,lebesgue,card_nodes,seconds\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.method << ',' << format_double(r.lebesgue) << ',' << r.card_nodes
           << ',' << format_double(r.seconds) << '\n';
    }
}

// ---------------------------------------------------------------- configs

std::vector<int> DegreeRange::values() const
{
    std::vector<int> out;
    for (int n = start; n <= stop; n += step) out.push_back(n);
    return out;
}

DegreeRange parse_degree_range(const std::string& text)
{
    std::vector<int> parts;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error("usage", "bad degree range '" + text + "'");
        parts.push_back(v);
    }
    DegreeRange r;
    if (parts.size() == 1) {
        r = {parts[0], 1, parts[0]};
    } else if (parts.size() == 2) {
        r = {parts[0], 1, parts[1]};
    } else if (parts.size() == 3) {
        r = {parts[0], parts[1], parts[2]};
    } else {
        throw Error("usage", "bad degree range '" + text + "'");
    }
    if (r.start < 0 || r.step < 1 || r.stop < r.start) {
        throw Error("usage", "degree range '" + text + "' is empty or negative");
    }
    return r;
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw Error("usage", "config must be a JSON object");
    ExperimentConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "surface") {
                c.surface = v.get<std::string>();
            } else if (key == "domain") {
                c.domain = domain_from_json(v);
            } else if (key == "lambda_rule") {
                c.lambda_rule = LambdaRule{v.at("num").get<int>(), v.at("den").get<int>(),
                                           v.value("offset", 0)};
            } else if (key == "construction") {
                c.construction = construction_from_string(v.get<std::string>());
            } else if (key == "degrees") {
                c.degrees = parse_degree_range(v.is_number() ? std::to_string(v.get<int>())
                                                             : v.get<std::string>());
            } else if (key == "lambda") {
                if (!v.is_null()) c.lambda = v.get<int>();
            } else if (key == "methods") {
                c.methods = string_list(v, key);
            } else if (key == "functions") {
                c.functions = string_list(v, key);
            } else if (key == "control_degree") {
                c.control_degree = v.get<int>();
            } else if (key == "seed") {
                c.seed = v.get<std::uint64_t>();
            } else if (key == "trials") {
                c.trials = v.get<int>();
            } else if (key == "ell_offset") {
                c.ell_offset = v.get<int>();
            } else if (key == "out") {
                c.out = v.get<std::string>();
            } else {
                throw Error("usage", "unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw Error("usage", std::string("malformed config: ") + e.what());
    }
    for (const auto& m : c.methods) operator_kind_from_string(m);
    for (const auto& f : c.functions) {
        if (f != "f1" && f != "f2" && f != "f3" && f != "f4") {
            throw Error("usage", "unknown test function '" + f + "' (expected f1..f4)");
        }
    }
    if (c.trials < 1) throw Error("usage", "trials must be positive");
    if (c.control_degree < 0) throw Error("usage", "control degree must be nonnegative");
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    ExperimentConfig config = config_from_json(parse_json(read_text(path), path));
    const std::filesystem::path surface(config.surface);
    if (!is_builtin(config.surface) && surface.is_relative()) {
        config.surface = (std::filesystem::path(path).parent_path() / surface).string();
    }
    return config;
}

ExampleSetup resolve_setup(const ExperimentConfig& config)
{
    ExampleSetup setup;
    if (is_builtin(config.surface)) {
        setup = builtin_example(config.surface);
        if (config.domain) setup.domain = *config.domain;
    } else {
        if (!std::filesystem::exists(config.surface)) {
            throw Error("usage", "'" + config.surface + "' is neither a builtin id nor a file");
        }
        if (!config.domain) throw Error("usage", "a surface file needs a base domain in the config");
        setup.surface      = load_surface(config.surface);
        setup.domain       = *config.domain;
        setup.rule         = default_lambda_rule(setup.domain);
        setup.construction = default_construction(setup.surface);
    }
    if (config.lambda_rule) setup.rule = *config.lambda_rule;
    if (config.construction) setup.construction = *config.construction;
    if (domain_dim(setup.domain) != setup.surface.base_dim()) {
        throw Error("usage", "base domain dimension does not match the surface");
    }
    return setup;
}

} // namespace polymesh
