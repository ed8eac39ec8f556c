#include "polymesh/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

namespace polymesh {

namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_output(const ExperimentConfig& config, const std::string& name, fs::path* where)
{
    fs::create_directories(config.out);
    *where = fs::path(config.out) / name;
    std::ofstream os(*where);
    if (!os) throw Error("usage", "cannot write '" + where->string() + "'");
    return os;
}

std::string header_line(const std::vector<std::pair<std::string, std::string>>& header)
{
    std::string s;
    for (const auto& [k, v] : header) s += (s.empty() ? "" : " ") + k + "=" + v;
    return s;
}

MeshParams mesh_params(const ExperimentConfig& config)
{
    return {config.lambda, config.ell_offset};
}

OrthoOptions ortho_options(const SurfaceSpec& surface, int n)
{
    OrthoOptions opts;
    if (auto dim = surface_dimension(surface, n)) opts.eta_hint = static_cast<int>(*dim);
    return opts;
}

/// Real pipeline for real surfaces whose meshes stayed real.
bool use_real_pipeline(const ExampleSetup& setup, const NormedMesh& control)
{
    return setup.surface.real_flag && !control.has_complex_fibers;
}

TestFunction resolve_function(const ExampleSetup& setup, const std::string& tag)
{
    return tag == "f4" ? setup.f4 : test_function_from_string(tag);
}

template <typename Scalar>
std::vector<ApproxRow> approx_rows_impl(const ExperimentConfig& config, const ExampleSetup& setup,
                                        const PointSet& control)
{
    std::vector<ApproxRow> rows;
    std::vector<Vector<Scalar>> f_control;
    for (const auto& tag : config.functions) {
        f_control.push_back(
            sample_test_function(resolve_function(setup, tag), control).template cast<Scalar>());
    }
    for (int n : config.degrees.values()) {
        const NormedMesh mesh = build_mesh(setup, n, mesh_params(config));
        const auto basis = make_ortho_basis<Scalar>(mesh.points, n, ortho_options(setup.surface, n));
        std::vector<Operator<Scalar>> ops;
        std::vector<double> setup_seconds;
        for (const auto& method : config.methods) {
            const auto t0 = Clock::now();
            ops.push_back(make_operator(operator_kind_from_string(method), basis));
            setup_seconds.push_back(seconds_since(t0));
        }
        const auto lebesgue = lebesgue_constants(ops, basis, control);
        for (std::size_t m = 0; m < ops.size(); ++m) {
            const auto& op = ops[m];
            for (std::size_t f = 0; f < config.functions.size(); ++f) {
                const auto t1 = Clock::now();
                const Vector<Scalar> samples =
                    sample_test_function(resolve_function(setup, config.functions[f]), mesh.points)
                        .template cast<Scalar>();
                const auto coeffs = fit(op, basis, samples);
                const auto approx = evaluate(basis, coeffs, control);
                const double err  = rel_error(f_control[f], approx);
                rows.push_back({n, config.methods[m], config.functions[f], err, lebesgue[m],
                                op.card_nodes(basis), setup_seconds[m] + seconds_since(t1)});
            }
        }
    }
    return rows;
}

template <typename Scalar>
std::vector<LebesgueRow> lebesgue_rows_impl(const ExperimentConfig& config,
                                            const ExampleSetup& setup, const PointSet& control)
{
    std::vector<LebesgueRow> rows;
    for (int n : config.degrees.values()) {
        const NormedMesh mesh = build_mesh(setup, n, mesh_params(config));
        const auto basis = make_ortho_basis<Scalar>(mesh.points, n, ortho_options(setup.surface, n));
        std::vector<Operator<Scalar>> ops;
        std::vector<double> setup_seconds;
        for (const auto& method : config.methods) {
            const auto t0 = Clock::now();
            ops.push_back(make_operator(operator_kind_from_string(method), basis));
            setup_seconds.push_back(seconds_since(t0));
        }
        const auto t1 = Clock::now();
        const auto lebesgue = lebesgue_constants(ops, basis, control);
        const double shared = seconds_since(t1) / static_cast<double>(ops.size());
        for (std::size_t m = 0; m < ops.size(); ++m) {
            rows.push_back({n, config.methods[m], lebesgue[m], ops[m].card_nodes(basis),
                            setup_seconds[m] + shared});
        }
    }
    return rows;
}

} // namespace

int exit_code_for(const Error& e)
{
    static const std::set<std::string> usage{
        "usage",       "arity",           "domain",           "surface",
        "lambda_rule", "lambda_too_small", "format",          "not_monic_normalized",
        "not_pure_power", "construction_mismatch", "base_too_coarse"};
    return usage.count(e.code()) ? exit_usage : exit_numeric;
}

int cmd_dims(const ExperimentConfig& config, std::ostream& out)
{
    const ExampleSetup setup = resolve_setup(config);
    out << "n,dim\n";
    for (int n : config.degrees.values()) {
        const auto dim = surface_dimension(setup.surface, n);
        out << n << ',';
        if (dim) {
            out << *dim << '\n';
        } else {
            out << "use numeric rank\n";
        }
    }
    return exit_ok;
}

int cmd_basemesh(const ExperimentConfig& config, std::ostream& out)
{
    const ExampleSetup setup = resolve_setup(config);
    for (int n : config.degrees.values()) {
        const int lambda = config.lambda.value_or(lambda_for(setup.rule, n));
        const BaseMesh base = make_base_mesh(setup.domain, lambda, n);
        const std::vector<std::pair<std::string, std::string>> header{
            {"domain", domain_kind(setup.domain)},
            {"n", std::to_string(n)},
            {"lambda", std::to_string(lambda)},
            {"constant", format_double(base.constant)},
            {"card", std::to_string(base.card())}};
        fs::path path;
        auto os = open_output(config, "basemesh_" + domain_kind(setup.domain) + "_n" +
                                          std::to_string(n) + ".csv", &path);
        write_points_csv(os, header, base.points);
        out << path.string() << ": " << header_line(header) << '\n';
    }
    return exit_ok;
}

int cmd_mesh(const ExperimentConfig& config, std::ostream& out)
{
    const ExampleSetup setup = resolve_setup(config);
    for (int n : config.degrees.values()) {
        const NormedMesh mesh = build_mesh(setup, n, mesh_params(config));
        fs::path path;
        auto os = open_output(config, "mesh_" + setup.surface.id + "_n" + std::to_string(n) + ".csv",
                              &path);
        write_mesh_csv(os, mesh);
        out << path.string() << ": " << header_line(mesh_header(mesh));
        if (mesh.has_complex_fibers) out << " complex_fibers=1";
        if (mesh.has_degenerate_fiber) out << " degenerate_fiber=1";
        out << '\n';
    }
    return exit_ok;
}

int cmd_verify_norming(const ExperimentConfig& config, std::ostream& out)
{
    const ExampleSetup setup = resolve_setup(config);
    std::mt19937_64 rng(config.seed);
    fs::path path;
    auto os = open_output(config, "verify_" + setup.surface.id + ".csv", &path);
    const std::string columns = "n,ell,lambda,card,control_card,trials,max_ratio,constant,status\n";
    os << columns;
    out << columns;
    bool ok = true;
    for (int n : config.degrees.values()) {
        const NormedMesh mesh = build_mesh(setup, n, mesh_params(config));
        const int ell = ell_for(setup.surface, setup.construction, n);
        const NormedMesh control = build_mesh_at_index(setup, n, 3 * std::max(ell, 1));
        const NormingReport report = check_norming(mesh, control.points, config.trials, rng);
        const std::string status = !mesh.constant ? "advisory" : report.pass() ? "pass" : "FAIL";
        ok = ok && report.pass();
        std::ostringstream row;
        row << n << ',' << mesh.base.n << ',' << mesh.base.lambda << ',' << mesh.card() << ','
            << control.card() << ',' << config.trials << ',' << format_double(report.max_ratio)
            << ',' << (mesh.constant ? format_double(*mesh.constant) : "uncertified") << ','
            << status << '\n';
        os << row.str();
        out << row.str();
    }
    return ok ? exit_ok : exit_verification;
}

int cmd_nodes(const ExperimentConfig& config, std::ostream& out)
{
    const ExampleSetup setup = resolve_setup(config);
    for (int n : config.degrees.values()) {
        const NormedMesh mesh = build_mesh(setup, n, mesh_params(config));
        const auto opts = ortho_options(setup.surface, n);
        for (const auto& method : config.methods) {
            const OperatorKind kind = operator_kind_from_string(method);
            if (kind == OperatorKind::least_squares) continue;
            Eigen::VectorXi nodes;
            int eta = 0;
            if (use_real_pipeline(setup, mesh)) {
                const auto basis = make_ortho_basis<double>(mesh.points, n, opts);
                nodes = kind == OperatorKind::interp_afp ? afp_select(basis) : dlp_select(basis);
                eta = basis.eta;
            } else {
                const auto basis = make_ortho_basis<Complex>(mesh.points, n, opts);
                nodes = kind == OperatorKind::interp_afp ? afp_select(basis) : dlp_select(basis);
                eta = basis.eta;
            }
            PointSet points(nodes.size(), mesh.points.cols());
            for (Eigen::Index i = 0; i < nodes.size(); ++i) points.row(i) = mesh.points.row(nodes[i]);
            auto header = mesh_header(mesh);
            header.back() = {"card", std::to_string(points.rows())};
            header.emplace_back("method", method);
            header.emplace_back("eta", std::to_string(eta));
            fs::path path;
            auto os = open_output(config, "nodes_" + setup.surface.id + "_" + method + "_n" +
                                              std::to_string(n) + ".csv", &path);
            write_points_csv(os, header, points);
            out << path.string() << ": " << header_line(header) << '\n';
        }
    }
    return exit_ok;
}

std::vector<ApproxRow> approx_rows(const ExperimentConfig& config)
{
    const ExampleSetup setup = resolve_setup(config);
    if (setup.surface.ambient_dim != 3) {
        throw Error("usage", "test functions are defined on R^3, surface '" + setup.surface.id +
                                 "' lives in dimension " + std::to_string(setup.surface.ambient_dim));
    }
    const NormedMesh control = build_mesh(setup, config.control_degree);
    if (use_real_pipeline(setup, control)) return approx_rows_impl<double>(config, setup, control.points);
    return approx_rows_impl<Complex>(config, setup, control.points);
}

std::vector<LebesgueRow> lebesgue_rows(const ExperimentConfig& config)
{
    const ExampleSetup setup = resolve_setup(config);
    const NormedMesh control = build_mesh(setup, config.control_degree);
    if (use_real_pipeline(setup, control)) {
        return lebesgue_rows_impl<double>(config, setup, control.points);
    }
    return lebesgue_rows_impl<Complex>(config, setup, control.points);
}

int cmd_approx(const ExperimentConfig& config, std::ostream& out)
{
    const auto rows = approx_rows(config);
    fs::path path;
    auto os = open_output(config, "approx_" + resolve_setup(config).surface.id + ".csv", &path);
    write_approx_csv(os, rows);
    out << path.string() << ": " << rows.size() << " rows\n";
    return exit_ok;
}

int cmd_lebesgue(const ExperimentConfig& config, std::ostream& out)
{
    const auto rows = lebesgue_rows(config);
    fs::path path;
    auto os = open_output(config, "lebesgue_" + resolve_setup(config).surface.id + ".csv", &path);
    write_lebesgue_csv(os, rows);
    write_lebesgue_csv(out, rows);
    return exit_ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Norming polynomial meshes on algebraic sets"};
    app.name("polymesh");
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path, surface, range, out_dir;
    std::optional<int> lambda, control_degree, trials, ell_offset;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> methods, functions;

    app.add_option("--config", config_path, "JSON experiment configuration");
    app.add_option("--surface", surface, "builtin id or path to a surface JSON file");
    app.add_option("--n", range, "degree range: n, start:stop or start:step:stop");
    app.add_option("--lambda", lambda, "base mesh parameter override");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--control-degree", control_degree, "degree of the control mesh");
    app.add_option("--trials", trials, "random polynomials per degree");
    app.add_option("--ell-offset", ell_offset, "shift of the base index (negative control)");
    app.add_option("--methods", methods, "subset of afp,dlp,ls")->delimiter(',');
    app.add_option("--functions", functions, "subset of f1,f2,f3,f4")->delimiter(',');

    using Command = int (*)(const ExperimentConfig&, std::ostream&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands{
        {"dims", "dimension of P_n on the surface", cmd_dims},
        {"basemesh", "base meshes on the projected domain", cmd_basemesh},
        {"mesh", "lifted norming meshes (CSV)", cmd_mesh},
        {"verify-norming", "random-polynomial check of the norming inequality", cmd_verify_norming},
        {"nodes", "AFP / DLP interpolation nodes (CSV)", cmd_nodes},
        {"approx", "interpolation and least-squares errors (CSV)", cmd_approx},
        {"lebesgue", "Lebesgue constants (CSV)", cmd_lebesgue},
    };
    for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        ExperimentConfig config = config_path ? load_config(*config_path) : ExperimentConfig{};
        if (surface) config.surface = *surface;
        if (range) config.degrees = parse_degree_range(*range);
        if (lambda) config.lambda = *lambda;
        if (seed) config.seed = *seed;
        if (out_dir) config.out = *out_dir;
        if (control_degree) config.control_degree = *control_degree;
        if (trials) config.trials = *trials;
        if (ell_offset) config.ell_offset = *ell_offset;
        if (!methods.empty()) config.methods = methods;
        if (!functions.empty()) config.functions = functions;
        // Re-validate the merged configuration.
        nlohmann::json merged{{"methods", config.methods},
                              {"functions", config.functions},
                              {"trials", config.trials},
                              {"control_degree", config.control_degree}};
        config_from_json(merged);

        for (const auto& [name, help, fn] : commands) {
            if (app.got_subcommand(name)) return fn(config, out);
        }
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}

} // namespace polymesh
