///
/// \file cli.hpp
///
/// Command-line front end. Subcommands: dims, basemesh, mesh,
/// verify-norming, nodes, approx, lebesgue. Exit codes: 0 success, 1 usage,
/// 2 numeric failure, 3 verification failure.
///

#ifndef POLYMESH_CLI_HPP
#define POLYMESH_CLI_HPP

#include <iosfwd>
#include <vector>

#include "polymesh/error.hpp"
#include "polymesh/io.hpp"

namespace polymesh {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_numeric = 2, exit_verification = 3 };

/// Exit code for an error raised by the library.
int exit_code_for(const Error& e);

int cmd_dims(const ExperimentConfig& config, std::ostream& out);
int cmd_basemesh(const ExperimentConfig& config, std::ostream& out);
int cmd_mesh(const ExperimentConfig& config, std::ostream& out);
int cmd_verify_norming(const ExperimentConfig& config, std::ostream& out);
int cmd_nodes(const ExperimentConfig& config, std::ostream& out);
int cmd_approx(const ExperimentConfig& config, std::ostream& out);
int cmd_lebesgue(const ExperimentConfig& config, std::ostream& out);

/// Rows of the approx table (no file written).
std::vector<ApproxRow> approx_rows(const ExperimentConfig& config);
std::vector<LebesgueRow> lebesgue_rows(const ExperimentConfig& config);

/// Parses argv and dispatches. Messages go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace polymesh

#endif // POLYMESH_CLI_HPP
