#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isospec/grid.hpp"
#include "isospec_cli/catalog.hpp"

namespace isospec::cli {

enum class Command { solve, deform, chain, verify };
enum class OutputFormat { json, csv };

namespace exit_codes {
inline constexpr int pass = 0;
inline constexpr int invariant_failure = 1;
inline constexpr int input_error = 2;
inline constexpr int singular_parameter = 3;
inline constexpr int numerical_failure = 4;
}  // namespace exit_codes

struct RunConfig {
    PotentialSpec potential;
    /// Catalog potentials only; unset means the catalog default grid.
    std::optional<GridSpec> grid;
    std::size_t k = 6;
    std::vector<double> lambdas;
    IntegralOrigin integral_origin = IntegralOrigin::left;
    std::string output_path;  // empty: stdout
    OutputFormat format = OutputFormat::json;
    bool timestamp = true;
};

/// Throws InvalidArgument for an even or too small n, k < 1 or a non-finite lambda.
void validate(const RunConfig& config);

struct CommandResult {
    nlohmann::json report;
    /// The potential written for `--format csv`, as an `x,V` table.
    std::optional<GridFunction> table;
    int exit_code = exit_codes::pass;
};

/// Ground state, partner potential and both spectra.
CommandResult cmd_solve(const RunConfig& config);
/// One-parameter strictly isospectral deformation; needs exactly one lambda.
CommandResult cmd_deform(const RunConfig& config);
/// Multi-parameter deformation chain; needs at least one lambda.
CommandResult cmd_chain(const RunConfig& config);
/// Runs the invariant suite; exit code 1 when any check fails.
CommandResult cmd_verify(const RunConfig& config);

CommandResult run_command(Command command, const RunConfig& config);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isospec::cli
