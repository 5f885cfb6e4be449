#ifndef PTNORM_CLI_COMMANDS_HPP
#define PTNORM_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cli/run_config.hpp"

namespace ptnorm::cli {

/// Uniform command output: inputs echo, results with error estimates,
/// error messages (normally empty), notes on which closed form was
/// cross-checked, and the measured wall time.
struct ResultRecord {
    nlohmann::json inputs;
    nlohmann::json results;
    std::vector<std::string> errors;
    std::vector<std::string> provenance;
    double wall_time_s = 0.0;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

ResultRecord cmd_norm(const RunConfig& config);
ResultRecord cmd_gram(const RunConfig& config);
ResultRecord cmd_evolve(const RunConfig& config);
ResultRecord cmd_check(const RunConfig& config);

/// Serialize per config.format and write to config.out (or stdout). For
/// evolve the record goes to <out dir>/summary.<format> as well as stdout.
void emit(const ResultRecord& record, const RunConfig& config);

/// Deterministic shortest-exact decimal formatting used in all CSV output.
std::string format_double(double v);

}  // namespace ptnorm::cli

#endif  // PTNORM_CLI_COMMANDS_HPP
