#ifndef PTNORM_CLI_RUN_CONFIG_HPP
#define PTNORM_CLI_RUN_CONFIG_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptnorm/models.hpp"

namespace ptnorm::cli {

/// One CLI invocation: command tag, model record, state selection, numeric
/// and grid controls, output destination. Validated against the owning
/// family's invariants before any computation runs.
struct RunConfig {
    std::string command;  // norm | gram | evolve | check
    std::string model;    // oscillator | gpt | scarf

    std::optional<double> alpha;
    std::optional<double> c;
    std::optional<double> A;
    std::optional<double> B;
    std::optional<double> gamma;

    int q = 1;
    int n = 0;
    std::string labels;     // "q:n,q:n,..."
    std::string superpose;  // "coef@q:n;coef@q:n" (coef = a, bi or a+bi)

    double tol = 1e-10;
    double grid_half_width = 12.0;
    int points = 1537;
    double dt = 1.0 / 1024;
    int steps = 1024;
    int snapshot_every = 128;
    int jobs = 1;
    double c2 = 0.0;  // check: second contour shift (0 = pick 2c)
    bool numeric_only = false;

    std::string out;              // empty = stdout
    std::string format = "json";  // json | csv

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Throws ValidationError when the family record is incomplete or invalid.
ModelSpec build_model(const RunConfig& config);

std::vector<StateLabel> parse_labels(const std::string& text);
std::vector<std::pair<std::complex<double>, StateLabel>> parse_superposition(
    const std::string& text);

}  // namespace ptnorm::cli

#endif  // PTNORM_CLI_RUN_CONFIG_HPP
