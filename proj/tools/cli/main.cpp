// ptnorm: pseudo-norms, Gram matrices, time evolution and consistency
// checks for three exactly solvable complex potentials with PT symmetry.
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "ptnorm/errors.hpp"

namespace {

using ptnorm::cli::RunConfig;

void add_model_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--model", config.model,
                    "model family: oscillator | gpt | scarf")
        ->required();
    cmd->add_option("--alpha", config.alpha, "oscillator strength parameter");
    cmd->add_option("--c", config.c, "oscillator imaginary coordinate shift");
    cmd->add_option("--A", config.A, "gpt/scarf parameter A");
    cmd->add_option("--B", config.B, "gpt/scarf parameter B");
    cmd->add_option("--gamma", config.gamma,
                    "gpt imaginary coordinate shift, in [-pi/4,0) or (0,pi/4)");
}

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--tol", config.tol, "quadrature absolute tolerance")
        ->capture_default_str();
    cmd->add_option("--out", config.out, "output file (evolve: directory)");
    cmd->add_option("--format", config.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->set_config("--config", "",
                    "flat key = value file with the same keys as the flags");
}

void add_state_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--q", config.q, "quasi-parity, +1 or -1")
        ->capture_default_str();
    cmd->add_option("--n", config.n, "quantum number, n >= 0")
        ->capture_default_str();
}

int dispatch(const RunConfig& config) {
    using ptnorm::cli::ResultRecord;
    ResultRecord record;
    if (config.command == "norm") {
        record = ptnorm::cli::cmd_norm(config);
    } else if (config.command == "gram") {
        record = ptnorm::cli::cmd_gram(config);
    } else if (config.command == "evolve") {
        record = ptnorm::cli::cmd_evolve(config);
    } else {
        record = ptnorm::cli::cmd_check(config);
    }
    ptnorm::cli::emit(record, config);
    return 0;
}

int run_failed(const RunConfig& config, const std::string& message,
               int code) {
    // failures still produce a parseable record, never a partial result
    ptnorm::cli::ResultRecord record;
    record.inputs = ptnorm::cli::to_json(config);
    record.errors.push_back(message);
    try {
        ptnorm::cli::emit(record, config);
    } catch (const std::exception&) {
        // output path unusable; stderr still carries the message
    }
    std::cerr << "error: " << message << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bound states, PT pseudo-inner products, modified normalization "
        "coefficients and conserved densities for complex PT-symmetric "
        "potentials"};
    app.require_subcommand(1);

    RunConfig config;

    CLI::App* norm = app.add_subcommand(
        "norm", "normalization coefficient of one bound state");
    add_model_options(norm, config);
    add_state_options(norm, config);
    norm->add_flag("--numeric-only", config.numeric_only,
                   "skip the closed form and its validity window");
    add_common_options(norm, config);

    CLI::App* gram = app.add_subcommand(
        "gram", "pairwise pseudo-inner-product matrix of listed states");
    add_model_options(gram, config);
    gram->add_option("--labels", config.labels,
                     "comma-separated state labels q:n, e.g. +1:0,-1:2")
        ->required();
    gram->add_option("--jobs", config.jobs,
                     "parallel workers for matrix entries")
        ->capture_default_str();
    gram->add_flag("--numeric-only", config.numeric_only,
                   "skip the closed-form validity window");
    add_common_options(gram, config);

    CLI::App* evolve = app.add_subcommand(
        "evolve", "grid time evolution with snapshot and density output");
    add_model_options(evolve, config);
    add_state_options(evolve, config);
    evolve->add_option("--superpose", config.superpose,
                       "initial superposition, e.g. 0.6@+1:0;0.8i@-1:0");
    evolve->add_option("--grid-half-width", config.grid_half_width,
                       "half-width of the symmetric box")
        ->capture_default_str();
    evolve->add_option("--points", config.points, "number of grid points")
        ->capture_default_str();
    evolve->add_option("--dt", config.dt, "time step")
        ->capture_default_str();
    evolve->add_option("--steps", config.steps, "number of time steps")
        ->capture_default_str();
    evolve->add_option("--snapshot-every", config.snapshot_every,
                       "steps between snapshot files")
        ->capture_default_str();
    add_common_options(evolve, config);

    CLI::App* check = app.add_subcommand(
        "check", "contour-shift invariance and phase-relation checks");
    add_model_options(check, config);
    add_state_options(check, config);
    check->add_option("--c2", config.c2,
                      "second contour shift (default 2c) for the oscillator");
    add_common_options(check, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    for (CLI::App* cmd : {norm, gram, evolve, check}) {
        if (cmd->parsed()) config.command = cmd->get_name();
    }

    try {
        return dispatch(config);
    } catch (const ptnorm::BlowUp& e) {
        return run_failed(config, e.what(), 4);
    } catch (const ptnorm::ValidationError& e) {
        return run_failed(config, e.what(), 2);
    } catch (const ptnorm::Error& e) {
        return run_failed(config, e.what(), 3);
    } catch (const std::exception& e) {
        return run_failed(config, e.what(), 3);
    }
}
