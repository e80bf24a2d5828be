#pragma once

// Experiment description loaded from a plain key = value file. Unknown keys
// are rejected so typos surface immediately; command-line flags override file
// values in the CLI layer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpq/model.hpp"
#include "tpq/sim.hpp"
#include "tpq/wgos.hpp"

namespace tpq {

struct ExperimentSpec {
    TrafficParams params;

    // Single-configuration commands (solve, simulate, validate).
    std::optional<int> r_threshold;
    std::optional<int> n_capacity;

    // Sweep commands: N = total - R for each R in r_values (ascending).
    std::optional<int> total;
    std::vector<int> r_values;

    // Optional curve family: rerun the experiment once per value of the
    // varied arrival rate ("lambda_rt" or "lambda_nrt").
    std::optional<std::string> vary_param;
    std::vector<double> vary_values;

    std::optional<CostWeights> costs;
    GeneratorMode mode = GeneratorMode::Literal;
    // Absent means "per command": simulate falls back to nonpreemptive,
    // validate to the analytic twin of mode.
    std::optional<Discipline> discipline;

    // Simulation overrides; defaults are filled per default_sim_config.
    std::optional<double> horizon;
    std::optional<double> warmup;
    std::optional<int> replications;
    std::optional<std::uint64_t> seed;
};

// Accepted keys:
//   lambda_rt, lambda_nrt, mu_rt, mu_nrt
//   r_threshold, n_capacity
//   total, r_values            (r_values: comma list of ints and lo:hi ranges)
//   vary, vary_values          (vary: lambda_rt | lambda_nrt)
//   cl_rt, cl_nrt, cd_rt, cd_nrt   (all four or none)
//   mode, discipline, seed, replications, horizon, warmup
// '#' starts a comment; blank lines are ignored.
ExperimentSpec parse_experiment(const std::string& text);

// Reads the file and parses it. Throws IoError when unreadable.
ExperimentSpec load_experiment(const std::string& path);

}  // namespace tpq
