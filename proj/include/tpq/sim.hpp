#pragma once

// Discrete-event simulator of the two-class finite buffer under three service
// disciplines, with independent replications and standard errors, plus the
// analytic-vs-simulated cross-validation report.
//
// Reproducibility contract: replication k of a run draws its seed as the
// (k+1)-th output of a SplitMix64 sequence started at master_seed, and every
// random variate comes from a std::mt19937_64 via fixed 53-bit inversion, so
// a SimConfig determines its SimMetrics bit for bit.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpq/metrics.hpp"
#include "tpq/model.hpp"

namespace tpq {

// How the single server divides attention between the classes.
//
//   NonPreemptivePriority: a service in progress always completes; at each
//       completion the server takes the RT head-of-line customer if one is
//       waiting, else the NRT head. This is the only discipline with no exact
//       2-D analytic counterpart.
//   PreemptiveResume: RT work always excludes NRT service; an RT arrival
//       stops NRT service, which resumes (memorylessly) once the system has
//       no RT customers. Matches GeneratorMode::Strict in distribution.
//   IndependentClassService: each class departs at its own rate whenever
//       present, as if each had a dedicated server. Matches
//       GeneratorMode::Literal in distribution.
enum class Discipline {
    NonPreemptivePriority,
    PreemptiveResume,
    IndependentClassService,
};

std::string to_string(Discipline d);
Discipline parse_discipline(const std::string& text);  // nonpreemptive|preemptive|independent

struct SimConfig {
    TrafficParams params;
    BufferConfig buffer;
    Discipline discipline = Discipline::NonPreemptivePriority;
    double warmup = 0.0;    // simulated time discarded before measuring
    double horizon = 0.0;   // simulated time measured
    int replications = 20;
    std::uint64_t master_seed = 1;

    void validate() const;  // horizon > 0, replications >= 1, warmup >= 0
};

// Defaults: horizon = 1e6 / (mu_rt + mu_nrt), warmup = 10% of horizon,
// 20 replications.
SimConfig default_sim_config(const TrafficParams& params, BufferConfig buffer,
                             Discipline discipline, std::uint64_t master_seed);

// Event counts for one class over the measurement window. departures and
// in_system_at_end cover only customers admitted inside the window, so
//   arrivals == losses + departures + in_system_at_end
// holds exactly in every replication.
struct ClassTally {
    std::uint64_t arrivals = 0;
    std::uint64_t losses = 0;
    std::uint64_t departures = 0;
    std::uint64_t in_system_at_end = 0;
};

// One replication's estimates. Loss and delay are absent for a class with no
// window arrivals (or no window departures, for delay).
struct RepMetrics {
    double n_rt = 0.0;   // time-average RT occupancy over the window
    double n_nrt = 0.0;
    std::optional<double> l_rt;
    std::optional<double> l_nrt;
    std::optional<double> d_rt;  // mean sojourn of admitted-and-departed customers
    std::optional<double> d_nrt;
    ClassTally rt;
    ClassTally nrt;
    int peak_rt = 0;   // highest occupancy seen at any event instant (whole run)
    int peak_nrt = 0;
};

RepMetrics run_replication(const SimConfig& config, std::uint64_t seed);

// Mean over replications with its standard error (absent below 2 samples).
struct Estimate {
    std::optional<double> value;
    std::optional<double> std_error;
    int samples = 0;
};

struct SimMetrics {
    Estimate n_rt, n_nrt, l_rt, l_nrt, d_rt, d_nrt;
    ClassTally rt;   // summed over replications
    ClassTally nrt;
    int replications = 0;
    double window = 0.0;  // per-replication measured span (== horizon)
    std::vector<RepMetrics> reps;
};

SimMetrics run_simulation(const SimConfig& config);

// --- cross-validation -------------------------------------------------------

inline constexpr double kZThreshold = 3.0;
inline constexpr double kLittleRelTol = 0.01;

struct MetricCheck {
    std::string name;
    double analytic = 0.0;
    std::optional<double> simulated;
    std::optional<double> std_error;
    std::optional<double> z;  // |analytic - simulated| / std_error
    bool pass = false;
};

// Internal consistency of the simulation: time-average count vs admitted
// throughput times mean sojourn.
struct LittleCheck {
    std::string cls;
    double time_average_count = 0.0;
    double throughput_times_delay = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<MetricCheck> checks;
    std::vector<LittleCheck> little;
    bool comparison_only = false;  // NonPreemptivePriority has no exact analytic twin
    bool all_pass = false;
};

// Compares the six analytic metrics against the simulation at the 3-sigma
// level and runs the Little's-law consistency check. The pairing must be
// (Literal, IndependentClassService) or (Strict, PreemptiveResume);
// NonPreemptivePriority is accepted with either mode but the report is marked
// comparison-only. Any other pairing throws ConfigError, as does a simulation
// without standard errors (fewer than 2 replications).
ValidationReport validate(const ClassMetrics& analytic, const SimMetrics& sim,
                          GeneratorMode mode, Discipline discipline);

// SplitMix64 step; advances state and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace tpq
