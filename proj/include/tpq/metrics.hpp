#pragma once

// Per-class QoS measures read off a steady-state distribution: mean counts,
// loss probabilities, and mean sojourn times via Little's law.

#include <optional>
#include <utility>

#include "tpq/solver.hpp"

namespace tpq {

struct ClassMetrics {
    double n_rt = 0.0;   // mean RT customers in system
    double n_nrt = 0.0;  // mean NRT customers in system
    double l_rt = 0.0;   // RT loss probability (mass on the rt == R edge)
    double l_nrt = 0.0;  // NRT loss probability (mass on the nrt == N edge)
    // Mean sojourn times; absent when the class has no admitted throughput
    // (lambda * (1 - L) == 0), which is an outcome, not an error.
    std::optional<double> d_rt;
    std::optional<double> d_nrt;
};

// (mean RT count, mean NRT count)
std::pair<double, double> mean_counts(const SteadyState& ss);

// (RT loss probability, NRT loss probability): total mass on the full-partition
// edge of each class.
std::pair<double, double> loss_probabilities(const SteadyState& ss);

// Little's law per class: D = meanCount / (lambda * (1 - L)). Absent when the
// denominator is zero.
std::pair<std::optional<double>, std::optional<double>> mean_delays(
    const SteadyState& ss, const TrafficParams& params);

ClassMetrics compute_metrics(const SteadyState& ss, const TrafficParams& params);

}  // namespace tpq
