#pragma once

// Weighted Grade of Service: a scalar cost over the per-class loss and delay
// metrics, and the sweep machinery that locates the cost-minimizing partition
// threshold R at a fixed total capacity T.

#include <cstddef>
#include <optional>
#include <vector>

#include "tpq/metrics.hpp"

namespace tpq {

// Penalties per lost customer and per unit of mean delay, per class.
struct CostWeights {
    double cl_rt = 0.0;
    double cl_nrt = 0.0;
    double cd_rt = 0.0;
    double cd_nrt = 0.0;

    void validate() const;  // all weights >= 0
};

// gamma = w_rt * rt_term + w_nrt * nrt_term with w_c = lambda_c / (lambda_rt +
// lambda_nrt) and per-class term CL*L + (1-L)*CD*D. A class with zero arrival
// rate carries zero weight and its term is reported as zero.
struct WGoSResult {
    double gamma = 0.0;
    double rt_term = 0.0;
    double nrt_term = 0.0;
};

// Throws ConfigError when lambda_rt + lambda_nrt == 0, or when a class has
// positive arrivals but an undefined delay.
WGoSResult wgos_gamma(const ClassMetrics& metrics, const TrafficParams& params,
                      const CostWeights& costs);

struct SweepRow {
    int r_threshold = 0;
    int n_capacity = 0;
    ClassMetrics metrics;
    std::optional<WGoSResult> wgos;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ascending R
    int r_star = 0;              // smallest R attaining the minimal gamma
    GeneratorMode mode = GeneratorMode::Literal;
};

// Solves one configuration per requested R with N = total - R and collects
// the class metrics. Thresholds are sorted ascending and deduplicated; each
// must satisfy 1 <= R <= total - 1. Errors from an individual point are
// annotated with its R.
std::vector<SweepRow> sweep_metrics(const TrafficParams& params, int total,
                                    std::vector<int> r_values,
                                    GeneratorMode mode);

// Convenience form over the full interval [r_lo, r_hi].
std::vector<SweepRow> sweep_metrics(const TrafficParams& params, int total,
                                    int r_lo, int r_hi, GeneratorMode mode);

// sweep_metrics plus the WGoS column and its argmin. Ties break toward the
// smallest R.
SweepResult sweep_threshold(const TrafficParams& params, int total,
                            std::vector<int> r_values, const CostWeights& costs,
                            GeneratorMode mode);
SweepResult sweep_threshold(const TrafficParams& params, int total, int r_lo,
                            int r_hi, const CostWeights& costs,
                            GeneratorMode mode);

// Index of the row with minimal gamma, first occurrence on ties. Rows must be
// nonempty and carry gamma values.
std::size_t argmin_gamma(const std::vector<SweepRow>& rows);

}  // namespace tpq
