#include "tpq/wgos.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace tpq {

void CostWeights::validate() const {
    if (cl_rt < 0.0 || cl_nrt < 0.0 || cd_rt < 0.0 || cd_nrt < 0.0)
        throw ConfigError("cost weights must be >= 0");
}

WGoSResult wgos_gamma(const ClassMetrics& metrics, const TrafficParams& params,
                      const CostWeights& costs) {
    params.validate();
    costs.validate();
    const double lambda_total = params.lambda_rt + params.lambda_nrt;
    if (lambda_total <= 0.0)
        throw ConfigError("WGoS undefined with no traffic (lambda_rt + lambda_nrt == 0)");

    WGoSResult out;
    if (params.lambda_rt > 0.0) {
        if (!metrics.d_rt)
            throw ConfigError("RT delay undefined but lambda_rt > 0; WGoS not evaluable");
        out.rt_term = costs.cl_rt * metrics.l_rt +
                      (1.0 - metrics.l_rt) * costs.cd_rt * *metrics.d_rt;
    }
    if (params.lambda_nrt > 0.0) {
        if (!metrics.d_nrt)
            throw ConfigError("NRT delay undefined but lambda_nrt > 0; WGoS not evaluable");
        out.nrt_term = costs.cl_nrt * metrics.l_nrt +
                       (1.0 - metrics.l_nrt) * costs.cd_nrt * *metrics.d_nrt;
    }
    out.gamma = (params.lambda_rt / lambda_total) * out.rt_term +
                (params.lambda_nrt / lambda_total) * out.nrt_term;
    return out;
}

std::vector<SweepRow> sweep_metrics(const TrafficParams& params, int total,
                                    std::vector<int> r_values,
                                    GeneratorMode mode) {
    params.validate();
    if (r_values.empty()) throw ConfigError("sweep requires at least one threshold value");
    std::sort(r_values.begin(), r_values.end());
    r_values.erase(std::unique(r_values.begin(), r_values.end()), r_values.end());
    for (int r : r_values) {
        if (r < 1 || r > total - 1)
            throw ConfigError("threshold R=" + std::to_string(r) +
                              " must satisfy 1 <= R <= T-1 with T=" + std::to_string(total));
    }

    std::vector<SweepRow> rows;
    rows.reserve(r_values.size());
    for (int r : r_values) {
        try {
            const BufferConfig cfg{r, total - r};
            const Generator gen = build_generator(params, cfg, mode);
            const SteadyState ss = solve_steady_state(gen);
            rows.push_back(SweepRow{r, cfg.n_capacity,
                                    compute_metrics(ss, params), std::nullopt});
        } catch (const NumericalError& e) {
            throw NumericalError("R=" + std::to_string(r) + ": " + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError("R=" + std::to_string(r) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<SweepRow> sweep_metrics(const TrafficParams& params, int total,
                                    int r_lo, int r_hi, GeneratorMode mode) {
    if (r_lo > r_hi)
        throw ConfigError("threshold range [" + std::to_string(r_lo) + "," +
                          std::to_string(r_hi) + "] is empty");
    std::vector<int> r_values;
    r_values.reserve(static_cast<std::size_t>(r_hi - r_lo + 1));
    for (int r = r_lo; r <= r_hi; ++r) r_values.push_back(r);
    return sweep_metrics(params, total, std::move(r_values), mode);
}

SweepResult sweep_threshold(const TrafficParams& params, int total,
                            std::vector<int> r_values, const CostWeights& costs,
                            GeneratorMode mode) {
    SweepResult result;
    result.mode = mode;
    result.rows = sweep_metrics(params, total, std::move(r_values), mode);
    for (SweepRow& row : result.rows) {
        try {
            row.wgos = wgos_gamma(row.metrics, params, costs);
        } catch (const ConfigError& e) {
            throw ConfigError("R=" + std::to_string(row.r_threshold) + ": " + e.what());
        }
    }
    result.r_star = result.rows[argmin_gamma(result.rows)].r_threshold;
    return result;
}

SweepResult sweep_threshold(const TrafficParams& params, int total, int r_lo,
                            int r_hi, const CostWeights& costs,
                            GeneratorMode mode) {
    if (r_lo > r_hi)
        throw ConfigError("threshold range [" + std::to_string(r_lo) + "," +
                          std::to_string(r_hi) + "] is empty");
    std::vector<int> r_values;
    r_values.reserve(static_cast<std::size_t>(r_hi - r_lo + 1));
    for (int r = r_lo; r <= r_hi; ++r) r_values.push_back(r);
    return sweep_threshold(params, total, std::move(r_values), costs, mode);
}

std::size_t argmin_gamma(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw ConfigError("argmin over an empty sweep");
    std::size_t best = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[k].wgos)
            throw ConfigError("argmin over rows without gamma values");
        if (rows[k].wgos->gamma < rows[best].wgos->gamma) best = k;
    }
    return best;
}

}  // namespace tpq
