#include "tpq/metrics.hpp"

#include <tuple>

namespace tpq {

std::pair<double, double> mean_counts(const SteadyState& ss) {
    double n_rt = 0.0;
    double n_nrt = 0.0;
    for (std::size_t k = 0; k < ss.space.size(); ++k) {
        const State s = ss.space.state_at(k);
        n_rt += s.rt * ss.prob[k];
        n_nrt += s.nrt * ss.prob[k];
    }
    return {n_rt, n_nrt};
}

std::pair<double, double> loss_probabilities(const SteadyState& ss) {
    const BufferConfig& cfg = ss.space.config();
    double l_rt = 0.0;
    double l_nrt = 0.0;
    for (int j = 0; j <= cfg.n_capacity; ++j)
        l_rt += ss.prob_at(cfg.r_threshold, j);
    for (int i = 0; i <= cfg.r_threshold; ++i)
        l_nrt += ss.prob_at(i, cfg.n_capacity);
    return {l_rt, l_nrt};
}

std::pair<std::optional<double>, std::optional<double>> mean_delays(
    const SteadyState& ss, const TrafficParams& params) {
    const auto [n_rt, n_nrt] = mean_counts(ss);
    const auto [l_rt, l_nrt] = loss_probabilities(ss);
    std::optional<double> d_rt;
    std::optional<double> d_nrt;
    if (params.lambda_rt * (1.0 - l_rt) > 0.0)
        d_rt = n_rt / (params.lambda_rt * (1.0 - l_rt));
    if (params.lambda_nrt * (1.0 - l_nrt) > 0.0)
        d_nrt = n_nrt / (params.lambda_nrt * (1.0 - l_nrt));
    return {d_rt, d_nrt};
}

ClassMetrics compute_metrics(const SteadyState& ss, const TrafficParams& params) {
    ClassMetrics m;
    std::tie(m.n_rt, m.n_nrt) = mean_counts(ss);
    std::tie(m.l_rt, m.l_nrt) = loss_probabilities(ss);
    std::tie(m.d_rt, m.d_nrt) = mean_delays(ss, params);
    return m;
}

}  // namespace tpq
