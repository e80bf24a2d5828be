#include "tpq/solver.hpp"

#include <cmath>
#include <cstddef>
#include <queue>
#include <string>

namespace tpq {

namespace {

// States reachable from (0,0) along positive off-diagonal rates, in ascending
// index order. This set is closed and, because service rates are positive,
// every member can return to (0,0), so the restricted chain is irreducible.
std::vector<std::size_t> reachable_from_origin(const Generator& gen) {
    const std::size_t n = gen.space.size();
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    seen[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
        const std::size_t k = frontier.front();
        frontier.pop();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k && gen.rates(k, j) > 0.0 && !seen[j]) {
                seen[j] = 1;
                frontier.push(j);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k)
        if (seen[k]) out.push_back(k);
    return out;
}

// GTH elimination on the off-diagonal rates of an irreducible generator.
// Returns the normalized stationary vector.
std::vector<double> gth_stationary(SquareMatrix q) {
    const std::size_t n = q.size();
    std::vector<double> elim_outflow(n, 0.0);
    for (std::size_t k = n - 1; k > 0; --k) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += q(k, j);
        elim_outflow[k] = s;
        for (std::size_t i = 0; i < k; ++i) {
            const double f = q(i, k) / s;
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) q(i, j) += f * q(k, j);
        }
    }
    std::vector<double> pi(n, 0.0);
    pi[0] = 1.0;
    double total = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        double inflow = 0.0;
        for (std::size_t i = 0; i < k; ++i) inflow += pi[i] * q(i, k);
        pi[k] = inflow / elim_outflow[k];
        total += pi[k];
    }
    for (double& p : pi) p /= total;
    return pi;
}

}  // namespace

SteadyState solve_steady_state(const Generator& gen, double residual_tol) {
    const std::vector<std::size_t> live = reachable_from_origin(gen);

    std::vector<double> prob(gen.space.size(), 0.0);
    if (live.size() == 1) {
        prob[live[0]] = 1.0;
    } else {
        SquareMatrix sub(live.size());
        for (std::size_t a = 0; a < live.size(); ++a)
            for (std::size_t b = 0; b < live.size(); ++b)
                sub(a, b) = gen.rates(live[a], live[b]);
        const std::vector<double> pi = gth_stationary(std::move(sub));
        for (std::size_t a = 0; a < live.size(); ++a) prob[live[a]] = pi[a];
    }

    // Clear denormal dust so reports and golden files stay clean.
    for (double& p : prob)
        if (p < 1e-300) p = 0.0;

    SteadyState ss{gen.space, std::move(prob), 0.0};
    ss.residual = verify_residual(gen, ss);
    if (!(ss.residual <= residual_tol)) {
        throw NumericalError("steady-state residual " +
                             std::to_string(ss.residual) +
                             " exceeds tolerance " +
                             std::to_string(residual_tol));
    }
    return ss;
}

double verify_residual(const Generator& gen, const SteadyState& ss) {
    const std::size_t n = gen.space.size();
    if (ss.prob.size() != n || !(ss.space.config().r_threshold ==
                                     gen.space.config().r_threshold &&
                                 ss.space.config().n_capacity ==
                                     gen.space.config().n_capacity)) {
        throw ConfigError("steady state and generator have different state spaces");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += ss.prob[i] * gen.rates(i, j);
        if (std::abs(v) > worst) worst = std::abs(v);
    }
    return worst;
}

}  // namespace tpq
