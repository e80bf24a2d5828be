#pragma once

// Steady-state solver for the buffer CTMC: the stationary vector satisfying
// P*G = 0 with probabilities summing to one.

#include <vector>

#include "tpq/model.hpp"

namespace tpq {

inline constexpr double kDefaultResidualTol = 1e-10;

// Stationary distribution over a state space, indexed by the space ordering.
struct SteadyState {
    StateSpace space;
    std::vector<double> prob;
    double residual = 0.0;  // max-norm of P*G achieved by the solve

    double prob_at(State s) const { return prob[space.index_of(s)]; }
    double prob_at(int rt, int nrt) const { return prob_at(State{rt, nrt}); }
};

// Solves for the unique stationary distribution on the communicating class
// reachable from the empty state (0,0); states outside that class get
// probability exactly zero.
//
// Uses Grassmann-Taksar-Heyman state elimination, which involves no
// subtractions and stays accurate at extreme rate ratios. Throws
// NumericalError if the achieved residual exceeds residual_tol.
SteadyState solve_steady_state(const Generator& gen,
                               double residual_tol = kDefaultResidualTol);

// Max over states of |(P*G)(state)|. Throws ConfigError when the state
// spaces disagree.
double verify_residual(const Generator& gen, const SteadyState& ss);

}  // namespace tpq
