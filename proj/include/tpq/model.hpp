#pragma once

// Domain types for the two-class threshold-partitioned buffer and the
// construction of its continuous-time Markov chain rate matrix.
//
// The buffer admits at most R real-time (RT) and N non-real-time (NRT)
// customers; the system state is the pair (rt, nrt) of per-class counts on
// the (R+1) x (N+1) lattice.

#include <cstddef>
#include <string>
#include <vector>

#include "tpq/error.hpp"

namespace tpq {

// Poisson arrival and exponential service rates per class (events per unit time).
struct TrafficParams {
    double lambda_rt = 0.0;
    double lambda_nrt = 0.0;
    double mu_rt = 1.0;
    double mu_nrt = 1.0;

    // Throws ConfigError unless mu_* > 0 and lambda_* >= 0.
    void validate() const;
};

// Buffer partition: space for r_threshold RT and n_capacity NRT customers.
struct BufferConfig {
    int r_threshold = 1;
    int n_capacity = 1;

    int total() const { return r_threshold + n_capacity; }

    // Throws ConfigError unless r_threshold >= 1 and n_capacity >= 1.
    void validate() const;
};

struct State {
    int rt = 0;   // RT customers in system, 0..R
    int nrt = 0;  // NRT customers in system, 0..N

    bool operator==(const State&) const = default;
};

// Row-major enumeration of the lattice: rt major, nrt minor, so
// (0,0),(0,1),...,(0,N),(1,0),... The ordering is part of the file-format
// contract; golden outputs depend on it.
class StateSpace {
public:
    explicit StateSpace(BufferConfig config);

    std::size_t size() const { return size_; }
    std::size_t index_of(State s) const;
    State state_at(std::size_t index) const;
    std::vector<State> states() const;
    const BufferConfig& config() const { return config_; }

private:
    BufferConfig config_;
    std::size_t size_;
};

// Service activation rules for the rate matrix.
//
//   Literal: each class is served at its own rate whenever present, so the
//            two counts evolve as independent birth-death chains.
//   Strict:  RT service excludes NRT service; NRT customers are served only
//            while no RT customer is in the system (single priority server
//            with preemptive-resume semantics).
//
// The two modes agree on every boundary row (rt == 0 or nrt == 0) and differ
// only in whether the NRT service rate stays active while RT work is present.
enum class GeneratorMode { Literal, Strict };

std::string to_string(GeneratorMode mode);
GeneratorMode parse_mode(const std::string& text);  // "literal" | "strict"

// Dense square matrix, row-major storage.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
    const std::vector<double>& data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

// CTMC transition-rate matrix over the buffer lattice. Off-diagonal entries
// are nonnegative rates between lattice neighbours; each diagonal entry is
// the negative sum of the rest of its row, so rows sum to zero.
struct Generator {
    StateSpace space;
    GeneratorMode mode;
    SquareMatrix rates;
};

// Enumerates all (r_threshold+1)(n_capacity+1) states. Throws ConfigError on
// an invalid config.
StateSpace build_state_space(BufferConfig config);

// Places the arrival and service rates subject to the boundary guards (no
// arrival out of a full partition, no service out of an empty one) and the
// mode's service-activation rule.
Generator build_generator(const TrafficParams& params, BufferConfig config,
                          GeneratorMode mode);

}  // namespace tpq
