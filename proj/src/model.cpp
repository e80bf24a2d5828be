#include "tpq/model.hpp"

namespace tpq {

void TrafficParams::validate() const {
    if (!(mu_rt > 0.0)) throw ConfigError("mu_rt must be > 0");
    if (!(mu_nrt > 0.0)) throw ConfigError("mu_nrt must be > 0");
    if (!(lambda_rt >= 0.0)) throw ConfigError("lambda_rt must be >= 0");
    if (!(lambda_nrt >= 0.0)) throw ConfigError("lambda_nrt must be >= 0");
}

void BufferConfig::validate() const {
    if (r_threshold < 1) throw ConfigError("r_threshold must be >= 1");
    if (n_capacity < 1) throw ConfigError("n_capacity must be >= 1");
}

StateSpace::StateSpace(BufferConfig config) : config_(config) {
    config_.validate();
    size_ = static_cast<std::size_t>(config_.r_threshold + 1) *
            static_cast<std::size_t>(config_.n_capacity + 1);
}

std::size_t StateSpace::index_of(State s) const {
    if (s.rt < 0 || s.rt > config_.r_threshold || s.nrt < 0 ||
        s.nrt > config_.n_capacity) {
        throw ConfigError("state (" + std::to_string(s.rt) + "," +
                          std::to_string(s.nrt) + ") outside the lattice");
    }
    return static_cast<std::size_t>(s.rt) *
               static_cast<std::size_t>(config_.n_capacity + 1) +
           static_cast<std::size_t>(s.nrt);
}

State StateSpace::state_at(std::size_t index) const {
    if (index >= size_) throw ConfigError("state index out of range");
    const auto cols = static_cast<std::size_t>(config_.n_capacity + 1);
    return State{static_cast<int>(index / cols), static_cast<int>(index % cols)};
}

std::vector<State> StateSpace::states() const {
    std::vector<State> out;
    out.reserve(size_);
    for (std::size_t k = 0; k < size_; ++k) out.push_back(state_at(k));
    return out;
}

std::string to_string(GeneratorMode mode) {
    return mode == GeneratorMode::Literal ? "literal" : "strict";
}

GeneratorMode parse_mode(const std::string& text) {
    if (text == "literal") return GeneratorMode::Literal;
    if (text == "strict") return GeneratorMode::Strict;
    throw ConfigError("unknown mode '" + text + "' (expected literal|strict)");
}

StateSpace build_state_space(BufferConfig config) { return StateSpace(config); }

Generator build_generator(const TrafficParams& params, BufferConfig config,
                          GeneratorMode mode) {
    params.validate();
    StateSpace space(config);
    const int r_cap = config.r_threshold;
    const int n_cap = config.n_capacity;

    SquareMatrix rates(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
        const State s = space.state_at(k);
        double out = 0.0;
        auto put = [&](State to, double rate) {
            rates(k, space.index_of(to)) += rate;
            out += rate;
        };
        if (s.rt < r_cap) put({s.rt + 1, s.nrt}, params.lambda_rt);
        if (s.nrt < n_cap) put({s.rt, s.nrt + 1}, params.lambda_nrt);
        if (s.rt > 0) put({s.rt - 1, s.nrt}, params.mu_rt);
        if (s.nrt > 0 && (mode == GeneratorMode::Literal || s.rt == 0))
            put({s.rt, s.nrt - 1}, params.mu_nrt);
        rates(k, k) = -out;
    }
    return Generator{space, mode, std::move(rates)};
}

}  // namespace tpq
