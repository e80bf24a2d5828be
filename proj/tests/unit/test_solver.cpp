#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tpq/error.hpp"
#include "tpq/solver.hpp"

using tpq::build_generator;
using tpq::Generator;
using tpq::GeneratorMode;
using tpq::solve_steady_state;
using tpq::SteadyState;
using tpq::TrafficParams;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace

TEST_CASE("golden 2x2 lattice") {
    // lambda = mu/2 for both classes makes each marginal a two-point chain
    // with P(1)/P(0) = 1/2, so the product law is (4/9, 2/9, 2/9, 1/9).
    const Generator gen =
        build_generator({1.0, 1.0, 2.0, 2.0}, {1, 1}, GeneratorMode::Literal);
    const SteadyState ss = solve_steady_state(gen);
    CHECK(ss.prob_at(0, 0) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(ss.prob_at(0, 1) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(ss.prob_at(1, 0) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(ss.prob_at(1, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("matches dense elimination oracle on random irreducible chains") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> cap(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const TrafficParams params{
            oracle::log_uniform(rng, 0.05, 40.0), oracle::log_uniform(rng, 0.05, 40.0),
            oracle::log_uniform(rng, 0.05, 40.0), oracle::log_uniform(rng, 0.05, 40.0)};
        const tpq::BufferConfig cfg{cap(rng), cap(rng)};
        const GeneratorMode mode =
            trial % 2 == 0 ? GeneratorMode::Literal : GeneratorMode::Strict;
        const Generator gen = build_generator(params, cfg, mode);
        const SteadyState ss = solve_steady_state(gen);
        CHECK(max_abs_diff(ss.prob, oracle::dense_stationary(gen)) <= 1e-12);
    }
}

TEST_CASE("Literal mode follows the two-queue product form") {
    const TrafficParams params{3.0, 8.0, 5.0, 6.0};
    const tpq::BufferConfig cfg{4, 6};
    const SteadyState ss =
        solve_steady_state(build_generator(params, cfg, GeneratorMode::Literal));
    CHECK(max_abs_diff(ss.prob, oracle::literal_product_form(params, cfg)) <= 1e-13);
}

TEST_CASE("balanced rates give the uniform distribution") {
    // lambda == mu in Literal mode: every marginal weight is 1.
    const Generator gen =
        build_generator({5.0, 5.0, 5.0, 5.0}, {3, 4}, GeneratorMode::Literal);
    const SteadyState ss = solve_steady_state(gen);
    for (double p : ss.prob) CHECK(p == doctest::Approx(1.0 / 20.0).epsilon(1e-12));
}

TEST_CASE("zero RT arrivals reduce to a truncated geometric in the NRT count") {
    const TrafficParams params{0.0, 5.0, 20.0, 10.0};
    const Generator gen = build_generator(params, {6, 8}, GeneratorMode::Strict);
    const SteadyState ss = solve_steady_state(gen);
    const std::vector<double> marginal = oracle::mm1k_distribution(5.0, 10.0, 8);
    for (int j = 0; j <= 8; ++j)
        CHECK(std::abs(ss.prob_at(0, j) - marginal[static_cast<std::size_t>(j)]) <=
              1e-14);
    // Unreachable states carry exactly zero mass.
    for (int i = 1; i <= 6; ++i)
        for (int j = 0; j <= 8; ++j) CHECK(ss.prob_at(i, j) == 0.0);
}

TEST_CASE("solution is a strictly positive distribution for positive rates") {
    const Generator gen =
        build_generator({1e-3, 2e3, 7.0, 1e-2}, {5, 3}, GeneratorMode::Strict);
    const SteadyState ss = solve_steady_state(gen);
    double sum = 0.0;
    for (double p : ss.prob) {
        CHECK(p > 0.0);
        sum += p;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(ss.residual <= tpq::kDefaultResidualTol);
}

TEST_CASE("extreme rate ratios stay accurate against the product form") {
    const TrafficParams params{1e-6, 1e6, 1.0, 1e-3};
    const tpq::BufferConfig cfg{3, 3};
    const SteadyState ss =
        solve_steady_state(build_generator(params, cfg, GeneratorMode::Literal));
    const std::vector<double> expect = oracle::literal_product_form(params, cfg);
    for (std::size_t k = 0; k < expect.size(); ++k) {
        if (expect[k] > 1e-280)
            CHECK(ss.prob[k] == doctest::Approx(expect[k]).epsilon(1e-10));
    }
}

TEST_CASE("repeat solves are bit-identical") {
    const Generator gen =
        build_generator({12.0, 6.0, 20.0, 10.0}, {8, 12}, GeneratorMode::Strict);
    const SteadyState a = solve_steady_state(gen);
    const SteadyState b = solve_steady_state(gen);
    REQUIRE(a.prob.size() == b.prob.size());
    for (std::size_t k = 0; k < a.prob.size(); ++k) CHECK(a.prob[k] == b.prob[k]);
    CHECK(a.residual == b.residual);
}

TEST_CASE("verify_residual reports the solved residual and grows under perturbation") {
    const Generator gen =
        build_generator({12.0, 6.0, 20.0, 10.0}, {4, 5}, GeneratorMode::Literal);
    SteadyState ss = solve_steady_state(gen);
    const double base = tpq::verify_residual(gen, ss);
    CHECK(base <= tpq::kDefaultResidualTol);
    CHECK(base == doctest::Approx(ss.residual).epsilon(1e-12));

    ss.prob[3] += 1e-3;
    CHECK(tpq::verify_residual(gen, ss) > base);
}

TEST_CASE("verify_residual rejects mismatched dimensions") {
    const Generator small =
        build_generator({1.0, 1.0, 2.0, 2.0}, {1, 1}, GeneratorMode::Literal);
    const Generator big =
        build_generator({1.0, 1.0, 2.0, 2.0}, {2, 2}, GeneratorMode::Literal);
    const SteadyState ss = solve_steady_state(small);
    CHECK_THROWS_AS((void)tpq::verify_residual(big, ss), tpq::ConfigError);
}
