#include <string>
#include <vector>

#include "doctest.h"
#include "tpq/config.hpp"
#include "tpq/error.hpp"
#include "tpq/report.hpp"

using tpq::ExperimentSpec;
using tpq::parse_experiment;

TEST_CASE("full config round-trip") {
    const ExperimentSpec spec = parse_experiment(
        "# traffic\n"
        "lambda_rt = 12\n"
        "lambda_nrt = 6  # arrivals per unit time\n"
        "mu_rt = 20\n"
        "mu_nrt = 10\n"
        "\n"
        "r_threshold = 8\n"
        "n_capacity = 12\n"
        "total = 20\n"
        "r_values = 2:4, 7, 9:10\n"
        "cl_rt = 300\n"
        "cl_nrt = 50\n"
        "cd_rt = 1000\n"
        "cd_nrt = 1\n"
        "mode = strict\n"
        "discipline = preemptive\n"
        "seed = 42\n"
        "replications = 7\n"
        "horizon = 2500.5\n"
        "warmup = 100\n");
    CHECK(spec.params.lambda_rt == 12.0);
    CHECK(spec.params.lambda_nrt == 6.0);
    CHECK(spec.params.mu_rt == 20.0);
    CHECK(spec.params.mu_nrt == 10.0);
    CHECK(spec.r_threshold == 8);
    CHECK(spec.n_capacity == 12);
    CHECK(spec.total == 20);
    CHECK((spec.r_values == std::vector<int>{2, 3, 4, 7, 9, 10}));
    REQUIRE(spec.costs.has_value());
    CHECK(spec.costs->cl_rt == 300.0);
    CHECK(spec.costs->cd_nrt == 1.0);
    CHECK(spec.mode == tpq::GeneratorMode::Strict);
    CHECK(spec.discipline == tpq::Discipline::PreemptiveResume);
    CHECK(spec.seed == 42);
    CHECK(spec.replications == 7);
    CHECK(spec.horizon == 2500.5);
    CHECK(spec.warmup == 100.0);
}

TEST_CASE("omitted keys stay unset") {
    const ExperimentSpec spec = parse_experiment("lambda_rt = 1\nlambda_nrt = 2\n");
    CHECK_FALSE(spec.r_threshold.has_value());
    CHECK_FALSE(spec.total.has_value());
    CHECK(spec.r_values.empty());
    CHECK_FALSE(spec.costs.has_value());
    CHECK_FALSE(spec.discipline.has_value());
    CHECK_FALSE(spec.seed.has_value());
    CHECK(spec.mode == tpq::GeneratorMode::Literal);  // documented default
}

TEST_CASE("parse errors carry the line number and the offending token") {
    try {
        (void)parse_experiment("lambda_rt = 1\nbogus_key = 3\n");
        FAIL("expected ConfigError");
    } catch (const tpq::ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_experiment("lambda_rt = fast\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("r_threshold = 2.5\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("seed = -1\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("lambda_rt\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("lambda_rt =\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("r_values = 5:2\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("mode = fancy\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("discipline = fifo\n"), tpq::ConfigError);
}

TEST_CASE("cost weights are all-or-nothing") {
    CHECK_THROWS_AS((void)parse_experiment("cl_rt = 1\ncl_nrt = 2\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("cd_nrt = 1\n"), tpq::ConfigError);
    CHECK_THROWS_AS(
        (void)parse_experiment("cl_rt = -1\ncl_nrt = 0\ncd_rt = 0\ncd_nrt = 0\n"),
        tpq::ConfigError);
}

TEST_CASE("vary requires a known parameter and values") {
    const ExperimentSpec spec = parse_experiment(
        "vary = lambda_rt\nvary_values = 2, 12, 18\n");
    CHECK(spec.vary_param == "lambda_rt");
    CHECK((spec.vary_values == std::vector<double>{2.0, 12.0, 18.0}));
    CHECK_THROWS_AS((void)parse_experiment("vary = mu_rt\nvary_values = 1\n"),
                    tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("vary = lambda_rt\n"), tpq::ConfigError);
    CHECK_THROWS_AS((void)parse_experiment("vary_values = 1, 2\n"), tpq::ConfigError);
}

TEST_CASE("missing config file raises an I/O error") {
    CHECK_THROWS_AS((void)tpq::load_experiment("/nonexistent/path/exp.conf"),
                    tpq::IoError);
}

TEST_CASE("doubles render at full precision with no locale surprises") {
    CHECK(tpq::format_double(0.5) == "0.5");
    CHECK(tpq::format_double(1.0) == "1");
    CHECK(tpq::format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(tpq::format_double(4.885197850512946e-04) == "0.0004885197850512946");
    CHECK(tpq::csv_field(std::nullopt).empty());
    CHECK(tpq::csv_field(2.5) == "2.5");
}

TEST_CASE("CSV headers are frozen") {
    CHECK(tpq::solve_csv_header() == "R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt,gamma");
    CHECK(tpq::sweep_csv_header(false) == "mode,R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt");
    CHECK(tpq::sweep_csv_header(true) ==
          "mode,R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt,gamma");
}
