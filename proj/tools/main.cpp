// tpq: command-line driver for the two-class threshold-partitioned buffer.
//
// Subcommands: solve, sweep, optimize, simulate, validate, reproduce.
// Exit codes: 0 success, 1 usage error, 2 bad configuration, 3 numerical
// failure, 4 I/O failure. No environment variables are read.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tpq/config.hpp"
#include "tpq/error.hpp"
#include "tpq/metrics.hpp"
#include "tpq/model.hpp"
#include "tpq/report.hpp"
#include "tpq/sim.hpp"
#include "tpq/solver.hpp"
#include "tpq/wgos.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
    std::string config_path;
    std::string mode_str;
    std::string discipline_str;
    std::string out_dir;
    std::uint64_t seed = 0;
    int replications = 0;
    double horizon = 0.0;
    double warmup = 0.0;
    std::string figure;
};

// Option handles so overrides apply only when a flag was actually passed.
struct SubFlags {
    CLI::Option* mode = nullptr;
    CLI::Option* discipline = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* replications = nullptr;
    CLI::Option* horizon = nullptr;
    CLI::Option* warmup = nullptr;
};

void add_config_flag(CLI::App* sub, CliOptions& o) {
    sub->add_option("--config", o.config_path, "experiment file of key = value lines")
        ->required();
}

void add_out_flag(CLI::App* sub, CliOptions& o, const std::string& what) {
    sub->add_option("--out", o.out_dir, what);
}

CLI::Option* add_mode_flag(CLI::App* sub, CliOptions& o) {
    return sub->add_option("--mode", o.mode_str, "generator mode")
        ->check(CLI::IsMember({"literal", "strict"}));
}

CLI::Option* add_discipline_flag(CLI::App* sub, CliOptions& o) {
    return sub->add_option("--discipline", o.discipline_str, "service discipline")
        ->check(CLI::IsMember({"nonpreemptive", "preemptive", "independent"}));
}

void add_sim_flags(CLI::App* sub, CliOptions& o, SubFlags& f) {
    f.seed = sub->add_option("--seed", o.seed, "master seed (default 1)");
    f.replications = sub->add_option("--replications", o.replications,
                                     "independent replications (default 20)");
    f.horizon = sub->add_option("--horizon", o.horizon,
                                "measured simulated time per replication");
    f.warmup = sub->add_option("--warmup", o.warmup,
                               "simulated time discarded before measuring");
}

tpq::ExperimentSpec load_with_overrides(const CliOptions& o, const SubFlags& f) {
    tpq::ExperimentSpec spec = tpq::load_experiment(o.config_path);
    if (f.mode != nullptr && f.mode->count() > 0)
        spec.mode = tpq::parse_mode(o.mode_str);
    if (f.discipline != nullptr && f.discipline->count() > 0)
        spec.discipline = tpq::parse_discipline(o.discipline_str);
    if (f.seed != nullptr && f.seed->count() > 0) spec.seed = o.seed;
    if (f.replications != nullptr && f.replications->count() > 0)
        spec.replications = o.replications;
    if (f.horizon != nullptr && f.horizon->count() > 0) spec.horizon = o.horizon;
    if (f.warmup != nullptr && f.warmup->count() > 0) spec.warmup = o.warmup;
    return spec;
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw tpq::IoError("cannot create directory " +
                               path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tpq::IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw tpq::IoError("write failed: " + path.string());
}

void reject_vary(const tpq::ExperimentSpec& spec, const std::string& command) {
    if (spec.vary_param)
        throw tpq::ConfigError("vary is only supported by sweep and optimize, not " +
                               command);
}

tpq::BufferConfig resolve_buffer(const tpq::ExperimentSpec& spec) {
    if (!spec.r_threshold)
        throw tpq::ConfigError("config must set r_threshold for this command");
    const int r = *spec.r_threshold;
    std::optional<int> n = spec.n_capacity;
    if (spec.total && spec.n_capacity && *spec.total != r + *spec.n_capacity)
        throw tpq::ConfigError("total must equal r_threshold + n_capacity (" +
                               std::to_string(*spec.total) + " != " + std::to_string(r) +
                               " + " + std::to_string(*spec.n_capacity) + ")");
    if (!n && spec.total) n = *spec.total - r;
    if (!n) throw tpq::ConfigError("config must set n_capacity or total");
    tpq::BufferConfig cfg{r, *n};
    cfg.validate();
    return cfg;
}

int resolve_total(const tpq::ExperimentSpec& spec) {
    if (spec.total) {
        if (spec.r_threshold && spec.n_capacity &&
            *spec.total != *spec.r_threshold + *spec.n_capacity)
            throw tpq::ConfigError("total must equal r_threshold + n_capacity");
        return *spec.total;
    }
    if (spec.r_threshold && spec.n_capacity) return *spec.r_threshold + *spec.n_capacity;
    throw tpq::ConfigError(
        "sweep requires total (or r_threshold + n_capacity) in the config");
}

std::vector<int> resolve_r_values(const tpq::ExperimentSpec& spec, int total) {
    if (!spec.r_values.empty()) return spec.r_values;
    std::vector<int> all;
    for (int r = 1; r <= total - 1; ++r) all.push_back(r);
    return all;
}

// (name, params) per curve when vary is present; a single unnamed entry
// otherwise.
std::vector<std::pair<std::string, tpq::TrafficParams>> expand_vary(
    const tpq::ExperimentSpec& spec) {
    std::vector<std::pair<std::string, tpq::TrafficParams>> out;
    if (!spec.vary_param) {
        out.emplace_back("", spec.params);
        return out;
    }
    if (spec.vary_values.empty())
        throw tpq::ConfigError("vary requires a nonempty vary_values list");
    for (double v : spec.vary_values) {
        tpq::TrafficParams p = spec.params;
        if (*spec.vary_param == "lambda_rt")
            p.lambda_rt = v;
        else if (*spec.vary_param == "lambda_nrt")
            p.lambda_nrt = v;
        else
            throw tpq::ConfigError("vary must name lambda_rt or lambda_nrt");
        out.emplace_back(*spec.vary_param + "_" + tpq::format_double(v), p);
    }
    return out;
}

std::string sweep_table_csv(const tpq::TrafficParams& params, int total,
                            const std::vector<int>& r_values,
                            const std::optional<tpq::CostWeights>& costs,
                            tpq::GeneratorMode mode, std::optional<int>* r_star) {
    std::string csv = tpq::sweep_csv_header(costs.has_value()) + "\n";
    if (costs) {
        const tpq::SweepResult res =
            tpq::sweep_threshold(params, total, r_values, *costs, mode);
        for (const tpq::SweepRow& row : res.rows)
            csv += tpq::sweep_csv_row(mode, row) + "\n";
        if (r_star != nullptr) *r_star = res.r_star;
    } else {
        for (const tpq::SweepRow& row : tpq::sweep_metrics(params, total, r_values, mode))
            csv += tpq::sweep_csv_row(mode, row) + "\n";
        if (r_star != nullptr) r_star->reset();
    }
    return csv;
}

int cmd_solve(const tpq::ExperimentSpec& spec, const std::string& out_dir) {
    reject_vary(spec, "solve");
    spec.params.validate();
    const tpq::BufferConfig cfg = resolve_buffer(spec);
    const tpq::Generator gen = tpq::build_generator(spec.params, cfg, spec.mode);
    const tpq::SteadyState ss = tpq::solve_steady_state(gen);
    tpq::SweepRow row{cfg.r_threshold, cfg.n_capacity,
                      tpq::compute_metrics(ss, spec.params), std::nullopt};
    if (spec.costs) row.wgos = tpq::wgos_gamma(row.metrics, spec.params, *spec.costs);

    const std::string csv =
        tpq::solve_csv_header() + "\n" + tpq::solve_csv_row(row) + "\n";
    std::cout << csv;
    if (!out_dir.empty()) {
        const fs::path path = fs::path(out_dir) / "solve.csv";
        write_text_file(path, csv);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_sweep(const tpq::ExperimentSpec& spec, const std::string& out_dir) {
    spec.params.validate();
    const int total = resolve_total(spec);
    const std::vector<int> r_values = resolve_r_values(spec, total);
    const auto curves = expand_vary(spec);

    if (spec.vary_param) {
        if (out_dir.empty())
            throw tpq::ConfigError("sweep with vary requires --out for per-curve files");
        for (const auto& [name, params] : curves) {
            const std::string csv =
                sweep_table_csv(params, total, r_values, spec.costs, spec.mode, nullptr);
            const fs::path path = fs::path(out_dir) / ("sweep_" + name + ".csv");
            write_text_file(path, csv);
            std::cout << "wrote " << path.string() << "\n";
        }
        return 0;
    }

    const std::string csv =
        sweep_table_csv(spec.params, total, r_values, spec.costs, spec.mode, nullptr);
    std::cout << csv;
    if (!out_dir.empty()) {
        const fs::path path = fs::path(out_dir) / "sweep.csv";
        write_text_file(path, csv);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_optimize(const tpq::ExperimentSpec& spec, const std::string& out_dir) {
    spec.params.validate();
    if (!spec.costs)
        throw tpq::ConfigError(
            "optimize requires cost weights (cl_rt, cl_nrt, cd_rt, cd_nrt)");
    const int total = resolve_total(spec);
    const std::vector<int> r_values = resolve_r_values(spec, total);
    const auto curves = expand_vary(spec);

    if (spec.vary_param) {
        if (out_dir.empty())
            throw tpq::ConfigError(
                "optimize with vary requires --out for per-curve files");
        for (const auto& [name, params] : curves) {
            std::optional<int> r_star;
            std::string csv =
                sweep_table_csv(params, total, r_values, spec.costs, spec.mode, &r_star);
            csv += "# r_star = " + std::to_string(*r_star) + "\n";
            const fs::path path = fs::path(out_dir) / ("optimize_" + name + ".csv");
            write_text_file(path, csv);
            std::cout << name << ": r_star = " << *r_star << "\n";
            std::cout << "wrote " << path.string() << "\n";
        }
        return 0;
    }

    std::optional<int> r_star;
    std::string csv =
        sweep_table_csv(spec.params, total, r_values, spec.costs, spec.mode, &r_star);
    csv += "# r_star = " + std::to_string(*r_star) + "\n";
    std::cout << csv;
    if (!out_dir.empty()) {
        const fs::path path = fs::path(out_dir) / "optimize.csv";
        write_text_file(path, csv);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

tpq::SimConfig build_sim_config(const tpq::ExperimentSpec& spec,
                                tpq::BufferConfig buffer, tpq::Discipline discipline) {
    tpq::SimConfig sim = tpq::default_sim_config(spec.params, buffer, discipline,
                                                 spec.seed.value_or(1));
    if (spec.horizon) sim.horizon = *spec.horizon;
    if (spec.warmup) sim.warmup = *spec.warmup;
    if (spec.replications) sim.replications = *spec.replications;
    sim.validate();
    return sim;
}

int cmd_simulate(const tpq::ExperimentSpec& spec, const std::string& out_dir) {
    reject_vary(spec, "simulate");
    spec.params.validate();
    const tpq::BufferConfig cfg = resolve_buffer(spec);
    const tpq::Discipline discipline =
        spec.discipline.value_or(tpq::Discipline::NonPreemptivePriority);
    const tpq::SimConfig sim_cfg = build_sim_config(spec, cfg, discipline);
    const tpq::SimMetrics sim = tpq::run_simulation(sim_cfg);

    const std::string csv =
        tpq::sim_csv_header() + "\n" + tpq::sim_csv_row(discipline, cfg, sim) + "\n";
    std::cout << csv;
    if (!out_dir.empty()) {
        const fs::path path = fs::path(out_dir) / "simulate.csv";
        write_text_file(path, csv);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

tpq::Discipline analytic_twin(tpq::GeneratorMode mode) {
    return mode == tpq::GeneratorMode::Literal
               ? tpq::Discipline::IndependentClassService
               : tpq::Discipline::PreemptiveResume;
}

std::string opt_str(const std::optional<double>& v) {
    return v ? tpq::format_double(*v) : "n/a";
}

int cmd_validate(const tpq::ExperimentSpec& spec, const std::string& out_dir) {
    reject_vary(spec, "validate");
    spec.params.validate();
    const tpq::BufferConfig cfg = resolve_buffer(spec);
    const tpq::Discipline discipline =
        spec.discipline.value_or(analytic_twin(spec.mode));

    const tpq::Generator gen = tpq::build_generator(spec.params, cfg, spec.mode);
    const tpq::SteadyState ss = tpq::solve_steady_state(gen);
    const tpq::ClassMetrics analytic = tpq::compute_metrics(ss, spec.params);

    const tpq::SimConfig sim_cfg = build_sim_config(spec, cfg, discipline);
    const tpq::SimMetrics sim = tpq::run_simulation(sim_cfg);
    const tpq::ValidationReport report =
        tpq::validate(analytic, sim, spec.mode, discipline);

    std::cout << "pairing: " << tpq::to_string(spec.mode) << " analytics vs "
              << tpq::to_string(discipline) << " simulation";
    if (report.comparison_only)
        std::cout << " (comparison-only; no exact analytic twin)";
    std::cout << "\n";
    std::cout << "R=" << cfg.r_threshold << " N=" << cfg.n_capacity
              << " replications=" << sim_cfg.replications
              << " horizon=" << tpq::format_double(sim_cfg.horizon)
              << " warmup=" << tpq::format_double(sim_cfg.warmup)
              << " seed=" << sim_cfg.master_seed << "\n";
    for (const tpq::MetricCheck& c : report.checks) {
        std::cout << c.name << ": analytic=" << tpq::format_double(c.analytic)
                  << " sim=" << opt_str(c.simulated) << " se=" << opt_str(c.std_error)
                  << " z=" << opt_str(c.z) << " " << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    for (const tpq::LittleCheck& c : report.little) {
        std::cout << "little_" << c.cls
                  << ": time_avg=" << tpq::format_double(c.time_average_count)
                  << " throughput*delay=" << tpq::format_double(c.throughput_times_delay)
                  << " rel_err=" << tpq::format_double(c.rel_err) << " "
                  << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "overall: "
              << (report.comparison_only ? "COMPARISON-ONLY"
                                         : (report.all_pass ? "PASS" : "FAIL"))
              << "\n";

    if (!out_dir.empty()) {
        const std::string csv = tpq::validation_csv_header() + "\n" +
                                tpq::validation_csv_row(spec.mode, cfg, analytic, report) +
                                "\n";
        const fs::path path = fs::path(out_dir) / "validate.csv";
        write_text_file(path, csv);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

// --- reproduction grids ------------------------------------------------------
//
// Scenario 1 holds lambda_nrt = 6, mu_rt = 20, mu_nrt = 10 and draws one curve
// per lambda_rt; scenario 2 holds lambda_rt = 12, mu_rt = 20, mu_nrt = 10 and
// draws one curve per lambda_nrt. Every curve sweeps R = 2..16 at T = 20 under
// both generator modes. The cost-curve figures use weights
// cl_rt=300, cl_nrt=50, cd_rt=1000, cd_nrt=1.

struct CurveSpec {
    std::string stem;
    tpq::TrafficParams params;
    bool with_costs = false;
};

std::vector<CurveSpec> curves_for_figure(const std::string& figure) {
    const auto scenario1 = [](double lambda_rt) {
        return tpq::TrafficParams{lambda_rt, 6.0, 20.0, 10.0};
    };
    const auto scenario2 = [](double lambda_nrt) {
        return tpq::TrafficParams{12.0, lambda_nrt, 20.0, 10.0};
    };

    std::vector<CurveSpec> out;
    const bool s1 = figure == "fig3" || figure == "fig4" || figure == "fig5" ||
                    figure == "fig6";
    const bool s2 = figure == "fig7" || figure == "fig8" || figure == "fig9" ||
                    figure == "fig10";
    if (s1) {
        for (double v : {2.0, 12.0, 18.0})
            out.push_back({figure + "_lambda_rt_" + tpq::format_double(v),
                           scenario1(v), false});
    } else if (s2) {
        for (double v : {2.0, 6.0, 9.0})
            out.push_back({figure + "_lambda_nrt_" + tpq::format_double(v),
                           scenario2(v), false});
    } else if (figure == "fig11") {
        for (double v : {12.0, 18.0})
            out.push_back({figure + "_lambda_rt_" + tpq::format_double(v),
                           scenario1(v), true});
    } else if (figure == "fig12") {
        for (double v : {2.0, 6.0, 9.0})
            out.push_back({figure + "_lambda_nrt_" + tpq::format_double(v),
                           scenario2(v), true});
    } else {
        throw tpq::ConfigError(
            "unknown figure id '" + figure +
            "'; valid ids: fig3 fig4 fig5 fig6 fig7 fig8 fig9 fig10 fig11 fig12 all");
    }
    return out;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir) {
    constexpr int kTotal = 20;
    constexpr int kRLo = 2;
    constexpr int kRHi = 16;
    const tpq::CostWeights kCosts{300.0, 50.0, 1000.0, 1.0};

    std::vector<std::string> figures;
    if (figure == "all") {
        for (int k = 3; k <= 12; ++k) figures.push_back("fig" + std::to_string(k));
    } else {
        figures.push_back(figure);
    }

    const std::string dir = out_dir.empty() ? "." : out_dir;
    for (const std::string& fig : figures) {
        for (const CurveSpec& curve : curves_for_figure(fig)) {
            std::string csv = tpq::sweep_csv_header(curve.with_costs) + "\n";
            for (tpq::GeneratorMode mode :
                 {tpq::GeneratorMode::Literal, tpq::GeneratorMode::Strict}) {
                if (curve.with_costs) {
                    const tpq::SweepResult res = tpq::sweep_threshold(
                        curve.params, kTotal, kRLo, kRHi, kCosts, mode);
                    for (const tpq::SweepRow& row : res.rows)
                        csv += tpq::sweep_csv_row(mode, row) + "\n";
                } else {
                    for (const tpq::SweepRow& row :
                         tpq::sweep_metrics(curve.params, kTotal, kRLo, kRHi, mode))
                        csv += tpq::sweep_csv_row(mode, row) + "\n";
                }
            }
            const fs::path path = fs::path(dir) / (curve.stem + ".csv");
            write_text_file(path, csv);
            std::cout << "wrote " << path.string() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-class threshold-partitioned priority buffer: exact "
                 "steady-state analysis, cost optimization, and simulation"};
    app.require_subcommand(1);

    CliOptions o;
    SubFlags solve_f, sweep_f, optimize_f, simulate_f, validate_f;

    CLI::App* solve = app.add_subcommand(
        "solve", "steady-state metrics for one (R, N) configuration");
    add_config_flag(solve, o);
    solve_f.mode = add_mode_flag(solve, o);
    add_out_flag(solve, o, "directory for solve.csv");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "metrics across thresholds R at fixed total capacity");
    add_config_flag(sweep, o);
    sweep_f.mode = add_mode_flag(sweep, o);
    add_out_flag(sweep, o, "directory for sweep CSV files");

    CLI::App* optimize = app.add_subcommand(
        "optimize", "sweep with the WGoS cost column and its minimizing R");
    add_config_flag(optimize, o);
    optimize_f.mode = add_mode_flag(optimize, o);
    add_out_flag(optimize, o, "directory for optimize CSV files");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "discrete-event simulation of one (R, N) configuration");
    add_config_flag(simulate, o);
    simulate_f.discipline = add_discipline_flag(simulate, o);
    add_sim_flags(simulate, o, simulate_f);
    add_out_flag(simulate, o, "directory for simulate.csv");

    CLI::App* validate = app.add_subcommand(
        "validate", "z-score comparison of analytic metrics against simulation");
    add_config_flag(validate, o);
    validate_f.mode = add_mode_flag(validate, o);
    validate_f.discipline = add_discipline_flag(validate, o);
    add_sim_flags(validate, o, validate_f);
    add_out_flag(validate, o, "directory for validate.csv");

    CLI::App* reproduce = app.add_subcommand(
        "reproduce", "emit the experiment-grid CSVs for fig3..fig12");
    reproduce->add_option("figure", o.figure, "fig3..fig12 or all")->required();
    add_out_flag(reproduce, o, "output directory (default: current directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(load_with_overrides(o, solve_f), o.out_dir);
        if (sweep->parsed()) return cmd_sweep(load_with_overrides(o, sweep_f), o.out_dir);
        if (optimize->parsed())
            return cmd_optimize(load_with_overrides(o, optimize_f), o.out_dir);
        if (simulate->parsed())
            return cmd_simulate(load_with_overrides(o, simulate_f), o.out_dir);
        if (validate->parsed())
            return cmd_validate(load_with_overrides(o, validate_f), o.out_dir);
        if (reproduce->parsed()) return cmd_reproduce(o.figure, o.out_dir);
    } catch (const tpq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tpq::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tpq::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
