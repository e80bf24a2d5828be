#include "tpq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

namespace tpq {

std::string to_string(Discipline d) {
    switch (d) {
        case Discipline::NonPreemptivePriority: return "nonpreemptive";
        case Discipline::PreemptiveResume: return "preemptive";
        case Discipline::IndependentClassService: return "independent";
    }
    return "?";
}

Discipline parse_discipline(const std::string& text) {
    if (text == "nonpreemptive") return Discipline::NonPreemptivePriority;
    if (text == "preemptive") return Discipline::PreemptiveResume;
    if (text == "independent") return Discipline::IndependentClassService;
    throw ConfigError("unknown discipline '" + text +
                      "' (expected nonpreemptive|preemptive|independent)");
}

void SimConfig::validate() const {
    params.validate();
    buffer.validate();
    if (!(horizon > 0.0)) throw ConfigError("horizon must be > 0");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (!(warmup >= 0.0)) throw ConfigError("warmup must be >= 0");
}

SimConfig default_sim_config(const TrafficParams& params, BufferConfig buffer,
                             Discipline discipline, std::uint64_t master_seed) {
    params.validate();
    SimConfig c;
    c.params = params;
    c.buffer = buffer;
    c.discipline = discipline;
    c.horizon = 1e6 / (params.mu_rt + params.mu_nrt);
    c.warmup = 0.1 * c.horizon;
    c.replications = 20;
    c.master_seed = master_seed;
    return c;
}

namespace {

// All variates come from one mt19937_64 stream through the same 53-bit
// inversion, so replications replay identically across platforms.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::mt19937_64 gen_;
};

}  // namespace

RepMetrics run_replication(const SimConfig& config, std::uint64_t seed) {
    config.validate();
    RandomStream rng(seed);
    const TrafficParams& p = config.params;
    const int cap_rt = config.buffer.r_threshold;
    const int cap_nrt = config.buffer.n_capacity;
    const bool npp = config.discipline == Discipline::NonPreemptivePriority;
    const double window_begin = config.warmup;
    const double window_end = config.warmup + config.horizon;

    // Arrival stamps, FIFO per class. Under nonpreemptive priority the queues
    // hold only waiting customers and the serving_* fields hold the one in
    // service; otherwise the queues hold everyone in the system.
    std::deque<double> rt_queue;
    std::deque<double> nrt_queue;
    bool serving = false;
    bool serving_rt = false;
    double serving_stamp = 0.0;

    int count_rt = 0;
    int count_nrt = 0;
    double clock = 0.0;
    double area_rt = 0.0;
    double area_nrt = 0.0;
    double delay_sum_rt = 0.0;
    double delay_sum_nrt = 0.0;
    RepMetrics rep;

    auto integrate_to = [&](double upto) {
        const double lo = std::max(clock, window_begin);
        const double hi = std::min(upto, window_end);
        if (hi > lo) {
            area_rt += count_rt * (hi - lo);
            area_nrt += count_nrt * (hi - lo);
        }
    };

    auto admit = [&](bool is_rt) {
        const double stamp = clock;
        if (npp && !serving) {
            serving = true;
            serving_rt = is_rt;
            serving_stamp = stamp;
        } else {
            (is_rt ? rt_queue : nrt_queue).push_back(stamp);
        }
        if (is_rt) {
            ++count_rt;
            rep.peak_rt = std::max(rep.peak_rt, count_rt);
        } else {
            ++count_nrt;
            rep.peak_nrt = std::max(rep.peak_nrt, count_nrt);
        }
    };

    auto record_departure = [&](bool is_rt, double stamp) {
        if (stamp < window_begin) return;  // admitted before the window
        ClassTally& tally = is_rt ? rep.rt : rep.nrt;
        ++tally.departures;
        (is_rt ? delay_sum_rt : delay_sum_nrt) += clock - stamp;
    };

    while (true) {
        double svc_rt = 0.0;
        double svc_nrt = 0.0;
        switch (config.discipline) {
            case Discipline::IndependentClassService:
                if (count_rt > 0) svc_rt = p.mu_rt;
                if (count_nrt > 0) svc_nrt = p.mu_nrt;
                break;
            case Discipline::PreemptiveResume:
                if (count_rt > 0)
                    svc_rt = p.mu_rt;
                else if (count_nrt > 0)
                    svc_nrt = p.mu_nrt;
                break;
            case Discipline::NonPreemptivePriority:
                if (serving) {
                    if (serving_rt)
                        svc_rt = p.mu_rt;
                    else
                        svc_nrt = p.mu_nrt;
                }
                break;
        }
        const double total_rate = p.lambda_rt + p.lambda_nrt + svc_rt + svc_nrt;
        if (total_rate <= 0.0) break;  // absorbing: nothing more can happen

        const double t_next = clock + rng.exponential(total_rate);
        if (t_next >= window_end) break;
        integrate_to(t_next);
        clock = t_next;
        const bool in_window = clock >= window_begin;

        const double pick = rng.uniform() * total_rate;
        if (pick < p.lambda_rt) {
            if (in_window) ++rep.rt.arrivals;
            if (count_rt == cap_rt) {
                if (in_window) ++rep.rt.losses;
            } else {
                admit(true);
            }
        } else if (pick < p.lambda_rt + p.lambda_nrt) {
            if (in_window) ++rep.nrt.arrivals;
            if (count_nrt == cap_nrt) {
                if (in_window) ++rep.nrt.losses;
            } else {
                admit(false);
            }
        } else if (pick < p.lambda_rt + p.lambda_nrt + svc_rt) {
            --count_rt;
            if (npp) {
                record_departure(true, serving_stamp);
                if (!rt_queue.empty()) {
                    serving_rt = true;
                    serving_stamp = rt_queue.front();
                    rt_queue.pop_front();
                } else if (!nrt_queue.empty()) {
                    serving_rt = false;
                    serving_stamp = nrt_queue.front();
                    nrt_queue.pop_front();
                } else {
                    serving = false;
                }
            } else {
                record_departure(true, rt_queue.front());
                rt_queue.pop_front();
            }
        } else {
            --count_nrt;
            if (npp) {
                record_departure(false, serving_stamp);
                if (!rt_queue.empty()) {
                    serving_rt = true;
                    serving_stamp = rt_queue.front();
                    rt_queue.pop_front();
                } else if (!nrt_queue.empty()) {
                    serving_rt = false;
                    serving_stamp = nrt_queue.front();
                    nrt_queue.pop_front();
                } else {
                    serving = false;
                }
            } else {
                record_departure(false, nrt_queue.front());
                nrt_queue.pop_front();
            }
        }
    }
    integrate_to(window_end);
    clock = window_end;

    // Window-admitted customers still in the system.
    auto leftovers = [&](const std::deque<double>& q) {
        std::uint64_t c = 0;
        for (double stamp : q)
            if (stamp >= window_begin) ++c;
        return c;
    };
    rep.rt.in_system_at_end = leftovers(rt_queue);
    rep.nrt.in_system_at_end = leftovers(nrt_queue);
    if (npp && serving && serving_stamp >= window_begin)
        ++(serving_rt ? rep.rt : rep.nrt).in_system_at_end;

    rep.n_rt = area_rt / config.horizon;
    rep.n_nrt = area_nrt / config.horizon;
    if (rep.rt.arrivals > 0)
        rep.l_rt = static_cast<double>(rep.rt.losses) / static_cast<double>(rep.rt.arrivals);
    if (rep.nrt.arrivals > 0)
        rep.l_nrt = static_cast<double>(rep.nrt.losses) / static_cast<double>(rep.nrt.arrivals);
    if (rep.rt.departures > 0)
        rep.d_rt = delay_sum_rt / static_cast<double>(rep.rt.departures);
    if (rep.nrt.departures > 0)
        rep.d_nrt = delay_sum_nrt / static_cast<double>(rep.nrt.departures);
    return rep;
}

namespace {

Estimate aggregate(const std::vector<RepMetrics>& reps,
                   std::optional<double> (*proj)(const RepMetrics&)) {
    std::vector<double> xs;
    xs.reserve(reps.size());
    for (const RepMetrics& r : reps) {
        if (const auto v = proj(r)) xs.push_back(*v);
    }
    Estimate e;
    e.samples = static_cast<int>(xs.size());
    if (xs.empty()) return e;
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    e.value = mean;
    if (xs.size() >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double var = ss / static_cast<double>(xs.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return e;
}

void add_tally(ClassTally& into, const ClassTally& from) {
    into.arrivals += from.arrivals;
    into.losses += from.losses;
    into.departures += from.departures;
    into.in_system_at_end += from.in_system_at_end;
}

}  // namespace

SimMetrics run_simulation(const SimConfig& config) {
    config.validate();
    SimMetrics out;
    out.replications = config.replications;
    out.window = config.horizon;
    out.reps.reserve(static_cast<std::size_t>(config.replications));

    std::uint64_t seed_state = config.master_seed;
    for (int k = 0; k < config.replications; ++k) {
        const std::uint64_t rep_seed = splitmix64(seed_state);
        out.reps.push_back(run_replication(config, rep_seed));
    }
    for (const RepMetrics& r : out.reps) {
        add_tally(out.rt, r.rt);
        add_tally(out.nrt, r.nrt);
    }
    out.n_rt = aggregate(out.reps, [](const RepMetrics& r) { return std::optional<double>(r.n_rt); });
    out.n_nrt = aggregate(out.reps, [](const RepMetrics& r) { return std::optional<double>(r.n_nrt); });
    out.l_rt = aggregate(out.reps, [](const RepMetrics& r) { return r.l_rt; });
    out.l_nrt = aggregate(out.reps, [](const RepMetrics& r) { return r.l_nrt; });
    out.d_rt = aggregate(out.reps, [](const RepMetrics& r) { return r.d_rt; });
    out.d_nrt = aggregate(out.reps, [](const RepMetrics& r) { return r.d_nrt; });
    return out;
}

ValidationReport validate(const ClassMetrics& analytic, const SimMetrics& sim,
                          GeneratorMode mode, Discipline discipline) {
    ValidationReport report;
    if (discipline == Discipline::NonPreemptivePriority) {
        report.comparison_only = true;
    } else {
        const bool matched =
            (mode == GeneratorMode::Literal &&
             discipline == Discipline::IndependentClassService) ||
            (mode == GeneratorMode::Strict &&
             discipline == Discipline::PreemptiveResume);
        if (!matched)
            throw ConfigError("discipline '" + to_string(discipline) +
                              "' is not the analytic twin of mode '" +
                              to_string(mode) + "'");
    }
    if (sim.replications < 2)
        throw ConfigError("validation needs >= 2 replications for standard errors");

    auto check = [&](const char* name, std::optional<double> a, const Estimate& e) {
        if (!a && !e.value) return;  // metric undefined on both sides: nothing to compare
        MetricCheck c;
        c.name = name;
        c.simulated = e.value;
        c.std_error = e.std_error;
        if (!a || !e.value || !e.std_error) {
            c.analytic = a.value_or(0.0);
            c.pass = false;
        } else {
            c.analytic = *a;
            const double diff = std::abs(*a - *e.value);
            if (*e.std_error > 0.0) {
                c.z = diff / *e.std_error;
            } else {
                c.z = diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            c.pass = *c.z <= kZThreshold;
        }
        report.checks.push_back(c);
    };
    check("N_rt", analytic.n_rt, sim.n_rt);
    check("N_nrt", analytic.n_nrt, sim.n_nrt);
    check("L_rt", analytic.l_rt, sim.l_rt);
    check("L_nrt", analytic.l_nrt, sim.l_nrt);
    check("D_rt", analytic.d_rt, sim.d_rt);
    check("D_nrt", analytic.d_nrt, sim.d_nrt);

    const double span = sim.window * static_cast<double>(sim.replications);
    auto little = [&](const char* cls, const Estimate& count, const Estimate& delay,
                      const ClassTally& tally) {
        if (!count.value || !delay.value || !(*count.value > 0.0)) return;
        LittleCheck lc;
        lc.cls = cls;
        lc.time_average_count = *count.value;
        const double throughput =
            static_cast<double>(tally.arrivals - tally.losses) / span;
        lc.throughput_times_delay = throughput * *delay.value;
        lc.rel_err = std::abs(lc.time_average_count - lc.throughput_times_delay) /
                     lc.time_average_count;
        lc.pass = lc.rel_err <= kLittleRelTol;
        report.little.push_back(lc);
    };
    little("rt", sim.n_rt, sim.d_rt, sim.rt);
    little("nrt", sim.n_nrt, sim.d_nrt, sim.nrt);

    report.all_pass = true;
    for (const MetricCheck& c : report.checks) report.all_pass &= c.pass;
    for (const LittleCheck& c : report.little) report.all_pass &= c.pass;
    return report;
}

}  // namespace tpq
