#include "tpq/report.hpp"

#include <charconv>
#include <sstream>

namespace tpq {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string csv_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

namespace {

void append_metric_fields(std::ostringstream& out, const ClassMetrics& m) {
    out << ',' << format_double(m.l_rt) << ',' << format_double(m.l_nrt) << ','
        << format_double(m.n_rt) << ',' << format_double(m.n_nrt) << ','
        << csv_field(m.d_rt) << ',' << csv_field(m.d_nrt);
}

const MetricCheck* find_check(const ValidationReport& report, const std::string& name) {
    for (const MetricCheck& c : report.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

std::string solve_csv_header() {
    return "R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt,gamma";
}

std::string solve_csv_row(const SweepRow& row) {
    std::ostringstream out;
    out << row.r_threshold << ',' << row.n_capacity;
    append_metric_fields(out, row.metrics);
    out << ',' << (row.wgos ? format_double(row.wgos->gamma) : std::string());
    return out.str();
}

std::string sweep_csv_header(bool with_gamma) {
    std::string h = "mode,R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt";
    if (with_gamma) h += ",gamma";
    return h;
}

std::string sweep_csv_row(GeneratorMode mode, const SweepRow& row) {
    std::ostringstream out;
    out << to_string(mode) << ',' << row.r_threshold << ',' << row.n_capacity;
    append_metric_fields(out, row.metrics);
    if (row.wgos) out << ',' << format_double(row.wgos->gamma);
    return out.str();
}

std::string sim_csv_header() {
    return "discipline,R,N,replications,"
           "sim_L_rt,se_L_rt,sim_L_nrt,se_L_nrt,"
           "sim_N_rt,se_N_rt,sim_N_nrt,se_N_nrt,"
           "sim_D_rt,se_D_rt,sim_D_nrt,se_D_nrt,"
           "arrivals_rt,losses_rt,departures_rt,"
           "arrivals_nrt,losses_nrt,departures_nrt";
}

std::string sim_csv_row(Discipline discipline, const BufferConfig& buffer,
                        const SimMetrics& sim) {
    std::ostringstream out;
    out << to_string(discipline) << ',' << buffer.r_threshold << ','
        << buffer.n_capacity << ',' << sim.replications;
    auto pair = [&](const Estimate& e) {
        out << ',' << csv_field(e.value) << ',' << csv_field(e.std_error);
    };
    pair(sim.l_rt);
    pair(sim.l_nrt);
    pair(sim.n_rt);
    pair(sim.n_nrt);
    pair(sim.d_rt);
    pair(sim.d_nrt);
    out << ',' << sim.rt.arrivals << ',' << sim.rt.losses << ',' << sim.rt.departures
        << ',' << sim.nrt.arrivals << ',' << sim.nrt.losses << ',' << sim.nrt.departures;
    return out.str();
}

std::string validation_csv_header() {
    std::string h = sweep_csv_header(false);
    for (const char* m : {"L_rt", "L_nrt", "N_rt", "N_nrt", "D_rt", "D_nrt"}) {
        h += ",sim_" + std::string(m);
        h += ",se_" + std::string(m);
        h += ",z_" + std::string(m);
    }
    return h;
}

std::string validation_csv_row(GeneratorMode mode, const BufferConfig& buffer,
                               const ClassMetrics& analytic,
                               const ValidationReport& report) {
    std::ostringstream out;
    out << to_string(mode) << ',' << buffer.r_threshold << ',' << buffer.n_capacity;
    append_metric_fields(out, analytic);
    for (const char* m : {"L_rt", "L_nrt", "N_rt", "N_nrt", "D_rt", "D_nrt"}) {
        const MetricCheck* c = find_check(report, m);
        if (!c) {
            out << ",,,";
        } else {
            out << ',' << csv_field(c->simulated) << ',' << csv_field(c->std_error)
                << ',' << csv_field(c->z);
        }
    }
    return out.str();
}

}  // namespace tpq
