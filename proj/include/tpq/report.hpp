#pragma once

// CSV schemas and number formatting shared by the CLI and the tests. Values
// print as shortest round-trip decimals with no locale involvement, so output
// files are byte-stable; absent values print as empty fields.

#include <optional>
#include <string>

#include "tpq/sim.hpp"
#include "tpq/wgos.hpp"

namespace tpq {

std::string format_double(double v);
std::string csv_field(const std::optional<double>& v);

// "R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt,gamma" (gamma empty without costs).
std::string solve_csv_header();
std::string solve_csv_row(const SweepRow& row);

// "mode,R,N,L_rt,L_nrt,N_rt,N_nrt,D_rt,D_nrt[,gamma]"
std::string sweep_csv_header(bool with_gamma);
std::string sweep_csv_row(GeneratorMode mode, const SweepRow& row);

// Simulation estimates: per metric a value and its standard error, then the
// raw per-class event counts.
std::string sim_csv_header();
std::string sim_csv_row(Discipline discipline, const BufferConfig& buffer,
                        const SimMetrics& sim);

// Sweep schema without gamma, then sim_*, se_*, z_* per metric.
std::string validation_csv_header();
std::string validation_csv_row(GeneratorMode mode, const BufferConfig& buffer,
                               const ClassMetrics& analytic,
                               const ValidationReport& report);

}  // namespace tpq
