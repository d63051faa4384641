#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secmimo/system.hpp"

namespace secmimo::cli {

enum class RunMode { Analytic, MonteCarlo, Both };

RunMode parse_mode(const std::string& text);  // analytic | mc | both

// Everything a command needs: the system under study plus run options.
struct RunSettings {
  SystemConfig config;
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  RunMode mode = RunMode::Both;
  bool full_precision = false;
  std::string out_path;
  bool have_n = false, have_k = false, have_m = false;
};

// One key=value assignment (config file line or CLI flag). Throws
// RegimeError on unknown keys or unparseable values; `where` names the
// source for the message.
void apply_setting(RunSettings& settings, const std::string& key,
                   const std::string& value, const std::string& where);

// Plain-text key=value file, one pair per line, '#' comments. Throws
// RegimeError naming the offending line.
void load_config_file(RunSettings& settings, const std::string& path);

// Throws RegimeError naming the first missing required key (n, k, m).
void require_complete(const RunSettings& settings);

// %.6g by default, %.17g under --full-precision.
std::string format_number(double value, bool full_precision);

// Fixed sweep schema.
extern const char* const kSweepHeader;

struct SweepSpec {
  std::string param;  // snr_db | phi | beta | alpha | dac_bits
  double from = 0.0, to = 0.0, step = 0.0;
  RunSettings base;
};

// One row per swept value; invalid points keep their row with the error
// column set. Byte-identical output for identical (spec, seed).
std::string sweep_csv(const SweepSpec& spec);

// Reproduces the bundled experiment grids (ids 2..9), one CSV per series,
// plus a gnuplot script referencing them. Returns the written file paths.
std::vector<std::string> emit_figure(int id, const std::string& outdir,
                                     const RunSettings& settings);

int cmd_analytic(const RunSettings& settings);
int cmd_simulate(const RunSettings& settings);
int cmd_threshold(const RunSettings& settings, double rho_probe);
int cmd_optimize_phi(const RunSettings& settings);
int cmd_rho_table(const RunSettings& settings);

}  // namespace secmimo::cli
