#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "secmimo/errors.hpp"

namespace {

using secmimo::cli::RunSettings;

// Shared option set; every value funnels through apply_setting so the CLI
// and config files validate identically. Flags override file values.
struct CommonOptions {
  std::map<std::string, std::string> values;
  std::string config_path;
  bool full_precision = false;

  void attach(CLI::App* cmd) {
    auto opt = [&](const std::string& flag, const std::string& key,
                   const std::string& help) {
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; }, help);
    };
    opt("--n", "n", "BS antennas N");
    opt("--k", "k", "single-antenna users K");
    opt("--m", "m", "eavesdropper antennas M");
    opt("--p", "p", "total transmit power (linear, default 1)");
    opt("--snr-db", "snr_db", "transmit SNR P/sigma_n^2 in dB");
    opt("--phi", "phi", "power allocation factor in (0,1]");
    opt("--dac-bits", "dac_bits", "DAC resolution 1..8 or 'inf'");
    opt("--rho", "rho", "explicit distortion factor override in [0,1)");
    opt("--an", "an", "artificial-noise design: null|random");
    opt("--trials", "trials", "Monte Carlo trials");
    opt("--seed", "seed", "master seed");
    opt("--threads", "threads", "worker threads (0 = auto)");
    opt("--mode", "mode", "analytic|mc|both");
    opt("--out", "out", "output path");
    cmd->add_option("--config", config_path,
                    "key=value config file ('#' comments)");
    cmd->add_flag("--full-precision", full_precision,
                  "print 17 significant digits");
  }

  RunSettings build() const {
    RunSettings settings;
    if (!config_path.empty())
      secmimo::cli::load_config_file(settings, config_path);
    for (const auto& [key, value] : values)
      secmimo::cli::apply_setting(settings, key, value, "from command line");
    settings.full_precision = full_precision;
    return settings;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Secrecy-rate analysis of a massive-MIMO downlink with low-resolution "
      "DACs: closed-form bounds, thresholds, optimal power allocation, and "
      "seeded Monte Carlo"};
  app.require_subcommand(1);

  CommonOptions analytic_opts, simulate_opts, sweep_opts, figure_opts,
      optphi_opts, threshold_opts, table_opts;

  CLI::App* analytic = app.add_subcommand(
      "analytic", "closed-form rates, bounds, and thresholds at one point");
  analytic_opts.attach(analytic);

  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo ergodic rates");
  simulate_opts.attach(simulate);

  CLI::App* sweep = app.add_subcommand("sweep", "CSV parameter sweep");
  sweep_opts.attach(sweep);
  std::string sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0, sweep_step = 1.0;
  sweep->add_option("--param", sweep_param,
                    "swept parameter: snr_db|phi|beta|alpha|dac_bits")
      ->required();
  sweep->add_option("--from", sweep_from, "first value")->required();
  sweep->add_option("--to", sweep_to, "last value")->required();
  sweep->add_option("--step", sweep_step, "increment")->required();

  CLI::App* figure = app.add_subcommand(
      "figure", "emit the CSV grids for the bundled experiment set (ids 2..9)");
  figure_opts.attach(figure);
  int figure_id = 0;
  std::string figure_outdir = ".";
  figure->add_option("--id", figure_id, "figure id in 2..9")->required();
  figure->add_option("--outdir", figure_outdir, "output directory");

  CLI::App* optphi = app.add_subcommand(
      "optimize-phi", "closed-form and numeric optimal power allocation");
  optphi_opts.attach(optphi);

  CLI::App* threshold = app.add_subcommand(
      "threshold", "resolution-crossover SNR, closed form and numeric");
  threshold_opts.attach(threshold);
  double rho_probe = 1e-3;
  threshold->add_option("--rho-probe", rho_probe,
                        "distortion probe for the numeric route");

  CLI::App* table =
      app.add_subcommand("rho-table", "Lloyd-Max distortion table as CSV");
  table_opts.attach(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analytic) return secmimo::cli::cmd_analytic(analytic_opts.build());
    if (*simulate) return secmimo::cli::cmd_simulate(simulate_opts.build());
    if (*sweep) {
      RunSettings settings = sweep_opts.build();
      secmimo::cli::require_complete(settings);
      secmimo::cli::SweepSpec spec{sweep_param, sweep_from, sweep_to,
                                   sweep_step, settings};
      const std::string csv = secmimo::cli::sweep_csv(spec);
      if (settings.out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(settings.out_path, std::ios::binary);
        if (!out) throw secmimo::NumericError("cannot write '" +
                                              settings.out_path + "'");
        out << csv;
      }
      return 0;
    }
    if (*figure) {
      const auto written =
          secmimo::cli::emit_figure(figure_id, figure_outdir,
                                    figure_opts.build());
      for (const auto& path : written) std::cout << path << "\n";
      return 0;
    }
    if (*optphi) return secmimo::cli::cmd_optimize_phi(optphi_opts.build());
    if (*threshold)
      return secmimo::cli::cmd_threshold(threshold_opts.build(), rho_probe);
    if (*table) return secmimo::cli::cmd_rho_table(table_opts.build());
  } catch (const secmimo::RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
