#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "secmimo/analytic.hpp"
#include "secmimo/errors.hpp"
#include "secmimo/montecarlo.hpp"
#include "secmimo/optimizer.hpp"
#include "secmimo/quantizer.hpp"

namespace secmimo::cli {

namespace {

double parse_double(const std::string& value, const std::string& where) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw RegimeError("bad number '" + value + "' " + where);
  }
  if (used != value.size())
    throw RegimeError("bad number '" + value + "' " + where);
  return out;
}

long long parse_int(const std::string& value, const std::string& where) {
  const double d = parse_double(value, where);
  if (d != std::floor(d))
    throw RegimeError("expected an integer, got '" + value + "' " + where);
  return static_cast<long long>(d);
}

std::string sanitize_error(std::string message) {
  std::replace(message.begin(), message.end(), ',', ';');
  std::replace(message.begin(), message.end(), '\n', ' ');
  return message;
}

std::string an_label(AnKind kind) { return to_string(kind); }

std::string dac_label(const DacModel& dac) {
  switch (dac.kind) {
    case DacModel::Kind::Ideal:
      return "inf";
    case DacModel::Kind::Bits:
      return std::to_string(dac.bits);
    case DacModel::Kind::Rho:
      return "rho=" + format_number(dac.rho, false);
  }
  return "?";
}

}  // namespace

RunMode parse_mode(const std::string& text) {
  if (text == "analytic") return RunMode::Analytic;
  if (text == "mc") return RunMode::MonteCarlo;
  if (text == "both") return RunMode::Both;
  throw RegimeError("unknown mode '" + text + "' (use analytic|mc|both)");
}

void apply_setting(RunSettings& settings, const std::string& key,
                   const std::string& value, const std::string& where) {
  SystemConfig& cfg = settings.config;
  if (key == "n") {
    cfg.num_bs_antennas = static_cast<int>(parse_int(value, where));
    settings.have_n = true;
  } else if (key == "k") {
    cfg.num_users = static_cast<int>(parse_int(value, where));
    settings.have_k = true;
  } else if (key == "m") {
    cfg.num_eve_antennas = static_cast<int>(parse_int(value, where));
    settings.have_m = true;
  } else if (key == "p") {
    const double snr = cfg.snr_db();
    cfg.total_power = parse_double(value, where);
    cfg.set_snr_db(snr);  // SNR is the configured quantity, noise follows P
  } else if (key == "snr_db") {
    cfg.set_snr_db(parse_double(value, where));
  } else if (key == "phi") {
    cfg.power_alloc = parse_double(value, where);
  } else if (key == "dac_bits") {
    if (value == "inf")
      cfg.dac = DacModel::ideal();
    else
      cfg.dac = DacModel::with_bits(static_cast<int>(parse_int(value, where)));
  } else if (key == "rho") {
    cfg.dac = DacModel::with_rho(parse_double(value, where));
  } else if (key == "an") {
    if (value == "null")
      cfg.an_kind = AnKind::NullSpace;
    else if (value == "random")
      cfg.an_kind = AnKind::Random;
    else
      throw RegimeError("unknown AN kind '" + value + "' " + where);
  } else if (key == "trials") {
    settings.trials = static_cast<int>(parse_int(value, where));
  } else if (key == "seed") {
    settings.seed = static_cast<std::uint64_t>(parse_int(value, where));
  } else if (key == "threads") {
    settings.threads = static_cast<int>(parse_int(value, where));
  } else if (key == "mode") {
    settings.mode = parse_mode(value);
  } else if (key == "out") {
    settings.out_path = value;
  } else {
    throw RegimeError("unknown key '" + key + "' " + where);
  }
}

void load_config_file(RunSettings& settings, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw RegimeError("cannot open config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    const std::string where = "at line " + std::to_string(number);
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == line.size() ||
        line.find('=', eq + 1) != std::string::npos)
      throw RegimeError("parse error " + where + ": expected key=value, got '" +
                        line + "'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_setting(settings, trim(line.substr(0, eq)),
                  trim(line.substr(eq + 1)), where);
  }
}

void require_complete(const RunSettings& settings) {
  if (!settings.have_n) throw RegimeError("missing required key: n");
  if (!settings.have_k) throw RegimeError("missing required key: k");
  if (!settings.have_m) throw RegimeError("missing required key: m");
}

std::string format_number(double value, bool full_precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), full_precision ? "%.17g" : "%.6g",
                value);
  return buffer;
}

const char* const kSweepHeader =
    "param,value,R_analytic,Cbar_analytic,Rsec_analytic,R_mc,R_mc_se,C_mc,"
    "C_mc_se,Rsec_mc,trials,error";

namespace {

SystemConfig config_at(const SweepSpec& spec, double value) {
  SystemConfig cfg = spec.base.config;
  if (spec.param == "snr_db") {
    cfg.set_snr_db(value);
  } else if (spec.param == "phi") {
    cfg.power_alloc = value;
  } else if (spec.param == "beta") {
    cfg.num_users = static_cast<int>(std::lround(value * cfg.num_bs_antennas));
  } else if (spec.param == "alpha") {
    cfg.num_eve_antennas =
        static_cast<int>(std::lround(value * cfg.num_bs_antennas));
  } else if (spec.param == "dac_bits") {
    cfg.dac = DacModel::with_bits(static_cast<int>(std::lround(value)));
  } else {
    throw RegimeError("unknown sweep parameter '" + spec.param + "'");
  }
  return cfg;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  if (!(spec.step > 0.0)) throw RegimeError("sweep step must be positive");
  if (spec.from > spec.to) throw RegimeError("sweep needs from <= to");
  std::vector<double> values;
  const int count =
      static_cast<int>(std::floor((spec.to - spec.from) / spec.step + 1e-9));
  for (int i = 0; i <= count; ++i) values.push_back(spec.from + i * spec.step);
  return values;
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec) {
  const bool full = spec.base.full_precision;
  std::ostringstream csv;
  csv << kSweepHeader << "\n";

  const std::vector<double> values = sweep_values(spec);
  for (std::size_t row = 0; row < values.size(); ++row) {
    const double value = values[row];
    std::string cells[10];  // R..trials
    std::string error;
    cells[9] = "0";

    try {
      const SystemConfig cfg = config_at(spec, value);
      const DerivedParams dp = derive_params(cfg);
      const RateBreakdown bound = secrecy_bound(dp, dp.rho, cfg.an_kind);
      cells[0] = format_number(bound.user_rate, full);
      cells[1] = format_number(bound.eve_capacity_bound, full);
      cells[2] = format_number(bound.secrecy_bound, full);

      if (spec.base.mode != RunMode::Analytic) {
        const MonteCarloReport report =
            run_ergodic(cfg, spec.base.trials,
                        derive_seed(spec.base.seed, row), spec.base.threads);
        cells[3] = format_number(report.user_rate, full);
        cells[4] = format_number(report.user_rate_se, full);
        cells[5] = format_number(report.eve_capacity, full);
        cells[6] = format_number(report.eve_capacity_se, full);
        cells[7] = format_number(report.secrecy_rate, full);
        cells[9] = std::to_string(report.trials);
      }
    } catch (const std::exception& e) {
      error = sanitize_error(e.what());
    }

    csv << spec.param << "," << format_number(value, full);
    for (int c = 0; c < 8; ++c) csv << "," << cells[c];
    csv << "," << cells[9] << "," << error << "\n";
  }
  return csv.str();
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot write '" + path + "'");
  out << content;
}

struct FigureSeries {
  std::string file_tag;
  SweepSpec spec;
};

DacModel dac_from_tag(const std::string& tag) {
  return tag == "inf" ? DacModel::ideal() : DacModel::with_bits(tag[0] - '0');
}

RunSettings series_base(const RunSettings& settings, int n, int k, int m,
                        double phi, double snr_db, AnKind an,
                        const std::string& bits_tag) {
  RunSettings base = settings;
  base.config.num_bs_antennas = n;
  base.config.num_users = k;
  base.config.num_eve_antennas = m;
  base.config.power_alloc = phi;
  base.config.set_snr_db(snr_db);
  base.config.an_kind = an;
  base.config.dac = dac_from_tag(bits_tag);
  return base;
}

// Threshold ratio vs user loading; pure ratio evaluation, no dimensions.
std::string alpha_bar_csv(const RunSettings& settings, AnKind kind) {
  const bool full = settings.full_precision;
  const double rho = distortion_factor(settings.config.dac);
  const double gamma0 =
      settings.config.total_power / settings.config.noise_power;
  std::ostringstream csv;
  csv << "param,value,alpha_bar,error\n";
  for (int i = 1; i <= 45; ++i) {
    const double beta = 0.02 * i;
    const DerivedParams dp =
        DerivedParams::from_ratios(0.01, beta, gamma0, 0.5, rho);
    csv << "beta," << format_number(beta, full) << ","
        << format_number(alpha_bar(dp, rho, kind), full) << ",\n";
  }
  return csv.str();
}

// Secrecy at the per-point optimal power allocation vs SNR.
std::string optimal_phi_sweep_csv(const RunSettings& settings) {
  const bool full = settings.full_precision;
  const SystemConfig& cfg = settings.config;
  std::ostringstream csv;
  csv << "param,value,phi_star,R_analytic,Cbar_analytic,Rsec_analytic,R_mc,"
         "R_mc_se,C_mc,C_mc_se,Rsec_mc,trials,error\n";
  for (int db = 0; db <= 20; ++db) {
    SystemConfig at = cfg;
    at.set_snr_db(db);
    std::string row_error;
    std::string cells[9];
    std::string trials = "0";
    try {
      const DerivedParams dp = derive_params(at);
      const OptResult opt = maximize_phi(dp, dp.rho, at.an_kind);
      at.power_alloc = opt.phi_star;
      const RateBreakdown bound = secrecy_bound(with_phi(dp, opt.phi_star),
                                                dp.rho, at.an_kind);
      cells[0] = format_number(opt.phi_star, full);
      cells[1] = format_number(bound.user_rate, full);
      cells[2] = format_number(bound.eve_capacity_bound, full);
      cells[3] = format_number(bound.secrecy_bound, full);
      if (settings.mode != RunMode::Analytic) {
        const MonteCarloReport report = run_ergodic(
            at, settings.trials, derive_seed(settings.seed, db),
            settings.threads);
        cells[4] = format_number(report.user_rate, full);
        cells[5] = format_number(report.user_rate_se, full);
        cells[6] = format_number(report.eve_capacity, full);
        cells[7] = format_number(report.eve_capacity_se, full);
        cells[8] = format_number(report.secrecy_rate, full);
        trials = std::to_string(report.trials);
      }
    } catch (const std::exception& e) {
      row_error = sanitize_error(e.what());
    }
    csv << "snr_db," << db;
    for (const auto& cell : cells) csv << "," << cell;
    csv << "," << trials << "," << row_error << "\n";
  }
  return csv.str();
}

std::string gnuplot_script(int id, const std::vector<std::string>& files,
                           const std::string& ycol, const std::string& ylabel) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead outside\n"
     << "set xlabel 'swept value'\n"
     << "set ylabel '" << ylabel << "'\n"
     << "set title 'figure " << id << "'\n"
     << "plot \\\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    gp << "  '" << files[i] << "' using 2:" << ycol << " with linespoints title '"
       << std::filesystem::path(files[i]).stem().string() << "'"
       << (i + 1 < files.size() ? ", \\\n" : "\n");
  }
  return gp.str();
}

}  // namespace

std::vector<std::string> emit_figure(int id, const std::string& outdir,
                                     const RunSettings& settings) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  std::vector<std::string> written;
  std::vector<FigureSeries> series;
  std::string ycol = "6", ylabel = "secrecy rate (bits/s/Hz)";

  auto add = [&](const std::string& tag, const SweepSpec& spec) {
    series.push_back({tag, spec});
  };
  auto path_for = [&](const std::string& tag) {
    return (fs::path(outdir) / ("figure" + std::to_string(id) + "_" + tag +
                                ".csv"))
        .string();
  };

  switch (id) {
    case 2:
      for (const std::string tag : {"b1", "b2", "binf"})
        add(tag, {"beta", 0.10, 0.90, 0.01,
                  series_base(settings, 100, 10, 7, 0.7, settings.config.snr_db(),
                              AnKind::NullSpace, tag.substr(1))});
      ycol = "5";
      ylabel = "eavesdropper capacity (bits/s/Hz)";
      break;
    case 3:
      for (const std::string tag : {"b1", "b2", "binf"})
        add(tag, {"phi", 0.02, 1.0, 0.02,
                  series_base(settings, 100, 10, 5, 0.7, settings.config.snr_db(),
                              AnKind::NullSpace, tag.substr(1))});
      ycol = "5";
      ylabel = "eavesdropper capacity (bits/s/Hz)";
      break;
    case 4:
      for (const std::string tag : {"b1", "b2", "b3", "binf"})
        add(tag, {"snr_db", 0.0, 20.0, 1.0,
                  series_base(settings, 128, 8, 16, 0.8, 10.0,
                              AnKind::NullSpace, tag.substr(1))});
      break;
    case 5:
      for (const std::string tag : {"b1", "b2", "b3", "binf"})
        add(tag, {"snr_db", 0.0, 20.0, 1.0,
                  series_base(settings, 128, 8, 6, 0.7, 10.0, AnKind::Random,
                              tag.substr(1))});
      break;
    case 6: {
      for (AnKind kind : {AnKind::NullSpace, AnKind::Random}) {
        const std::string path = path_for(an_label(kind));
        write_file(path, alpha_bar_csv(settings, kind));
        written.push_back(path);
      }
      const std::string gp = (fs::path(outdir) / "figure6.gp").string();
      write_file(gp, gnuplot_script(6, written, "3", "threshold ratio"));
      written.push_back(gp);
      return written;
    }
    case 7:
    case 8:
      for (const double snr : {0.0, 5.0})
        for (const std::string tag : {"b1", "b2", "b3", "binf"})
          add(tag + "_snr" + std::to_string(static_cast<int>(snr)),
              {"phi", 0.02, 1.0, 0.02,
               series_base(settings, 128, 8, 16, 0.5, snr,
                           id == 7 ? AnKind::NullSpace : AnKind::Random,
                           tag.substr(1))});
      break;
    case 9: {
      for (const std::string tag : {"b1", "b2", "b3", "binf"}) {
        const RunSettings base = series_base(settings, 128, 8, 12, 0.5, 10.0,
                                             AnKind::Random, tag.substr(1));
        const std::string path = path_for(tag);
        write_file(path, optimal_phi_sweep_csv(base));
        written.push_back(path);
      }
      const std::string gp = (fs::path(outdir) / "figure9.gp").string();
      write_file(gp, gnuplot_script(9, written, "6",
                                    "secrecy rate at optimal phi (bits/s/Hz)"));
      written.push_back(gp);
      return written;
    }
    default:
      throw RegimeError("figure id must be in 2..9");
  }

  for (auto& s : series) {
    const std::string path = path_for(s.file_tag);
    write_file(path, sweep_csv(s.spec));
    written.push_back(path);
  }
  const std::string gp =
      (fs::path(outdir) / ("figure" + std::to_string(id) + ".gp")).string();
  write_file(gp, gnuplot_script(id, written, ycol, ylabel));
  written.push_back(gp);
  return written;
}

int cmd_analytic(const RunSettings& settings) {
  require_complete(settings);
  const auto violations = validate_regime(settings.config);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid regime: " << v << "\n";
    return 2;
  }
  const bool full = settings.full_precision;
  const SystemConfig& cfg = settings.config;
  const DerivedParams dp = derive_params(cfg);

  std::cout << "config: N=" << cfg.num_bs_antennas << " K=" << cfg.num_users
            << " M=" << cfg.num_eve_antennas
            << " P=" << format_number(cfg.total_power, full)
            << " snr_db=" << format_number(cfg.snr_db(), full)
            << " phi=" << format_number(cfg.power_alloc, full)
            << " dac=" << dac_label(cfg.dac)
            << " rho=" << format_number(dp.rho, full)
            << " an=" << an_label(cfg.an_kind) << "\n";

  const RateBreakdown bound = secrecy_bound(dp, dp.rho, cfg.an_kind);
  std::cout << "R        = " << format_number(bound.user_rate, full) << "\n";
  std::cout << "Cbar     = " << format_number(bound.eve_capacity_bound, full)
            << "\n";
  std::cout << "Rsec     = " << format_number(bound.secrecy_bound, full)
            << "\n";

  const ThresholdSet set = threshold_set(dp, dp.rho, cfg.an_kind);
  std::cout << "beta_bar = "
            << (set.beta_bar ? format_number(*set.beta_bar, full) : "n/a")
            << "\n";
  std::cout << "alpha_bar= "
            << (set.alpha_bar ? format_number(*set.alpha_bar, full) : "n/a")
            << "\n";
  if (set.snr_threshold)
    std::cout << "snr_thr  = "
              << format_number(10.0 * std::log10(*set.snr_threshold), full)
              << " dB (linear " << format_number(*set.snr_threshold, full)
              << ")\n";
  else
    std::cout << "snr_thr  = n/a\n";

  try {
    const double closed = optimal_phi_closed(dp, dp.rho, cfg.an_kind);
    std::cout << "phi_star_closed  = " << format_number(closed, full) << "\n";
  } catch (const NumericError&) {
    std::cout << "phi_star_closed  = n/a (numeric fallback)\n";
  }
  const OptResult opt = maximize_phi(dp, dp.rho, cfg.an_kind);
  std::cout << "phi_star_numeric = " << format_number(opt.phi_star, full)
            << " (value " << format_number(opt.value, full) << ", "
            << opt.iterations << " iterations)\n";
  return 0;
}

int cmd_simulate(const RunSettings& settings) {
  require_complete(settings);
  const auto violations = validate_regime(settings.config);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid regime: " << v << "\n";
    return 2;
  }
  const bool full = settings.full_precision;
  const MonteCarloReport report = run_ergodic(
      settings.config, settings.trials, settings.seed, settings.threads);
  std::cout << "trials   = " << report.trials << " (seed " << report.seed
            << ")\n";
  std::cout << "R_mc     = " << format_number(report.user_rate, full) << " +- "
            << format_number(report.user_rate_se, full) << "\n";
  std::cout << "C_mc     = " << format_number(report.eve_capacity, full)
            << " +- " << format_number(report.eve_capacity_se, full) << "\n";
  std::cout << "Rsec_mc  = " << format_number(report.secrecy_rate, full)
            << " +- " << format_number(report.secrecy_se, full) << "\n";
  try {
    const DerivedParams dp = derive_params(settings.config);
    const RateBreakdown bound =
        secrecy_bound(dp, dp.rho, settings.config.an_kind);
    std::cout << "Rsec_analytic = " << format_number(bound.secrecy_bound, full)
              << "\n";
  } catch (const RegimeError&) {
    std::cout << "Rsec_analytic = n/a\n";
  }
  return 0;
}

int cmd_threshold(const RunSettings& settings, double rho_probe) {
  require_complete(settings);
  const auto violations = validate_regime(settings.config);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid regime: " << v << "\n";
    return 2;
  }
  const bool full = settings.full_precision;
  const DerivedParams dp = derive_params(settings.config);
  const double closed = snr_threshold(dp, settings.config.an_kind);
  std::cout << "snr_threshold_closed  = "
            << format_number(10.0 * std::log10(closed), full) << " dB (linear "
            << format_number(closed, full) << ")\n";
  const double numeric =
      find_snr_threshold_numeric(dp, settings.config.an_kind, rho_probe);
  std::cout << "snr_threshold_numeric = "
            << format_number(10.0 * std::log10(numeric), full)
            << " dB (linear " << format_number(numeric, full) << ", rho_probe "
            << format_number(rho_probe, full) << ")\n";
  return 0;
}

int cmd_optimize_phi(const RunSettings& settings) {
  require_complete(settings);
  const auto violations = validate_regime(settings.config);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid regime: " << v << "\n";
    return 2;
  }
  const bool full = settings.full_precision;
  const DerivedParams dp = derive_params(settings.config);
  try {
    const double closed =
        optimal_phi_closed(dp, dp.rho, settings.config.an_kind);
    std::cout << "phi_star_closed  = " << format_number(closed, full) << "\n";
  } catch (const NumericError& e) {
    std::cout << "phi_star_closed  = n/a (" << e.what() << ")\n";
  }
  const OptResult opt = maximize_phi(dp, dp.rho, settings.config.an_kind);
  std::cout << "phi_star_numeric = " << format_number(opt.phi_star, full)
            << "\n";
  std::cout << "value            = " << format_number(opt.value, full) << "\n";
  std::cout << "iterations       = " << opt.iterations << "\n";
  if (opt.local_maxima.size() > 1) {
    std::cout << "local_maxima     =";
    for (double phi : opt.local_maxima)
      std::cout << " " << format_number(phi, full);
    std::cout << "\n";
  }
  return 0;
}

int cmd_rho_table(const RunSettings& settings) {
  std::ostringstream csv;
  csv << "bits,rho\n";
  for (int bits = 1; bits <= 8; ++bits)
    csv << bits << ","
        << format_number(distortion_factor(DacModel::with_bits(bits)),
                         settings.full_precision)
        << "\n";
  if (settings.out_path.empty())
    std::cout << csv.str();
  else
    write_file(settings.out_path, csv.str());
  return 0;
}

}  // namespace secmimo::cli
