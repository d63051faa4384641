#pragma once

#include <optional>
#include <string>
#include <vector>

namespace secmimo {

enum class AnKind { NullSpace, Random };

const char* to_string(AnKind kind);

// DAC description: ideal (no distortion), a resolution in bits resolved
// through the Lloyd-Max table, or an explicit distortion factor override.
struct DacModel {
  enum class Kind { Ideal, Bits, Rho };

  Kind kind = Kind::Ideal;
  int bits = 0;
  double rho = 0.0;

  static DacModel ideal() { return {}; }
  static DacModel with_bits(int bits) {
    return {Kind::Bits, bits, 0.0};
  }
  static DacModel with_rho(double rho) {
    return {Kind::Rho, 0, rho};
  }
};

// Raw experiment parameters. Powers are linear watts; the eavesdropper's
// thermal noise is taken as zero (worst case), so only the users' noise
// power appears.
struct SystemConfig {
  int num_bs_antennas = 0;    // N
  int num_users = 0;          // K
  int num_eve_antennas = 0;   // M
  double total_power = 1.0;   // P
  double noise_power = 0.1;   // sigma_n^2
  double power_alloc = 0.8;   // phi in (0, 1]
  DacModel dac;
  AnKind an_kind = AnKind::NullSpace;

  double snr_db() const;
  void set_snr_db(double db);  // noise_power = total_power / 10^(db/10)
};

// Every scalar the closed forms are written in, derived from one config.
struct DerivedParams {
  double n = 0, k = 0, m = 0;  // dimensions (real-valued to allow ratio use)
  double total_power = 0;
  double phi = 0;
  double rho = 0;        // resolved distortion factor
  double alpha = 0;      // M/N
  double beta = 0;       // K/N
  double gamma0 = 0;     // transmit SNR P/sigma_n^2
  double p = 0;          // per-user signal power  phi*P/K
  double q = 0;          // per-dimension AN power (1-phi)*P/(N-K)
  double rho_tilde = 0;  // rho/(1-rho)
  double nu = 0;         // 1-alpha-beta
  double mu = 0;         // 1-phi+rho_tilde
  double zeta = 0;       // alpha*beta*(1-phi)^2

  // Ratio-level construction for closed-form work that does not come from an
  // integer-dimension config (parameter studies, property tests).
  static DerivedParams from_ratios(double alpha, double beta, double gamma0,
                                   double phi, double rho,
                                   double n = 1024.0, double total_power = 1.0);
};

// Empty when every model assumption holds, otherwise one named violation per
// failed condition.
std::vector<std::string> validate_regime(const SystemConfig& config);

// Throws RegimeError listing the violations when the config is invalid.
// Resolves bits -> rho through the quantizer table.
DerivedParams derive_params(const SystemConfig& config);

}  // namespace secmimo
