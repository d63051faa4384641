#include "secmimo/system.hpp"

#include <cmath>
#include <sstream>

#include "secmimo/errors.hpp"
#include "secmimo/quantizer.hpp"

namespace secmimo {

const char* to_string(AnKind kind) {
  return kind == AnKind::NullSpace ? "null" : "random";
}

double SystemConfig::snr_db() const {
  return 10.0 * std::log10(total_power / noise_power);
}

void SystemConfig::set_snr_db(double db) {
  noise_power = total_power / std::pow(10.0, db / 10.0);
}

std::vector<std::string> validate_regime(const SystemConfig& config) {
  std::vector<std::string> out;
  if (config.num_bs_antennas <= 0) out.push_back("N<=0");
  if (config.num_users <= 0) out.push_back("K<=0");
  if (config.num_eve_antennas <= 0) out.push_back("M<=0");
  if (config.num_users >= config.num_bs_antennas) out.push_back("K>=N");
  if (config.num_eve_antennas + config.num_users >= config.num_bs_antennas)
    out.push_back("alpha+beta>=1");
  if (!(config.total_power > 0.0)) out.push_back("P<=0");
  if (!(config.noise_power > 0.0)) out.push_back("noise_power<=0");
  if (!(config.power_alloc > 0.0 && config.power_alloc <= 1.0))
    out.push_back("phi not in (0,1]");
  switch (config.dac.kind) {
    case DacModel::Kind::Bits:
      if (config.dac.bits < 1 || config.dac.bits > 8)
        out.push_back("dac bits not in [1,8]");
      break;
    case DacModel::Kind::Rho:
      if (!(config.dac.rho >= 0.0 && config.dac.rho < 1.0))
        out.push_back("rho not in [0,1)");
      break;
    case DacModel::Kind::Ideal:
      break;
  }
  return out;
}

DerivedParams derive_params(const SystemConfig& config) {
  const auto violations = validate_regime(config);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid regime:";
    for (const auto& v : violations) msg << " " << v;
    throw RegimeError(msg.str());
  }

  DerivedParams dp;
  dp.n = config.num_bs_antennas;
  dp.k = config.num_users;
  dp.m = config.num_eve_antennas;
  dp.total_power = config.total_power;
  dp.phi = config.power_alloc;
  dp.rho = distortion_factor(config.dac);
  dp.alpha = dp.m / dp.n;
  dp.beta = dp.k / dp.n;
  dp.gamma0 = config.total_power / config.noise_power;
  dp.p = dp.phi * dp.total_power / dp.k;
  dp.q = (1.0 - dp.phi) * dp.total_power / (dp.n - dp.k);
  dp.rho_tilde = dp.rho / (1.0 - dp.rho);
  dp.nu = 1.0 - dp.alpha - dp.beta;
  dp.mu = 1.0 - dp.phi + dp.rho_tilde;
  dp.zeta = dp.alpha * dp.beta * (1.0 - dp.phi) * (1.0 - dp.phi);
  return dp;
}

DerivedParams DerivedParams::from_ratios(double alpha, double beta,
                                         double gamma0, double phi, double rho,
                                         double n, double total_power) {
  if (!(alpha > 0.0 && beta > 0.0 && beta < 1.0 && alpha + beta < 1.0))
    throw RegimeError("invalid regime: alpha+beta>=1 or beta out of (0,1)");
  DerivedParams dp;
  dp.n = n;
  dp.k = beta * n;
  dp.m = alpha * n;
  dp.total_power = total_power;
  dp.phi = phi;
  dp.rho = rho;
  dp.alpha = alpha;
  dp.beta = beta;
  dp.gamma0 = gamma0;
  dp.p = phi * total_power / dp.k;
  dp.q = (1.0 - phi) * total_power / (dp.n - dp.k);
  dp.rho_tilde = rho / (1.0 - rho);
  dp.nu = 1.0 - alpha - beta;
  dp.mu = 1.0 - phi + dp.rho_tilde;
  dp.zeta = alpha * beta * (1.0 - phi) * (1.0 - phi);
  return dp;
}

}  // namespace secmimo
