#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "secmimo/channel.hpp"
#include "secmimo/system.hpp"

namespace secmimo {

struct MonteCarloReport {
  double user_rate = 0.0;
  double user_rate_se = 0.0;
  double eve_capacity = 0.0;
  double eve_capacity_se = 0.0;
  double secrecy_rate = 0.0;  // [user_rate - eve_capacity]^+
  double secrecy_se = 0.0;    // standard error of the per-trial difference
  int trials = 0;
  std::uint64_t seed = 0;
};

// Per-user SIQNR for one realization: desired power over inter-user
// interference + quantization noise + AN leakage + thermal noise.
Eigen::VectorXd siqnr_per_user(const ChannelRealization& real, double rho,
                               double p, double q, double noise_power);

// Mean of log2(1 + siqnr) over users.
double user_rate(const Eigen::VectorXd& siqnr);

// Capacity of an eavesdropper decoding user k, worst case: zero thermal
// noise and perfect inter-user interference cancellation. Throws RegimeError
// when the interference matrix is numerically singular (condition > 1e12).
double eve_capacity(const ChannelRealization& real, double rho, double p,
                    double q, int user_index);

// eve_capacity averaged over all users (symmetric users; lower variance).
double eve_capacity_mean(const ChannelRealization& real, double rho, double p,
                         double q);

// Trial-averaged rates over independent realizations. Per-trial seeds derive
// from (seed, trial index), and the reduction runs in fixed trial order, so
// the report is bit-identical for any thread count. threads = 0 picks the
// hardware concurrency.
MonteCarloReport run_ergodic(const SystemConfig& config, int trials,
                             std::uint64_t seed, int threads = 0);

}  // namespace secmimo
