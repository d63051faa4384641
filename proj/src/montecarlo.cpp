#include "secmimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "secmimo/errors.hpp"
#include "secmimo/quantizer.hpp"

namespace secmimo {

namespace {

constexpr double kConditionCap = 1e12;

// diag(p W W^H + q V V^H), scaled by rho: the quantization-noise covariance
// diagonal for this realization.
Eigen::VectorXd quantization_cov_diag(const ChannelRealization& real,
                                      double rho, double p, double q) {
  return rho * (p * real.precoder.rowwise().squaredNorm() +
                q * real.an_shaping.rowwise().squaredNorm())
             .eval();
}

// Eigendecomposition of the eavesdropper's interference-plus-quantization
// matrix, with the singularity cap applied.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eve_interference_eig(
    const ChannelRealization& real, double rho, double p, double q) {
  const Eigen::VectorXd cov = quantization_cov_diag(real, rho, p, q);
  const Eigen::MatrixXcd mixed = real.eve_channel * real.an_shaping;
  Eigen::MatrixXcd x = (1.0 - rho) * q * (mixed * mixed.adjoint());
  x += (real.eve_channel * cov.asDiagonal()) * real.eve_channel.adjoint();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(x);
  const auto& values = eig.eigenvalues();
  if (values.minCoeff() <= 0.0 ||
      values.maxCoeff() / values.minCoeff() > kConditionCap) {
    if (rho == 0.0 && q == 0.0)
      throw RegimeError("X singular at phi=1, rho=0");
    throw RegimeError(
        "eve interference matrix numerically singular (condition > 1e12)");
  }
  return eig;
}

double eve_capacity_from_eig(
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& eig,
    const Eigen::VectorXcd& steered, double rho, double p) {
  const Eigen::VectorXcd rotated = eig.eigenvectors().adjoint() * steered;
  const double quad =
      (rotated.cwiseAbs2().array() / eig.eigenvalues().array()).sum();
  return std::log1p((1.0 - rho) * p * quad) / std::numbers::ln2;
}

struct TrialRates {
  double user = 0.0;
  double eve = 0.0;
};

TrialRates run_trial(const SystemConfig& config, const DerivedParams& dp,
                     std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  const ChannelRealization real = make_realization(config, rng);
  TrialRates rates;
  rates.user = user_rate(
      siqnr_per_user(real, dp.rho, dp.p, dp.q, config.noise_power));
  rates.eve = eve_capacity_mean(real, dp.rho, dp.p, dp.q);
  return rates;
}

}  // namespace

Eigen::VectorXd siqnr_per_user(const ChannelRealization& real, double rho,
                               double p, double q, double noise_power) {
  const Eigen::MatrixXcd effective = real.user_channel * real.precoder;
  const Eigen::VectorXd diag_power = effective.diagonal().cwiseAbs2();
  const Eigen::VectorXd row_power = effective.rowwise().squaredNorm();

  const Eigen::VectorXd cov = quantization_cov_diag(real, rho, p, q);
  const Eigen::VectorXd quant_noise = real.user_channel.cwiseAbs2() * cov;
  const Eigen::VectorXd an_leakage =
      (1.0 - rho) * q *
      (real.user_channel * real.an_shaping).rowwise().squaredNorm();

  const Eigen::VectorXd signal = (1.0 - rho) * p * diag_power;
  const Eigen::VectorXd interference =
      (1.0 - rho) * p * (row_power - diag_power);
  const Eigen::ArrayXd denom =
      (interference + quant_noise + an_leakage).array() + noise_power;
  return (signal.array() / denom).matrix();
}

double user_rate(const Eigen::VectorXd& siqnr) {
  return (siqnr.array() + 1.0).log().sum() /
         (std::numbers::ln2 * static_cast<double>(siqnr.size()));
}

double eve_capacity(const ChannelRealization& real, double rho, double p,
                    double q, int user_index) {
  const auto eig = eve_interference_eig(real, rho, p, q);
  const Eigen::VectorXcd steered =
      real.eve_channel * real.precoder.col(user_index);
  return eve_capacity_from_eig(eig, steered, rho, p);
}

double eve_capacity_mean(const ChannelRealization& real, double rho, double p,
                         double q) {
  const auto eig = eve_interference_eig(real, rho, p, q);
  const Eigen::MatrixXcd steered = real.eve_channel * real.precoder;
  double sum = 0.0;
  for (Eigen::Index k = 0; k < steered.cols(); ++k)
    sum += eve_capacity_from_eig(eig, steered.col(k), rho, p);
  return sum / static_cast<double>(steered.cols());
}

MonteCarloReport run_ergodic(const SystemConfig& config, int trials,
                             std::uint64_t seed, int threads) {
  if (trials < 1) throw RegimeError("run_ergodic: trials must be >= 1");
  const DerivedParams dp = derive_params(config);

  std::vector<TrialRates> results(trials);
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, trials);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      try {
        results[t] = run_trial(config, dp, derive_seed(seed, t));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Fixed-order reduction: results are independent of the thread count.
  double sum_u = 0.0, sum_e = 0.0, sum_d = 0.0;
  for (const auto& r : results) {
    sum_u += r.user;
    sum_e += r.eve;
    sum_d += r.user - r.eve;
  }
  const double n = trials;
  const double mean_u = sum_u / n, mean_e = sum_e / n, mean_d = sum_d / n;
  double var_u = 0.0, var_e = 0.0, var_d = 0.0;
  for (const auto& r : results) {
    var_u += (r.user - mean_u) * (r.user - mean_u);
    var_e += (r.eve - mean_e) * (r.eve - mean_e);
    const double d = r.user - r.eve - mean_d;
    var_d += d * d;
  }
  const double norm = trials > 1 ? 1.0 / (n * (n - 1.0)) : 0.0;

  MonteCarloReport report;
  report.user_rate = mean_u;
  report.user_rate_se = std::sqrt(var_u * norm);
  report.eve_capacity = mean_e;
  report.eve_capacity_se = std::sqrt(var_e * norm);
  report.secrecy_rate = std::max(0.0, mean_u - mean_e);
  report.secrecy_se = std::sqrt(var_d * norm);
  report.trials = trials;
  report.seed = seed;
  return report;
}

}  // namespace secmimo
