#include "secmimo/quantizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "secmimo/errors.hpp"

namespace secmimo {

namespace {

constexpr int kMaxLloydIterations = 500000;

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Inverse CDF by bisection; only used to seed the iteration.
double normal_quantile(double u) {
  double lo = -12.0, hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Conditional mean of a standard Gaussian restricted to (a, b).
double interval_centroid(double a, double b) {
  const double pa = std::isinf(a) ? 0.0 : normal_pdf(a);
  const double pb = std::isinf(b) ? 0.0 : normal_pdf(b);
  const double mass = normal_cdf(b) - normal_cdf(a);
  return (pa - pb) / mass;
}

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror).
constexpr std::array<double, 16> kGlNodes = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
    0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
    0.5877157572407623290, 0.6630442669302152010, 0.7321821187402896804,
    0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
    0.9972638618494815635};
constexpr std::array<double, 16> kGlWeights = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
    0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
    0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
    0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
    0.0070186100094700966};

template <typename F>
double gauss_legendre(F f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    sum += kGlWeights[i] * (f(c + h * kGlNodes[i]) + f(c - h * kGlNodes[i]));
  }
  return h * sum;
}

// Quantizer MSE on the unit-variance Gaussian by composite quadrature over
// each decision interval (tails truncated where the density is ~1e-40).
double quantizer_mse(const std::vector<double>& levels,
                     const std::vector<double>& thresholds) {
  const double edge = std::max(14.0, std::abs(levels.back()) + 14.0);
  double mse = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double a = (i == 0) ? -edge : thresholds[i - 1];
    const double b = (i == levels.size() - 1) ? edge : thresholds[i];
    const double y = levels[i];
    auto integrand = [y](double x) {
      const double d = x - y;
      return d * d * normal_pdf(x);
    };
    const int pieces = std::max(1, static_cast<int>(std::ceil(b - a)));
    for (int j = 0; j < pieces; ++j) {
      const double lo = a + (b - a) * j / pieces;
      const double hi = a + (b - a) * (j + 1) / pieces;
      mse += gauss_legendre(integrand, lo, hi);
    }
  }
  return mse;
}

}  // namespace

QuantizerSpec lloyd_max_design(int bits, double tolerance) {
  if (bits < 1 || bits > 8) throw RegimeError("dac bits not in [1,8]");
  if (!(tolerance > 0.0)) throw RegimeError("tolerance must be positive");

  const int num_levels = 1 << bits;
  std::vector<double> levels(num_levels);
  for (int i = 0; i < num_levels; ++i)
    levels[i] = normal_quantile((i + 0.5) / num_levels);

  std::vector<double> thresholds(num_levels - 1);
  bool converged = false;
  for (int it = 0; it < kMaxLloydIterations && !converged; ++it) {
    for (int i = 0; i + 1 < num_levels; ++i)
      thresholds[i] = 0.5 * (levels[i] + levels[i + 1]);
    double delta = 0.0;
    for (int i = 0; i < num_levels; ++i) {
      const double a = (i == 0) ? -std::numeric_limits<double>::infinity()
                                : thresholds[i - 1];
      const double b = (i == num_levels - 1)
                           ? std::numeric_limits<double>::infinity()
                           : thresholds[i];
      const double next = interval_centroid(a, b);
      delta = std::max(delta, std::abs(next - levels[i]));
      levels[i] = next;
    }
    // Kill symmetry drift; the optimum is odd-symmetric.
    for (int i = 0; i < num_levels / 2; ++i) {
      const double v = 0.5 * (levels[num_levels - 1 - i] - levels[i]);
      levels[i] = -v;
      levels[num_levels - 1 - i] = v;
    }
    converged = delta < tolerance;
  }
  if (!converged)
    throw NumericError("lloyd_max_design: no fixed point within iteration cap");

  for (int i = 0; i + 1 < num_levels; ++i)
    thresholds[i] = 0.5 * (levels[i] + levels[i + 1]);

  QuantizerSpec spec;
  spec.bits = bits;
  spec.levels = std::move(levels);
  spec.thresholds = std::move(thresholds);
  spec.distortion = quantizer_mse(spec.levels, spec.thresholds);
  return spec;
}

double distortion_factor(const DacModel& dac) {
  switch (dac.kind) {
    case DacModel::Kind::Ideal:
      return 0.0;
    case DacModel::Kind::Rho:
      if (!(dac.rho >= 0.0 && dac.rho < 1.0))
        throw RegimeError("rho not in [0,1)");
      return dac.rho;
    case DacModel::Kind::Bits:
      break;
  }
  if (dac.bits < 1 || dac.bits > 8) throw RegimeError("dac bits not in [1,8]");

  static std::mutex table_mutex;
  static std::array<double, 9> table{};
  static std::array<bool, 9> have{};
  std::lock_guard<std::mutex> lock(table_mutex);
  if (!have[dac.bits]) {
    table[dac.bits] = lloyd_max_design(dac.bits).distortion;
    have[dac.bits] = true;
  }
  return table[dac.bits];
}

Eigen::VectorXcd bussgang_quantize(const Eigen::VectorXcd& x, double rho,
                                   const Eigen::VectorXd& cov_diag, Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) throw RegimeError("rho not in [0,1)");
  if (cov_diag.size() != x.size())
    throw NumericError("bussgang_quantize: cov_diag size mismatch");
  if ((cov_diag.array() < 0.0).any())
    throw NumericError("bussgang_quantize: negative cov_diag entry");
  if (rho == 0.0) return x;

  Eigen::VectorXcd out(x.size());
  const double gain = std::sqrt(1.0 - rho);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out(i) = gain * x(i) + complex_gaussian(rng, rho * cov_diag(i));
  return out;
}

Eigen::VectorXcd scalar_quantize(const Eigen::VectorXcd& x,
                                 const QuantizerSpec& spec, double scale) {
  if (!(scale > 0.0)) throw RegimeError("scale must be positive");
  auto component = [&spec, scale](double v) {
    // upper_bound puts a value equal to a threshold into the higher bucket.
    const auto it = std::upper_bound(spec.thresholds.begin(),
                                     spec.thresholds.end(), v / scale);
    return scale * spec.levels[static_cast<std::size_t>(
                       it - spec.thresholds.begin())];
  };
  Eigen::VectorXcd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out(i) = {component(x(i).real()), component(x(i).imag())};
  return out;
}

BussgangEstimate estimate_bussgang(const Eigen::VectorXcd& inputs,
                                   const Eigen::VectorXcd& outputs) {
  if (inputs.size() != outputs.size() || inputs.size() == 0)
    throw NumericError("estimate_bussgang: size mismatch");
  const double in_power = inputs.squaredNorm();
  if (in_power <= 0.0)
    throw NumericError("estimate_bussgang: degenerate zero-variance input");

  const std::complex<double> g = inputs.dot(outputs) / in_power;
  const Eigen::VectorXcd residual = outputs - g * inputs;
  const double res_power = residual.squaredNorm();

  BussgangEstimate est;
  est.gain = g.real();
  est.residual_rho = res_power / in_power;
  est.cross_correlation =
      res_power > 0.0
          ? std::abs(inputs.dot(residual)) / std::sqrt(in_power * res_power)
          : 0.0;
  return est;
}

}  // namespace secmimo
