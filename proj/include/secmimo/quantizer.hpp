#pragma once

#include <Eigen/Dense>
#include <vector>

#include "secmimo/rng.hpp"
#include "secmimo/system.hpp"

namespace secmimo {

// Minimum-MSE scalar quantizer for a zero-mean unit-variance real Gaussian.
// `distortion` is the normalized MSE, i.e. the distortion factor rho of the
// linearized DAC model.
struct QuantizerSpec {
  int bits = 0;
  std::vector<double> levels;      // 2^bits reproduction points, increasing
  std::vector<double> thresholds;  // 2^bits - 1 decision boundaries
  double distortion = 0.0;         // rho in (0,1)
};

// Fixed-point of the Lloyd-Max iteration (centroid / midpoint conditions) on
// the unit-variance Gaussian. Distortion is evaluated by per-interval
// Gauss-Legendre quadrature. Throws NumericError on non-convergence.
QuantizerSpec lloyd_max_design(int bits, double tolerance = 1e-11);

// rho for a DAC description: explicit value passes through, bits resolve via
// a cached Lloyd-Max table, ideal is 0.
double distortion_factor(const DacModel& dac);

// Statistical linearized-DAC model: sqrt(1-rho)*x plus a fresh complex
// Gaussian draw with diagonal covariance rho*cov_diag. cov_diag is the
// diagonal of p*W*W^H + q*V*V^H for the current realization.
Eigen::VectorXcd bussgang_quantize(const Eigen::VectorXcd& x, double rho,
                                   const Eigen::VectorXd& cov_diag, Rng& rng);

// Actual table-lookup quantizer, applied per real/imaginary component after
// normalizing by `scale` (the per-component standard deviation). Ties at a
// threshold map to the higher-index level.
Eigen::VectorXcd scalar_quantize(const Eigen::VectorXcd& x,
                                 const QuantizerSpec& spec, double scale);

struct BussgangEstimate {
  double gain = 0.0;               // least-squares coefficient of out on in
  double residual_rho = 0.0;       // residual power / input power
  double cross_correlation = 0.0;  // |corr(residual, input)|
};

// Empirical decomposition of a (possibly nonlinear) map into a linear gain
// plus residual, from paired samples. Throws NumericError on degenerate
// (zero-variance) input.
BussgangEstimate estimate_bussgang(const Eigen::VectorXcd& inputs,
                                   const Eigen::VectorXcd& outputs);

}  // namespace secmimo
