#pragma once

#include <optional>

#include "secmimo/system.hpp"

namespace secmimo {

// Asymptotic (large-system) rate pieces for one parameter point.
struct RateBreakdown {
  double user_rate = 0.0;           // R
  double eve_capacity_bound = 0.0;  // C-bar
  double secrecy_bound = 0.0;       // [R - C-bar]^+
  AnKind an_kind = AnKind::NullSpace;
};

// Coefficients of the quadratic (in the transmit SNR) whose positive root is
// the resolution crossover SNR. a, b, c are the rho->0 specialization; d is
// the positive denominator scale at the config's SNR.
struct QuadraticCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

struct ThresholdSet {
  std::optional<double> beta_bar;       // user-loading minimizer of C-bar
  std::optional<double> alpha_bar;      // max eve-antenna ratio for secrecy
  std::optional<double> snr_threshold;  // linear; low/high resolution crossover
};

struct WishartMatch {
  double eta = 0.0;     // equivalent degrees of freedom
  double lambda = 0.0;  // equivalent scale
};

// Copies of a parameter point with one knob moved; everything derived from
// phi (p, q, mu, zeta) is recomputed.
DerivedParams with_phi(DerivedParams dp, double phi);
DerivedParams with_gamma0(DerivedParams dp, double gamma0);

// Large-system SIQNR limit of each user.
double asymptotic_siqnr(const DerivedParams& dp, double rho, AnKind an_kind);

// log2(1 + asymptotic_siqnr)
double user_rate_bound(const DerivedParams& dp, double rho, AnKind an_kind);

// Upper bound on the eavesdropper's ergodic capacity (direct form). Throws
// RegimeError when the interference matrix degenerates (alpha+beta >= 1, or
// no AN together with an ideal DAC).
double eve_capacity_bound(const DerivedParams& dp, double rho);

// Same bound written in (nu, mu, zeta); kept as an independent evaluation
// route, the two must agree to ~1e-12.
double eve_capacity_bound_inner(const DerivedParams& dp, double rho);

// [user rate - C-bar]^+ with the inner-form C-bar.
RateBreakdown secrecy_bound(const DerivedParams& dp, double rho,
                            AnKind an_kind);

// User-loading ratio that minimizes C-bar over (0, 1-alpha); undefined
// (nullopt) without AN (phi = 1).
std::optional<double> beta_bar(double alpha, double phi, double rho_tilde);

// Eve-antenna ratio above which no positive secrecy rate is achievable
// (derived in the all-power-to-AN limit).
double alpha_bar(const DerivedParams& dp, double rho, AnKind an_kind);

// rho->0 coefficients of the resolution-crossover quadratic.
QuadraticCoeffs rho_derivative_coeffs(const DerivedParams& dp, AnKind an_kind);

// Positive root of a*x^2 + b*x + c; throws NumericError when none exists.
double positive_quadratic_root(const QuadraticCoeffs& coeffs);

// Crossover SNR (linear): below it lower DAC resolution raises the secrecy
// bound, above it higher resolution wins.
double snr_threshold(const DerivedParams& dp, AnKind an_kind);

// d(secrecy bound)/d(phi) at an arbitrary phi. Closed form for null-space
// AN; centered finite difference of the bound for random AN.
double phi_derivative(const DerivedParams& dp, double rho, double phi,
                      AnKind an_kind);

// Light-load (alpha*beta << 1) approximation of the null-space derivative;
// the closed-form optimal phi is its exact root.
double phi_derivative_approx(const DerivedParams& dp, double rho, double phi);

// Closed-form near-optimal power allocation, clamped to 1 from above.
// Throws NumericError when the formula has no real solution in (0, 1]
// (callers fall back to the numeric optimizer).
double optimal_phi_closed(const DerivedParams& dp, double rho, AnKind an_kind);

// Moment-matched Wishart surrogate (eta, lambda) of the eavesdropper's
// interference matrix; log2(1 + (1-rho) p M / (lambda (eta - M))) rebuilds
// C-bar exactly.
WishartMatch wishart_moment_match(const DerivedParams& dp, double rho);
double eve_capacity_bound_from_match(const DerivedParams& dp, double rho);

// beta_bar / alpha_bar / snr_threshold bundle for reporting.
ThresholdSet threshold_set(const DerivedParams& dp, double rho,
                           AnKind an_kind);

}  // namespace secmimo
