#include "secmimo/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secmimo/errors.hpp"

namespace secmimo {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// Denominator of the inner C-bar form, (nu + alpha*beta) mu^2 - zeta.
// Positive everywhere in the valid regime except phi = 1 with rho = 0.
double inner_denominator(double alpha, double beta, double phi, double rho) {
  const double rho_tilde = rho / (1.0 - rho);
  const double mu = 1.0 - phi + rho_tilde;
  const double nu = 1.0 - alpha - beta;
  const double zeta = alpha * beta * (1.0 - phi) * (1.0 - phi);
  return (nu + alpha * beta) * mu * mu - zeta;
}

void require_nondegenerate(double alpha, double beta, double phi, double rho) {
  if (!(alpha + beta < 1.0)) throw RegimeError("invalid regime: alpha+beta>=1");
  if (inner_denominator(alpha, beta, phi, rho) <= 0.0) {
    if (phi == 1.0 && rho == 0.0)
      throw RegimeError("X singular at phi=1, rho=0");
    throw RegimeError("eavesdropper interference matrix degenerate");
  }
}

}  // namespace

DerivedParams with_phi(DerivedParams dp, double phi) {
  dp.phi = phi;
  dp.p = phi * dp.total_power / dp.k;
  dp.q = (1.0 - phi) * dp.total_power / (dp.n - dp.k);
  dp.mu = 1.0 - phi + dp.rho_tilde;
  dp.zeta = dp.alpha * dp.beta * (1.0 - phi) * (1.0 - phi);
  return dp;
}

DerivedParams with_gamma0(DerivedParams dp, double gamma0) {
  dp.gamma0 = gamma0;
  return dp;
}

double asymptotic_siqnr(const DerivedParams& dp, double rho, AnKind an_kind) {
  const double signal = (1.0 - rho) * (1.0 / dp.beta - 1.0) * dp.phi * dp.gamma0;
  double interference = rho * dp.gamma0 + 1.0;
  if (an_kind == AnKind::Random)
    interference += (1.0 - rho) * (1.0 - dp.phi) * dp.gamma0;
  return signal / interference;
}

double user_rate_bound(const DerivedParams& dp, double rho, AnKind an_kind) {
  return log2_1p(asymptotic_siqnr(dp, rho, an_kind));
}

double eve_capacity_bound(const DerivedParams& dp, double rho) {
  require_nondegenerate(dp.alpha, dp.beta, dp.phi, rho);
  const double rho_tilde = rho / (1.0 - rho);
  const double one_minus_phi = 1.0 - dp.phi;
  const double num =
      (dp.alpha / dp.beta) * dp.phi * (one_minus_phi + rho_tilde);
  const double den =
      (1.0 - dp.alpha / (1.0 - dp.beta)) * one_minus_phi * one_minus_phi +
      2.0 * (1.0 - dp.alpha) * one_minus_phi * rho_tilde +
      (1.0 - dp.alpha) * rho_tilde * rho_tilde;
  return log2_1p(num / den);
}

double eve_capacity_bound_inner(const DerivedParams& dp, double rho) {
  require_nondegenerate(dp.alpha, dp.beta, dp.phi, rho);
  const double rho_tilde = rho / (1.0 - rho);
  const double mu = 1.0 - dp.phi + rho_tilde;
  const double num = dp.alpha * dp.phi * (1.0 / dp.beta - 1.0) * mu;
  return log2_1p(num / inner_denominator(dp.alpha, dp.beta, dp.phi, rho));
}

RateBreakdown secrecy_bound(const DerivedParams& dp, double rho,
                            AnKind an_kind) {
  RateBreakdown out;
  out.an_kind = an_kind;
  out.user_rate = user_rate_bound(dp, rho, an_kind);
  out.eve_capacity_bound = eve_capacity_bound_inner(dp, rho);
  out.secrecy_bound = std::max(0.0, out.user_rate - out.eve_capacity_bound);
  return out;
}

std::optional<double> beta_bar(double alpha, double phi, double rho_tilde) {
  if (phi >= 1.0) return std::nullopt;  // no AN, C-bar monotone in beta
  const double one_minus_phi = 1.0 - phi;
  const double num = alpha * one_minus_phi * one_minus_phi;
  const double den =
      (1.0 - alpha) * (one_minus_phi + rho_tilde) * (one_minus_phi + rho_tilde) +
      num;
  return 1.0 - std::sqrt(num / den);
}

double alpha_bar(const DerivedParams& dp, double rho, AnKind an_kind) {
  const double g0 = dp.gamma0;
  const double common = 1.0 - dp.beta * g0 * rho * (2.0 - rho);
  const double den = an_kind == AnKind::NullSpace
                         ? (rho + 1.0) * g0 + common
                         : 2.0 * g0 + common;
  return (1.0 - dp.beta) * g0 / den;
}

QuadraticCoeffs rho_derivative_coeffs(const DerivedParams& dp,
                                      AnKind an_kind) {
  const double alpha = dp.alpha, beta = dp.beta, phi = dp.phi;
  const double nu = dp.nu;
  const double inv_beta_m1 = 1.0 / beta - 1.0;
  const double one_minus_phi = 1.0 - phi;

  QuadraticCoeffs qc;
  qc.a = -nu * one_minus_phi * phi *
         (nu * one_minus_phi + alpha * phi * inv_beta_m1);
  qc.b = 2.0 * alpha * alpha * phi * phi * (1.0 - beta) +
         alpha * phi * phi * phi * nu * inv_beta_m1 -
         nu * nu * one_minus_phi * one_minus_phi * phi;
  qc.c = alpha * phi * (nu + 2.0 * alpha * beta);
  qc.d = std::numbers::ln2 * nu * one_minus_phi *
         (nu * one_minus_phi * beta / (1.0 - beta) + alpha * phi) *
         (inv_beta_m1 * phi * dp.gamma0 + 1.0);

  if (an_kind == AnKind::Random) {
    const double cross = alpha * phi * one_minus_phi *
                         (nu + 2.0 * alpha * beta);
    qc.a += cross * (inv_beta_m1 * phi + one_minus_phi);
    qc.b += 2.0 * cross;
    qc.d *= one_minus_phi * dp.gamma0 + 1.0;
    qc.d *= inv_beta_m1 * phi * dp.gamma0 + one_minus_phi * dp.gamma0 + 1.0;
    qc.d /= inv_beta_m1 * phi * dp.gamma0 + 1.0;
  }
  return qc;
}

double positive_quadratic_root(const QuadraticCoeffs& coeffs) {
  if (coeffs.a >= 0.0)
    throw NumericError("no positive root: quadratic opens upward (a >= 0)");
  const double disc = coeffs.b * coeffs.b - 4.0 * coeffs.a * coeffs.c;
  if (disc < 0.0) throw NumericError("no positive root: negative discriminant");
  const double root =
      (-coeffs.b - std::sqrt(disc)) / (2.0 * coeffs.a);
  if (!(root > 0.0)) throw NumericError("no positive root");
  return root;
}

double snr_threshold(const DerivedParams& dp, AnKind an_kind) {
  return positive_quadratic_root(rho_derivative_coeffs(dp, an_kind));
}

double phi_derivative(const DerivedParams& dp, double rho, double phi,
                      AnKind an_kind) {
  if (an_kind == AnKind::Random) {
    // The random-AN derivative has no printed closed form; centered
    // difference of the exact bound.
    const double h = 1e-6;
    const double hi =
        secrecy_bound(with_phi(dp, phi + h), rho, an_kind).secrecy_bound;
    const double lo =
        secrecy_bound(with_phi(dp, phi - h), rho, an_kind).secrecy_bound;
    return (hi - lo) / (2.0 * h);
  }

  const double alpha = dp.alpha, beta = dp.beta, g0 = dp.gamma0;
  const double nu = dp.nu;
  const double rho_tilde = rho / (1.0 - rho);
  const double mu = 1.0 - phi + rho_tilde;
  const double zeta = alpha * beta * (1.0 - phi) * (1.0 - phi);
  const double inv_beta_m1 = 1.0 / beta - 1.0;
  const double ln2 = std::numbers::ln2;

  const double user_term =
      (1.0 - rho) * inv_beta_m1 * g0 /
      (ln2 * (rho * g0 + 1.0 + (1.0 - rho) * inv_beta_m1 * g0 * phi));

  const double na = nu + alpha * beta;
  const double denom = na * mu * mu - zeta;
  const double eve_num =
      alpha * inv_beta_m1 *
      (na * mu * mu / (1.0 - rho) -
       2.0 * alpha * beta * mu * phi * (1.0 - phi) -
       alpha * beta * (1.0 - phi) * (1.0 - phi) * (mu - phi));
  const double eve_term =
      eve_num / (ln2 * denom * (denom + alpha * phi * inv_beta_m1 * mu));

  return user_term - eve_term;
}

double phi_derivative_approx(const DerivedParams& dp, double rho, double phi) {
  // alpha*beta << 1 specialization of the null-space derivative.
  const double alpha = dp.alpha, beta = dp.beta, g0 = dp.gamma0;
  const double nu = dp.nu;
  const double rho_tilde = rho / (1.0 - rho);
  const double mu = 1.0 - phi + rho_tilde;
  const double inv_beta_m1 = 1.0 / beta - 1.0;
  const double ln2 = std::numbers::ln2;

  const double user_term =
      (1.0 - rho) * inv_beta_m1 * g0 /
      (ln2 * (rho * g0 + 1.0 + (1.0 - rho) * inv_beta_m1 * g0 * phi));
  const double eve_term =
      alpha * inv_beta_m1 /
      ((1.0 - rho) * ln2 * (nu * mu * mu + alpha * phi * inv_beta_m1 * mu));
  return user_term - eve_term;
}

double optimal_phi_closed(const DerivedParams& dp, double rho,
                          AnKind an_kind) {
  const double alpha = dp.alpha, beta = dp.beta, g0 = dp.gamma0;
  const double nu = dp.nu;
  const double load = 1.0 - beta - alpha / beta;

  double phi_star;
  if (an_kind == AnKind::NullSpace) {
    const double disc = nu * nu + (alpha * rho + alpha / g0 - nu) * load;
    if (disc < 0.0)
      throw NumericError("optimal_phi_closed: negative discriminant");
    phi_star = (nu - std::sqrt(disc)) / ((1.0 - rho) * load);
  } else {
    const double inner =
        alpha * (1.0 + g0) *
        ((1.0 / beta - 1.0) * (nu - alpha) + load / g0);
    if (inner < 0.0)
      throw NumericError("optimal_phi_closed: negative discriminant");
    const double den = (1.0 - rho) * (load + g0 * (nu - alpha));
    if (den == 0.0) throw NumericError("optimal_phi_closed: no solution");
    phi_star = ((1.0 + g0) * (nu - alpha) - std::sqrt(inner)) / den;
  }

  if (!(phi_star > 0.0))
    throw NumericError("optimal_phi_closed: no solution in (0,1]");
  return std::min(phi_star, 1.0);
}

WishartMatch wishart_moment_match(const DerivedParams& dp, double rho) {
  require_nondegenerate(dp.alpha, dp.beta, dp.phi, rho);
  const double linear = (1.0 - rho) * (1.0 - dp.phi) + rho;
  const double spread = (1.0 - rho) * (1.0 - dp.phi);
  const double mix = linear * linear +
                     spread * spread * dp.k / (dp.n - dp.k);
  WishartMatch match;
  match.eta = dp.n * linear * linear / mix;
  match.lambda = dp.total_power / dp.n * mix / linear;
  if (!(match.eta - dp.m > 0.0))
    throw RegimeError("wishart_moment_match: eta <= M (alpha+beta >= 1?)");
  return match;
}

double eve_capacity_bound_from_match(const DerivedParams& dp, double rho) {
  const WishartMatch match = wishart_moment_match(dp, rho);
  return log2_1p((1.0 - rho) * dp.p * dp.m /
                 (match.lambda * (match.eta - dp.m)));
}

ThresholdSet threshold_set(const DerivedParams& dp, double rho,
                           AnKind an_kind) {
  ThresholdSet set;
  set.beta_bar = beta_bar(dp.alpha, dp.phi, rho / (1.0 - rho));
  set.alpha_bar = alpha_bar(dp, rho, an_kind);
  try {
    set.snr_threshold = snr_threshold(dp, an_kind);
  } catch (const NumericError&) {
    set.snr_threshold = std::nullopt;
  }
  return set;
}

}  // namespace secmimo
