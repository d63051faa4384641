#include "secmimo/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "secmimo/errors.hpp"

namespace secmimo {

namespace {

constexpr int kCoarsePoints = 64;

// Secrecy bound as a function of phi, extended by continuity to the
// singular no-AN/ideal-DAC corner (the clamp sends it to zero there).
double objective(const DerivedParams& dp, double rho, AnKind an_kind,
                 double phi) {
  try {
    return secrecy_bound(with_phi(dp, phi), rho, an_kind).secrecy_bound;
  } catch (const RegimeError&) {
    return 0.0;
  }
}

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

template <typename F>
GoldenResult golden_section_max(F f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int iterations = 0;
  while (b - a > tol) {
    ++iterations;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  GoldenResult out;
  out.x = 0.5 * (a + b);
  out.value = f(out.x);
  out.iterations = iterations;
  return out;
}

}  // namespace

OptResult maximize_phi(const DerivedParams& dp, double rho, AnKind an_kind,
                       double tol) {
  if (!(tol > 0.0)) throw RegimeError("maximize_phi: tol must be positive");
  auto f = [&](double phi) { return objective(dp, rho, an_kind, phi); };

  std::array<double, kCoarsePoints + 1> grid_value{};
  grid_value[0] = 0.0;  // phi -> 0+ limit
  for (int i = 1; i <= kCoarsePoints; ++i)
    grid_value[i] = f(static_cast<double>(i) / kCoarsePoints);

  // Strict interior maxima plus the global grid argmax; plateaus (clamped
  // zero-secrecy stretches) are not bracketed.
  int global = 1;
  for (int i = 2; i <= kCoarsePoints; ++i)
    if (grid_value[i] > grid_value[global]) global = i;
  std::vector<int> candidates;
  for (int i = 1; i <= kCoarsePoints; ++i) {
    const bool strict_left = grid_value[i] > grid_value[i - 1];
    const bool strict_right =
        i == kCoarsePoints || grid_value[i] > grid_value[i + 1];
    if ((strict_left && strict_right) || i == global) candidates.push_back(i);
  }

  OptResult result;
  result.method = OptResult::Method::GoldenSection;
  result.value = -1.0;
  for (int i : candidates) {
    const double lo = static_cast<double>(i - 1) / kCoarsePoints;
    const double hi = std::min(1.0, static_cast<double>(i + 1) / kCoarsePoints);
    const GoldenResult refined = golden_section_max(f, lo, hi, tol);
    result.iterations += refined.iterations;

    // The boundary maximum at phi = 1 beats any interior refinement there.
    double x = refined.x, value = refined.value;
    if (i == kCoarsePoints && grid_value[kCoarsePoints] > value) {
      x = 1.0;
      value = grid_value[kCoarsePoints];
    }
    if (result.local_maxima.empty() ||
        std::abs(result.local_maxima.back() - x) > 1.0 / kCoarsePoints)
      result.local_maxima.push_back(x);
    if (value > result.value) {
      result.value = value;
      result.phi_star = x;
    }
  }
  return result;
}

double find_snr_threshold_numeric(const DerivedParams& dp, AnKind an_kind,
                                  double rho_probe) {
  if (!(rho_probe > 0.0 && rho_probe < 0.5))
    throw RegimeError("find_snr_threshold_numeric: rho_probe out of range");
  const double h = 0.5 * rho_probe;
  auto slope = [&](double gamma0) {
    const DerivedParams at = with_gamma0(dp, gamma0);
    const double hi =
        secrecy_bound(at, rho_probe + h, an_kind).secrecy_bound;
    const double lo =
        secrecy_bound(at, rho_probe - h, an_kind).secrecy_bound;
    return (hi - lo) / (2.0 * h);
  };

  // Geometric scan for a +/- sign pattern; clamped-zero regions carry no
  // sign information and are skipped.
  constexpr double kGammaMin = 1e-3, kGammaMax = 1e9, kEps = 1e-13;
  double prev_gamma = 0.0;
  bool have_positive = false;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  for (double gamma = kGammaMin; gamma <= kGammaMax; gamma *= 2.0) {
    const double s = slope(gamma);
    if (s > kEps) {
      have_positive = true;
      prev_gamma = gamma;
    } else if (s < -kEps && have_positive) {
      bracket_lo = prev_gamma;
      bracket_hi = gamma;
      break;
    }
  }
  if (bracket_hi == 0.0)
    throw NumericError(
        "find_snr_threshold_numeric: no sign change (secrecy rate zero or "
        "monotone in rho)");

  for (int i = 0; i < 200 && bracket_hi - bracket_lo >
                                1e-12 * std::max(1.0, bracket_lo);
       ++i) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    (slope(mid) > 0.0 ? bracket_lo : bracket_hi) = mid;
  }
  return 0.5 * (bracket_lo + bracket_hi);
}

}  // namespace secmimo
