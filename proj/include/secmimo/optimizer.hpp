#pragma once

#include <vector>

#include "secmimo/analytic.hpp"
#include "secmimo/system.hpp"

namespace secmimo {

struct OptResult {
  double phi_star = 0.0;
  double value = 0.0;  // secrecy bound at phi_star
  int iterations = 0;
  enum class Method { ClosedForm, GoldenSection, GridRefine } method =
      Method::GoldenSection;
  // Refined coarse-grid maxima; more than one entry flags multimodality.
  std::vector<double> local_maxima;
};

// Global maximizer of the secrecy bound over phi in (0, 1]: 64-point coarse
// grid to bracket, golden-section refinement of every bracketed maximum.
OptResult maximize_phi(const DerivedParams& dp, double rho, AnKind an_kind,
                       double tol = 1e-4);

// Crossover SNR (linear) located numerically: bisection on the sign of the
// finite-difference d(secrecy bound)/d(rho) at rho_probe, with geometric
// bracket expansion. Throws NumericError when no sign change exists (e.g.
// zero secrecy throughout).
double find_snr_threshold_numeric(const DerivedParams& dp, AnKind an_kind,
                                  double rho_probe = 1e-3);

}  // namespace secmimo
