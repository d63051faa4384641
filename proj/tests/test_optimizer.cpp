#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "secmimo/errors.hpp"
#include "secmimo/optimizer.hpp"
#include "test_util.hpp"

using namespace secmimo;
using secmimo::testing::db;

namespace {

constexpr double kRho1 = 0.3633802276;

// Dense-grid argmax of the secrecy bound; the independent oracle for the
// golden-section search.
std::pair<double, double> grid_argmax(const DerivedParams& dp, double rho,
                                      AnKind an_kind, int points = 10000) {
  double best_phi = 0.0, best_val = -1.0;
  for (int i = 1; i <= points; ++i) {
    const double phi = static_cast<double>(i) / points;
    double val = 0.0;
    try {
      val = secrecy_bound(with_phi(dp, phi), rho, an_kind).secrecy_bound;
    } catch (const RegimeError&) {
      val = 0.0;
    }
    if (val > best_val) {
      best_val = val;
      best_phi = phi;
    }
  }
  return {best_phi, best_val};
}

DerivedParams random_valid_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double beta = 0.02 + 0.4 * u(rng);
  const double alpha = (1.0 - beta) * (0.05 + 0.8 * u(rng));
  const double rho = 0.5 * u(rng);
  const double gamma0 = std::pow(10.0, -0.5 + 2.0 * u(rng));
  return DerivedParams::from_ratios(alpha, beta, gamma0, 0.5, rho);
}

}  // namespace

TEST_CASE("maximize_phi reproduces the reference optima") {
  const DerivedParams dp = DerivedParams::from_ratios(
      16.0 / 128, 8.0 / 128, 1.0, 0.5, 0.0, 128.0);

  const OptResult random_an = maximize_phi(dp, 0.0, AnKind::Random);
  CHECK(std::abs(random_an.phi_star - 0.389) <= 0.005);
  CHECK(std::abs(random_an.value - 0.904) <= 0.0015);

  const OptResult null_an = maximize_phi(dp, 0.0, AnKind::NullSpace);
  CHECK(std::abs(null_an.phi_star - 0.3452) <= 0.002);
  CHECK(std::abs(null_an.value - 1.4788) <= 0.0005);
  CHECK(null_an.iterations > 0);
  CHECK(null_an.local_maxima.size() == 1);
}

TEST_CASE("boundary maximum at phi = 1") {
  // Strong SNR, one-bit DAC, random AN: the bound grows through phi = 1.
  const DerivedParams dp = DerivedParams::from_ratios(
      12.0 / 128, 8.0 / 128, std::pow(10.0, 1.2), 0.5, kRho1, 128.0);
  const OptResult result = maximize_phi(dp, kRho1, AnKind::Random);
  CHECK(result.phi_star == 1.0);
}

TEST_CASE("golden section agrees with a dense grid") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const DerivedParams dp = random_valid_point(rng);
    for (AnKind kind : {AnKind::NullSpace, AnKind::Random}) {
      const OptResult opt = maximize_phi(dp, dp.rho, kind, 1e-4);
      const auto [grid_phi, grid_val] = grid_argmax(dp, dp.rho, kind);
      CHECK(std::abs(opt.phi_star - grid_phi) <= 2e-4);
      // Both sit within curvature * tol^2 of the true peak value.
      CHECK(opt.value >= grid_val - 1e-6);
    }
  }
}

TEST_CASE("closed-form optimum tracks the numeric argmax at light load") {
  // alpha * beta = 0.0078 here, inside the light-load approximation's remit.
  constexpr double kRho2 = 0.1174818478;
  constexpr double kRho3 = 0.0345477608;
  for (double gamma0 : {1.0, std::pow(10.0, 0.5)}) {
    const DerivedParams dp = DerivedParams::from_ratios(
        16.0 / 128, 8.0 / 128, gamma0, 0.5, 0.0, 128.0);
    for (double rho : {0.0, kRho3, kRho2, kRho1}) {
      for (AnKind kind : {AnKind::NullSpace, AnKind::Random}) {
        const double closed = optimal_phi_closed(dp, rho, kind);
        const OptResult numeric = maximize_phi(dp, rho, kind);
        CHECK(std::abs(closed - numeric.phi_star) <= 0.02);
      }
    }
  }
}

TEST_CASE("numeric crossover SNR tracks the closed form") {
  const DerivedParams null_cfg = DerivedParams::from_ratios(
      16.0 / 128, 8.0 / 128, 1.0, 0.8, 0.0, 128.0);
  const double null_numeric =
      find_snr_threshold_numeric(null_cfg, AnKind::NullSpace);
  CHECK(std::abs(db(null_numeric) - 5.6838) <= 0.3);

  const DerivedParams random_cfg = DerivedParams::from_ratios(
      6.0 / 128, 8.0 / 128, 1.0, 0.7, 0.0, 128.0);
  const double random_numeric =
      find_snr_threshold_numeric(random_cfg, AnKind::Random);
  CHECK(std::abs(db(random_numeric) - 6.1303) <= 0.3);
}

TEST_CASE("no crossover when secrecy is zero throughout") {
  // Eavesdropper ratio high enough that the bound clamps to zero at every
  // SNR for this power split.
  const DerivedParams dead =
      DerivedParams::from_ratios(0.93, 0.0625, 1.0, 0.9, 0.0);
  CHECK_THROWS_AS(find_snr_threshold_numeric(dead, AnKind::NullSpace),
                  NumericError);
}
