#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "secmimo/channel.hpp"
#include "secmimo/errors.hpp"
#include "secmimo/quantizer.hpp"
#include "test_util.hpp"

using namespace secmimo;
using secmimo::testing::rel_err;

TEST_CASE("channel entries are unit-variance and seed-reproducible") {
  Rng rng(11);
  auto [h, he] = sample_channels(1000, 500, 500, rng);
  CHECK(rel_err(h.cwiseAbs2().mean(), 1.0) < 0.01);
  CHECK(rel_err(he.cwiseAbs2().mean(), 1.0) < 0.01);

  Rng a(123), b(123);
  auto [h1, he1] = sample_channels(64, 8, 4, a);
  auto [h2, he2] = sample_channels(64, 8, 4, b);
  CHECK(h1 == h2);
  CHECK(he1 == he2);
}

TEST_CASE("row gram concentrates on the identity") {
  const int n = 512, k = 8, trials = 100;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(k, k);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(21, t));
    auto [h, he] = sample_channels(n, k, 1, rng);
    sum += h * h.adjoint() / static_cast<double>(n);
  }
  sum /= trials;
  CHECK((sum - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("zero-forcing precoder diagonalizes the channel") {
  Rng rng(31);
  const int n = 128, k = 8;
  auto [h, he] = sample_channels(n, k, 1, rng);
  const Eigen::MatrixXcd w = zf_precoder(h);

  CHECK(std::abs((w * w.adjoint()).trace().real() - k) < 1e-9 * k);
  const Eigen::MatrixXcd hw = h * w;
  const double c = hw(0, 0).real();
  CHECK(c > 0.0);
  CHECK((hw - c * Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() <
        1e-8 * c);
}

TEST_CASE("zero-forcing gain approaches the inverse-Wishart limit") {
  // tr{(H H^H)^-1} -> beta/(1-beta), so c^2 -> K(1/beta - 1) = 240.
  const int n = 256, k = 16, trials = 50;
  double mean_c2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(41, t));
    auto [h, he] = sample_channels(n, k, 1, rng);
    const Eigen::MatrixXcd hw = h * zf_precoder(h);
    mean_c2 += hw(0, 0).real() * hw(0, 0).real();
  }
  mean_c2 /= trials;
  CHECK(rel_err(mean_c2, 240.0) < 0.05);
}

TEST_CASE("single-user precoder reduces to the matched filter") {
  Rng rng(51);
  auto [h, he] = sample_channels(64, 1, 1, rng);
  const Eigen::MatrixXcd w = zf_precoder(h);
  const Eigen::MatrixXcd expected = h.adjoint() / h.norm();
  CHECK((w - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs((h * w)(0, 0).real() - h.norm()) < 1e-12);
}

TEST_CASE("rank-deficient channel is rejected") {
  Rng rng(61);
  auto [h, he] = sample_channels(32, 4, 1, rng);
  h.row(2) = h.row(0);
  CHECK_THROWS_AS(zf_precoder(h), NumericError);
  CHECK_THROWS_AS(null_space_an(h), NumericError);
}

TEST_CASE("null-space AN annihilates the user channel") {
  Rng rng(71);
  const int n = 128, k = 8;
  auto [h, he] = sample_channels(n, k, 1, rng);
  const Eigen::MatrixXcd v = null_space_an(h);
  REQUIRE(v.cols() == n - k);
  CHECK((h * v).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(n - k, n - k))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(std::abs((v * v.adjoint()).trace().real() - (n - k)) < 1e-9);
}

TEST_CASE("random AN columns are unit norm and nearly orthogonal") {
  Rng rng(81);
  const int n = 512, k = 8;
  const Eigen::MatrixXcd v = random_an(n, k, rng);
  REQUIRE(v.cols() == n - k);
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    CHECK(std::abs(v.col(j).norm() - 1.0) < 1e-12);
  CHECK(std::abs((v * v.adjoint()).trace().real() - (n - k)) < 1e-9);

  const Eigen::MatrixXcd gram = v.adjoint() * v;
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j, ++count)
      sum += std::abs(gram(i, j));
  CHECK(sum / count < 0.06);
}

TEST_CASE("transmit assembly") {
  Rng rng(91);
  const int n = 64, k = 8;
  SystemConfig cfg;
  cfg.num_bs_antennas = n;
  cfg.num_users = k;
  cfg.num_eve_antennas = 4;
  cfg.power_alloc = 0.6;
  cfg.set_snr_db(10.0);
  const ChannelRealization real = make_realization(cfg, rng);
  const double p = 0.6 / k, q = 0.4 / (n - k);

  SUBCASE("no AN power at phi = 1") {
    const TransmitSymbols sym = sample_symbols(k, n - k, rng);
    const Eigen::VectorXcd x = assemble_transmit(
        real.precoder, real.an_shaping, sym.data, sym.an, 1.0 / k, 0.0);
    const Eigen::VectorXcd direct =
        std::sqrt(1.0 / k) * (real.precoder * sym.data);
    CHECK((x - direct).norm() == 0.0);
  }

  SUBCASE("zero symbols give a zero vector") {
    const Eigen::VectorXcd x = assemble_transmit(
        real.precoder, real.an_shaping, Eigen::VectorXcd::Zero(k),
        Eigen::VectorXcd::Zero(n - k), p, q);
    CHECK(x.norm() == 0.0);
  }

  SUBCASE("mean transmit energy equals the power budget") {
    double energy = 0.0;
    const int draws = 10000;
    for (int d = 0; d < draws; ++d) {
      const TransmitSymbols sym = sample_symbols(k, n - k, rng);
      energy += assemble_transmit(real.precoder, real.an_shaping, sym.data,
                                  sym.an, p, q)
                    .squaredNorm();
    }
    CHECK(rel_err(energy / draws, 1.0) < 0.02);
  }
}

TEST_CASE("quantization breaks the null-space protection") {
  Rng rng(101);
  const int n = 128, k = 8;
  auto [h, he] = sample_channels(n, k, 1, rng);
  const Eigen::MatrixXcd v = null_space_an(h);
  const Eigen::VectorXcd z = complex_gaussian_vector(rng, n - k);
  const Eigen::VectorXcd an = v * z;

  CHECK((h * an).norm() < 1e-9 * an.norm());
  const Eigen::VectorXd cov =
      0.1 * v.rowwise().squaredNorm();  // q diag(V V^H), rho folded in
  const Eigen::VectorXcd quantized = bussgang_quantize(an, 0.1, cov, rng);
  CHECK((h * quantized).norm() > 1e-3 * quantized.norm());
}

TEST_CASE("precoder and AN gram diagonals flatten at large N") {
  const int n = 256, k = 64, trials = 100;
  Eigen::VectorXd w_diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v_diag = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(111, t));
    auto [h, he] = sample_channels(n, k, 1, rng);
    w_diag += zf_precoder(h).rowwise().squaredNorm();
    v_diag += null_space_an(h).rowwise().squaredNorm();
  }
  w_diag /= trials;
  v_diag /= trials;
  const double w_target = static_cast<double>(k) / n;
  const double v_target = static_cast<double>(n - k) / n;
  CHECK((w_diag.array() - w_target).abs().maxCoeff() < 0.05 * w_target);
  CHECK((v_diag.array() - v_target).abs().maxCoeff() < 0.05 * v_target);
}
