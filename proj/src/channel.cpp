#include "secmimo/channel.hpp"

#include <cmath>

#include "secmimo/errors.hpp"

namespace secmimo {

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> sample_channels(int n, int k,
                                                              int m, Rng& rng) {
  // H before H_e, fixed order for the determinism contract.
  Eigen::MatrixXcd h = complex_gaussian_matrix(rng, k, n);
  Eigen::MatrixXcd he = complex_gaussian_matrix(rng, m, n);
  return {std::move(h), std::move(he)};
}

Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& h) {
  const Eigen::Index k = h.rows();
  const Eigen::MatrixXcd gram = h * h.adjoint();
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().real().minCoeff() <=
          1e-13 * ldlt.vectorD().real().maxCoeff())
    throw NumericError("zf_precoder: singular channel (H not full row rank)");

  const Eigen::MatrixXcd gram_inv =
      ldlt.solve(Eigen::MatrixXcd::Identity(k, k));
  const double trace_inv = gram_inv.trace().real();
  const Eigen::MatrixXcd w =
      std::sqrt(static_cast<double>(k) / trace_inv) * h.adjoint() * gram_inv;
  return w;
}

Eigen::MatrixXcd null_space_an(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.cols();
  const Eigen::Index k = h.rows();
  if (k >= n) throw RegimeError("null_space_an: K>=N");

  // Rank-revealing QR of H^H: the trailing N-K columns of Q span null(H).
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(h.adjoint());
  if (qr.rank() != k)
    throw NumericError("null_space_an: rank-deficient channel");
  const Eigen::MatrixXcd q = qr.householderQ();
  return q.rightCols(n - k);
}

Eigen::MatrixXcd random_an(int n, int k, Rng& rng) {
  if (k >= n) throw RegimeError("random_an: K>=N");
  Eigen::MatrixXcd v = complex_gaussian_matrix(rng, n, n - k);
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j).normalize();
  return v;
}

Eigen::VectorXcd assemble_transmit(const Eigen::MatrixXcd& precoder,
                                   const Eigen::MatrixXcd& an_shaping,
                                   const Eigen::VectorXcd& s,
                                   const Eigen::VectorXcd& z, double p,
                                   double q) {
  return std::sqrt(p) * (precoder * s) + std::sqrt(q) * (an_shaping * z);
}

TransmitSymbols sample_symbols(int k, int n_minus_k, Rng& rng) {
  TransmitSymbols sym;
  sym.data = complex_gaussian_vector(rng, k);
  sym.an = complex_gaussian_vector(rng, n_minus_k);
  return sym;
}

ChannelRealization make_realization(const SystemConfig& config, Rng& rng) {
  ChannelRealization real;
  auto [h, he] = sample_channels(config.num_bs_antennas, config.num_users,
                                 config.num_eve_antennas, rng);
  real.user_channel = std::move(h);
  real.eve_channel = std::move(he);
  real.precoder = zf_precoder(real.user_channel);
  real.an_kind = config.an_kind;
  real.an_shaping = config.an_kind == AnKind::NullSpace
                        ? null_space_an(real.user_channel)
                        : random_an(config.num_bs_antennas, config.num_users,
                                    rng);
  return real;
}

}  // namespace secmimo
