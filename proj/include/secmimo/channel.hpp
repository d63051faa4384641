#pragma once

#include <Eigen/Dense>

#include "secmimo/rng.hpp"
#include "secmimo/system.hpp"

namespace secmimo {

// One draw of the user/eavesdropper channels with the matching precoder and
// AN shaping matrix.
struct ChannelRealization {
  Eigen::MatrixXcd user_channel;     // H, K x N
  Eigen::MatrixXcd eve_channel;      // H_e, M x N
  Eigen::MatrixXcd precoder;         // W, N x K, tr(W W^H) = K
  Eigen::MatrixXcd an_shaping;       // V, N x (N-K), unit-norm columns
  AnKind an_kind = AnKind::NullSpace;
};

struct TransmitSymbols {
  Eigen::VectorXcd data;  // s, K entries, unit variance
  Eigen::VectorXcd an;    // z, N-K entries, standard complex Gaussian
};

// i.i.d. CN(0,1) channels; bit-identical for a given rng state.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> sample_channels(int n, int k,
                                                              int m, Rng& rng);

// Zero-forcing precoder scaled so tr(W W^H) = K; H W is then a positive
// multiple of the identity. Throws NumericError on a rank-deficient channel.
Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& h);

// Orthonormal basis of the null space of H (N x (N-K)); H V = 0.
Eigen::MatrixXcd null_space_an(const Eigen::MatrixXcd& h);

// Independent random unit-norm columns (not orthogonalized).
Eigen::MatrixXcd random_an(int n, int k, Rng& rng);

// x = sqrt(p) W s + sqrt(q) V z
Eigen::VectorXcd assemble_transmit(const Eigen::MatrixXcd& precoder,
                                   const Eigen::MatrixXcd& an_shaping,
                                   const Eigen::VectorXcd& s,
                                   const Eigen::VectorXcd& z, double p,
                                   double q);

TransmitSymbols sample_symbols(int k, int n_minus_k, Rng& rng);

// Channels + precoder + AN for one Monte Carlo trial.
ChannelRealization make_realization(const SystemConfig& config, Rng& rng);

}  // namespace secmimo
