#include "secmimo/rng.hpp"

namespace secmimo {

namespace {

// splitmix64 finalizer; full avalanche, so consecutive indices give
// uncorrelated seeds.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x517cc1b727220a95ULL));
}

std::complex<double> complex_gaussian(Rng& rng, double var) {
  std::normal_distribution<double> dist(0.0, std::sqrt(var / 2.0));
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

Eigen::VectorXcd complex_gaussian_vector(Rng& rng, int n, double var) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_gaussian(rng, var);
  return v;
}

Eigen::MatrixXcd complex_gaussian_matrix(Rng& rng, int rows, int cols,
                                         double var) {
  Eigen::MatrixXcd m(rows, cols);
  // Row-major fill order is part of the determinism contract.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = complex_gaussian(rng, var);
  return m;
}

}  // namespace secmimo
