#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace secmimo {

using Rng = std::mt19937_64;

// Stateless mix of (master seed, stream index) into an independent seed, so
// trial t gets the same stream whether trials run serially or in parallel.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Circularly-symmetric complex Gaussian, variance `var` per entry
// (var/2 per real component).
std::complex<double> complex_gaussian(Rng& rng, double var = 1.0);
Eigen::VectorXcd complex_gaussian_vector(Rng& rng, int n, double var = 1.0);
Eigen::MatrixXcd complex_gaussian_matrix(Rng& rng, int rows, int cols,
                                         double var = 1.0);

}  // namespace secmimo
