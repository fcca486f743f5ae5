#pragma once

#include <cstdint>
#include <random>

#include "locclab/tensor.hpp"

namespace locclab {

using Rng = std::mt19937_64;

/// Child seed for stream `index` of a master seed (splitmix64 mixing), so
/// parallel chunks get independent, reproducible streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);
inline Rng make_rng(std::uint64_t master, std::uint64_t index = 0) {
  return Rng(derive_seed(master, index));
}

/// d x d matrix of i.i.d. standard complex Gaussians.
Matrix random_ginibre(int dim, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(int dim, Rng& rng);
/// Random invertible matrix (Ginibre, redrawn if badly conditioned).
Matrix random_invertible(int dim, Rng& rng);
/// exp(i H) for Hermitian H.
Matrix unitary_exp(const Matrix& hermitian);

LocalOperator random_local_unitary(int parties, int dim, Rng& rng);
LocalOperator random_local_invertible(int parties, int dim, Rng& rng);
/// Gaussian amplitudes, not normalized.
QuditState random_state(int parties, int dim, Rng& rng);

}  // namespace locclab
