#pragma once

#include <cstdint>
#include <random>

#include "relframe/linalg.hpp"

namespace relframe {

/// Seeded source of random operators. Draws are reproducible for a given
/// seed on a given platform.
class RandomMatrices {
 public:
  explicit RandomMatrices(std::uint64_t seed) : engine_(seed) {}

  double real();    // standard normal
  Complex complex();  // standard complex normal
  ComplexMatrix ginibre(Index rows, Index cols);
  ComplexMatrix ginibre(Index dim) { return ginibre(dim, dim); }
  ComplexMatrix hermitian(Index dim);
  /// Haar-distributed unitary via QR of a Ginibre matrix.
  ComplexMatrix unitary(Index dim);
  /// Full-rank mixed state G G† / tr(G G†).
  ComplexMatrix density_matrix(Index dim);
  ComplexMatrix pure_state(Index dim);
  ComplexVector unit_vector(Index dim);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace relframe
