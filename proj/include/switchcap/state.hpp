#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "switchcap/matrix.hpp"

namespace switchcap {

// Hermitian, positive semidefinite, unit-trace matrix. The invariants are
// checked once at construction; the wrapped matrix is immutable afterwards.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kMinEigenvalue = -1e-10;

  // Throws InvalidState if any invariant fails.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  // |psi><psi| for a normalized vector psi (normalized here if it is not).
  static DensityMatrix pure(std::span<const complex> psi);
  static DensityMatrix basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

enum class Subsystem { A, B };

/// Reduced state of a bipartite density matrix on C^dim_a (x) C^dim_b.
DensityMatrix partial_trace(const DensityMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

/// Normalized vector of i.i.d. standard complex Gaussians (Haar-random pure state).
std::vector<complex> haar_random_vector(std::size_t dim, std::mt19937_64& rng);

/// Random mixed state: G G^dagger / Tr for a Ginibre matrix G.
DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);

}  // namespace switchcap
