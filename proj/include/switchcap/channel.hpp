#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "switchcap/matrix.hpp"
#include "switchcap/state.hpp"

namespace switchcap {

// d^2 mutually orthogonal d x d unitaries: Tr(U_i^dagger U_j) = d delta_ij.
class UnitaryBasis {
 public:
  static constexpr double kTol = 1e-12;

  // Validates unitarity and orthogonality; throws InvalidState otherwise.
  UnitaryBasis(std::size_t dim, std::vector<ComplexMatrix> unitaries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return unitaries_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return unitaries_[i]; }
  std::span<const ComplexMatrix> unitaries() const noexcept { return unitaries_; }

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> unitaries_;
};

inline constexpr std::size_t kMinChannelDim = 2;
inline constexpr std::size_t kMaxChannelDim = 16;

/// Clock-and-shift operators X^a Z^b, stored at index a * d + b, with
/// X|k> = |k+1 mod d> and Z|k> = w^k |k>, w = exp(2 pi i / d).
/// Throws DimensionOutOfRange outside [2, 16].
UnitaryBasis weyl_basis(std::size_t d);

/// (1/d^2) sum_i U_i rho U_i^dagger.
DensityMatrix depolarize(const UnitaryBasis& basis, const DensityMatrix& rho);

/// max |sum_k K_k^dagger K_k - I|.
double check_completeness(std::span<const ComplexMatrix> kraus);

}  // namespace switchcap
