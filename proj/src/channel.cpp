#include "switchcap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "switchcap/errors.hpp"

namespace switchcap {

UnitaryBasis::UnitaryBasis(std::size_t dim, std::vector<ComplexMatrix> unitaries)
    : dim_(dim), unitaries_(std::move(unitaries)) {
  if (unitaries_.size() != dim_ * dim_) {
    throw InvalidState("UnitaryBasis: need d^2 = " + std::to_string(dim_ * dim_) +
                       " operators, got " + std::to_string(unitaries_.size()));
  }
  const ComplexMatrix eye = ComplexMatrix::identity(dim_);
  for (const auto& u : unitaries_) {
    if (u.rows() != dim_ || u.cols() != dim_) throw InvalidState("UnitaryBasis: wrong operator shape");
    if (max_abs_diff(u.adjoint() * u, eye) > kTol) throw InvalidState("UnitaryBasis: non-unitary element");
  }
  const double d = static_cast<double>(dim_);
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    for (std::size_t j = i; j < unitaries_.size(); ++j) {
      // Tr(U_i^dagger U_j) = sum_kl conj(U_i(k,l)) U_j(k,l)
      complex overlap = 0.0;
      auto ei = unitaries_[i].entries();
      auto ej = unitaries_[j].entries();
      for (std::size_t k = 0; k < ei.size(); ++k) overlap += std::conj(ei[k]) * ej[k];
      const double expected = i == j ? d : 0.0;
      if (std::abs(overlap - expected) > kTol) {
        throw InvalidState("UnitaryBasis: elements " + std::to_string(i) + " and " +
                           std::to_string(j) + " are not orthogonal");
      }
    }
  }
}

UnitaryBasis weyl_basis(std::size_t d) {
  if (d < kMinChannelDim || d > kMaxChannelDim) {
    throw DimensionOutOfRange("weyl_basis: d = " + std::to_string(d) + " outside [2, 16]");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      // X^a Z^b |k> = w^(b k) |k + a>
      ComplexMatrix u(d, d);
      for (std::size_t k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * k) % d) /
                             static_cast<double>(d);
        u((k + a) % d, k) = std::polar(1.0, angle);
      }
      ops.push_back(std::move(u));
    }
  }
  return UnitaryBasis(d, std::move(ops));
}

DensityMatrix depolarize(const UnitaryBasis& basis, const DensityMatrix& rho) {
  if (rho.dim() != basis.dim()) {
    throw DimensionMismatch("depolarize: state dim " + std::to_string(rho.dim()) +
                            " vs basis dim " + std::to_string(basis.dim()));
  }
  const std::size_t d = basis.dim();
  ComplexMatrix out(d, d);
  for (const auto& u : basis.unitaries()) accumulate_sandwich(out, u, rho.matrix(), u);
  out *= 1.0 / static_cast<double>(d * d);
  return DensityMatrix(std::move(out));
}

double check_completeness(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw DimensionMismatch("check_completeness: empty Kraus set");
  const std::size_t n = kraus.front().rows();
  ComplexMatrix sum(n, n);
  for (const auto& k : kraus) {
    if (k.rows() != n || k.cols() != n) {
      throw DimensionMismatch("check_completeness: Kraus operators must be square and equal-sized");
    }
    // sum += K^dagger K
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        complex s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += std::conj(k(r, i)) * k(r, j);
        sum(i, j) += s;
      }
  }
  return max_abs_diff(sum, ComplexMatrix::identity(n));
}

}  // namespace switchcap
