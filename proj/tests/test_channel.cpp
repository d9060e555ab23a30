#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "switchcap/channel.hpp"
#include "switchcap/errors.hpp"

using namespace switchcap;

TEST_SUITE("channel-model") {
  TEST_CASE("weyl_basis(2) is I, Z, X, XZ") {
    const auto basis = weyl_basis(2);
    REQUIRE(basis.size() == 4);
    CHECK(max_abs_diff(basis[0], ComplexMatrix::identity(2)) < 1e-15);
    CHECK(max_abs_diff(basis[1], ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0})) < 1e-15);
    CHECK(max_abs_diff(basis[2], ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0})) < 1e-15);
    // XZ = [[0, -1], [1, 0]]
    CHECK(max_abs_diff(basis[3], ComplexMatrix(2, 2, {0.0, -1.0, 1.0, 0.0})) < 1e-15);
  }

  TEST_CASE("weyl_basis elements match X^a Z^b matrix elements") {
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto basis = weyl_basis(d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          CHECK(oracle::max_diff(basis[a * d + b], oracle::weyl_operator(d, a, b)) < 1e-13);
      CHECK(max_abs_diff(basis[0], ComplexMatrix::identity(d)) == 0.0);
    }
  }

  TEST_CASE("weyl_basis(3) pairwise trace table is 3 delta_ij") {
    const auto basis = weyl_basis(3);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) {
        const complex tr = oracle::naive_product(oracle::naive_adjoint(basis[i]), basis[j]).trace();
        CHECK(std::abs(tr - (i == j ? 3.0 : 0.0)) < 1e-12);
      }
  }

  TEST_CASE("weyl_basis is orthogonal and unitary for every supported d") {
    // The UnitaryBasis constructor enforces both invariants.
    for (std::size_t d = kMinChannelDim; d <= kMaxChannelDim; ++d) CHECK_NOTHROW(weyl_basis(d));
    CHECK_THROWS_AS(weyl_basis(1), DimensionOutOfRange);
    CHECK_THROWS_AS(weyl_basis(17), DimensionOutOfRange);
  }

  TEST_CASE("UnitaryBasis rejects non-orthogonal sets") {
    std::vector<ComplexMatrix> ops(4, ComplexMatrix::identity(2));
    CHECK_THROWS_AS(UnitaryBasis(2, ops), InvalidState);
    CHECK_THROWS_AS(UnitaryBasis(2, {ComplexMatrix::identity(2)}), InvalidState);
  }

  TEST_CASE("depolarize maps every state to I/d") {
    const auto basis2 = weyl_basis(2);
    const std::vector<complex> psi{0.6, complex(0.0, 0.8)};
    const auto out = depolarize(basis2, DensityMatrix::pure(psi));
    CHECK(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-12);

    for (std::size_t d = 2; d <= 5; ++d) {
      const auto mixed = DensityMatrix::maximally_mixed(d);
      CHECK(max_abs_diff(depolarize(weyl_basis(d), mixed).matrix(), mixed.matrix()) < 1e-12);
    }
  }

  TEST_CASE("depolarize equals Tr[rho] I/d for random d=3 states (Kraus-sum oracle)") {
    const auto basis = weyl_basis(3);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_density_matrix(3, rng);
      // Oracle: explicit sum with naive products.
      ComplexMatrix ref(3, 3);
      for (const auto& u : basis.unitaries())
        ref += oracle::naive_product(oracle::naive_product(u, rho.matrix()), oracle::naive_adjoint(u));
      ref *= 1.0 / 9.0;
      CHECK(oracle::max_diff(depolarize(basis, rho).matrix(), ref) < 1e-14);
      CHECK(max_abs_diff(depolarize(basis, rho).matrix(), DensityMatrix::maximally_mixed(3).matrix()) < 1e-12);
    }
  }

  TEST_CASE("depolarize output does not depend on the input") {
    std::mt19937_64 rng(37);
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto basis = weyl_basis(d);
      const auto a = depolarize(basis, random_density_matrix(d, rng));
      const auto b = depolarize(basis, random_density_matrix(d, rng));
      CHECK(max_abs_diff(a.matrix(), b.matrix()) <= 1e-12);
    }
    CHECK_THROWS_AS(depolarize(weyl_basis(2), DensityMatrix::maximally_mixed(3)), DimensionMismatch);
  }

  TEST_CASE("check_completeness") {
    const auto basis = weyl_basis(2);
    std::vector<ComplexMatrix> kraus;
    for (const auto& u : basis.unitaries()) kraus.push_back(u * 0.5);
    CHECK(check_completeness(kraus) < 1e-14);

    const std::vector<ComplexMatrix> half{ComplexMatrix::identity(2) * (1.0 / std::sqrt(2.0))};
    CHECK(std::abs(check_completeness(half) - 0.5) < 1e-15);
    CHECK_THROWS_AS(check_completeness(std::vector<ComplexMatrix>{}), DimensionMismatch);
  }
}
