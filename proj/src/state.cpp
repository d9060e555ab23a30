#include "switchcap/state.hpp"

#include <cmath>
#include <string>

#include "switchcap/errors.hpp"
#include "switchcap/linalg.hpp"

namespace switchcap {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.rows() == 0) {
    throw InvalidState("DensityMatrix: matrix must be square and non-empty");
  }
  const double defect = hermiticity_defect(matrix_);
  if (defect > kHermitianTol) {
    throw InvalidState("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidState("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const Spectrum s = hermitian_spectrum(matrix_);
  if (s.values.back() < kMinEigenvalue) {
    throw InvalidState("DensityMatrix: negative eigenvalue " + std::to_string(s.values.back()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const complex> psi) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw InvalidState("DensityMatrix::pure: zero vector");
  const double scale = 1.0 / norm2;
  const std::size_t n = psi.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * (psi[i] * std::conj(psi[j]));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionMismatch("basis_state: index out of range");
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep) {
  if (dim_a == 0 || dim_b == 0 || m.dim() != dim_a * dim_b) {
    throw DimensionMismatch("partial_trace: state of dim " + std::to_string(m.dim()) +
                            " is not " + std::to_string(dim_a) + " x " + std::to_string(dim_b));
  }
  const ComplexMatrix& rho = m.matrix();
  if (keep == Subsystem::A) {
    ComplexMatrix out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_a; ++j) {
        complex s = 0.0;
        for (std::size_t k = 0; k < dim_b; ++k) s += rho(i * dim_b + k, j * dim_b + k);
        out(i, j) = s;
      }
    return DensityMatrix(std::move(out));
  }
  ComplexMatrix out(dim_b, dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l) {
      complex s = 0.0;
      for (std::size_t i = 0; i < dim_a; ++i) s += rho(i * dim_b + k, i * dim_b + l);
      out(k, l) = s;
    }
  return DensityMatrix(std::move(out));
}

std::vector<complex> haar_random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex> v(dim);
  double norm2 = 0.0;
  for (auto& z : v) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = complex(re, im);
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (auto& z : g.entries()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = complex(re, im);
  }
  ComplexMatrix rho = g * g.adjoint();
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace switchcap
