#include "switchcap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "switchcap/errors.hpp"

namespace switchcap {

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Spectrum make_spectrum(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum{std::move(values)};
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

// Zeroes a(p, q) with the unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on coordinates p and q, i.e. a <- G^dagger a G.
void rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
  const complex z = a(p, q);
  const double r = std::abs(z);
  if (r == 0.0) return;
  const complex phase = std::conj(z / r);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const complex g_pp = c;
  const complex g_pq = s;
  const complex g_qp = -s * phase;
  const complex g_qq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const complex akp = a(k, p);
    const complex akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const complex apk = a(p, k);
    const complex aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
}

}  // namespace

Spectrum hermitian_spectrum(const ComplexMatrix& h, const JacobiOptions& options) {
  if (!h.is_square()) throw DimensionMismatch("hermitian_spectrum: non-square matrix");
  const double defect = hermiticity_defect(h);
  if (defect > options.hermitian_tol) {
    throw NotHermitian("hermitian_spectrum: asymmetry " + std::to_string(defect));
  }

  // Work on the exactly Hermitian part so round-off in the input cannot
  // leak into the rotations.
  const std::size_t n = h.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }

  const double threshold = options.off_diagonal_tol * std::max(1.0, frobenius_norm(a));
  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == options.max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
  }
  if (!converged) {
    throw NoConvergence("hermitian_spectrum: no convergence after " +
                        std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return make_spectrum(std::move(values));
}

namespace {

constexpr double kNegativeClamp = -1e-10;
constexpr double kSumTol = 1e-8;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double von_neumann_entropy(const Spectrum& s) {
  double total = 0.0;
  double h = 0.0;
  for (double v : s.values) {
    if (!std::isfinite(v) || v < kNegativeClamp) {
      throw InvalidSpectrum("von_neumann_entropy: eigenvalue " + std::to_string(v));
    }
    total += v;
    h -= xlog2x(std::max(v, 0.0));
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw InvalidSpectrum("von_neumann_entropy: eigenvalues sum to " + std::to_string(total));
  }
  // Eigenvalues slightly above 1 can push h a hair below zero.
  return std::max(h, 0.0);
}

double von_neumann_entropy(std::span<const WeightedEigenvalue> spectrum) {
  double total = 0.0;
  double h = 0.0;
  for (const auto& [v, mult] : spectrum) {
    if (mult == 0.0) continue;
    if (!std::isfinite(v) || v < kNegativeClamp || mult < 0.0) {
      throw InvalidSpectrum("von_neumann_entropy: eigenvalue " + std::to_string(v));
    }
    total += mult * v;
    h -= mult * xlog2x(std::max(v, 0.0));
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw InvalidSpectrum("von_neumann_entropy: eigenvalues sum to " + std::to_string(total));
  }
  // Eigenvalues slightly above 1 can push h a hair below zero.
  return std::max(h, 0.0);
}

LogDeterminant log_determinant(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("log_determinant: non-square matrix");
  ComplexMatrix lu = m;
  const std::size_t n = lu.rows();
  LogDeterminant result;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > best) {
        best = std::abs(lu(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) {
      return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(col, c), lu(pivot, c));
      result.phase = -result.phase;
    }
    const complex d = lu(col, col);
    result.log_abs += std::log(std::abs(d));
    result.phase *= d / std::abs(d);
    for (std::size_t r = col + 1; r < n; ++r) {
      const complex f = lu(r, col) / d;
      if (f == complex{}) continue;
      for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= f * lu(col, c);
    }
  }
  return result;
}

}  // namespace switchcap
