#include "switchcap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "switchcap/errors.hpp"

namespace switchcap {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                            " entries, got " + std::to_string(data_.size()));
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidState("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, complex scalar) { return a *= scalar; }
ComplexMatrix operator*(complex scalar, ComplexMatrix a) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product: inner dimensions " + std::to_string(a.cols()) +
                            " and " + std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

void accumulate_sandwich(ComplexMatrix& acc, const ComplexMatrix& a, const ComplexMatrix& b,
                         const ComplexMatrix& c, complex weight) {
  const ComplexMatrix ab = a * b;
  if (ab.cols() != c.cols() || acc.rows() != ab.rows() || acc.cols() != c.rows()) {
    throw DimensionMismatch("accumulate_sandwich: incompatible shapes");
  }
  for (std::size_t i = 0; i < ab.rows(); ++i) {
    for (std::size_t j = 0; j < c.rows(); ++j) {
      complex s = 0.0;
      for (std::size_t k = 0; k < ab.cols(); ++k) s += ab(i, k) * std::conj(c(j, k));
      acc(i, j) += weight * s;
    }
  }
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermiticity_defect: non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

ComplexMatrix extract_block(const ComplexMatrix& m, std::size_t row_block, std::size_t col_block,
                            std::size_t block) {
  if ((row_block + 1) * block > m.rows() || (col_block + 1) * block > m.cols()) {
    throw DimensionMismatch("extract_block: block out of range");
  }
  ComplexMatrix out(block, block);
  for (std::size_t r = 0; r < block; ++r)
    for (std::size_t c = 0; c < block; ++c)
      out(r, c) = m(row_block * block + r, col_block * block + c);
  return out;
}

}  // namespace switchcap
