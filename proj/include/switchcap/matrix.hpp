#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace switchcap {

using complex = std::complex<double>;

// Dense square-or-rectangular complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws DimensionMismatch on size mismatch, InvalidState on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const complex> entries() const noexcept { return data_; }
  std::span<complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, complex scalar);
ComplexMatrix operator*(complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// acc += a * b * c^dagger, without forming temporaries for the adjoint.
void accumulate_sandwich(ComplexMatrix& acc, const ComplexMatrix& a, const ComplexMatrix& b,
                         const ComplexMatrix& c, complex weight = 1.0);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest elementwise |a - b|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest elementwise |m(i,j) - conj(m(j,i))|.
double hermiticity_defect(const ComplexMatrix& m);

/// Copy of the (row_block, col_block) sub-block of size block x block.
ComplexMatrix extract_block(const ComplexMatrix& m, std::size_t row_block, std::size_t col_block,
                            std::size_t block);

}  // namespace switchcap
