#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "switchcap/matrix.hpp"

namespace switchcap {

// Real eigenvalues, sorted descending.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double sum() const;
};

/// Builds a Spectrum from arbitrary values (sorts them descending).
Spectrum make_spectrum(std::vector<double> values);

struct JacobiOptions {
  double hermitian_tol = 1e-10;
  double off_diagonal_tol = 1e-14;
  int max_sweeps = 100;
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Throws NotHermitian when the input is not Hermitian within
/// `hermitian_tol`, NoConvergence when the sweep budget runs out.
Spectrum hermitian_spectrum(const ComplexMatrix& h, const JacobiOptions& options = {});

/// -sum(l * log2 l) in bits, with 0 log 0 = 0. Values in [-1e-10, 0) are
/// treated as zero. Throws InvalidSpectrum if the values do not sum to 1
/// within 1e-8 or if any value is below -1e-10.
double von_neumann_entropy(const Spectrum& s);

// Entropy of a spectrum given as (value, multiplicity) pairs. Lets the
// closed forms evaluate spectra with millions of repeated eigenvalues.
struct WeightedEigenvalue {
  double value;
  double multiplicity;
};
double von_neumann_entropy(std::span<const WeightedEigenvalue> spectrum);

// log|det(m)| by LU with partial pivoting; -inf for singular input.
struct LogDeterminant {
  double log_abs = 0.0;
  complex phase = 1.0;
};
LogDeterminant log_determinant(const ComplexMatrix& m);

}  // namespace switchcap
