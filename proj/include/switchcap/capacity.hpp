#pragma once

// Closed-form Holevo quantity of the switch of completely depolarizing
// channels with M uniformly superposed causal orders.
//
// For input rho the output is (1/M)[sum_i |i><i| (x) I/d + sum_{i!=j} |i><j| (x) rho/d^2].
// Its spectrum is {1/(Md) + (M-1) l/(M d^2)} once and {1/(Md) - l/(M d^2)}
// with multiplicity M-1, for each eigenvalue l of rho.

#include <cstddef>

#include "switchcap/linalg.hpp"
#include "switchcap/matrix.hpp"
#include "switchcap/state.hpp"
#include "switchcap/switch_oracle.hpp"

namespace switchcap {

struct CapacityReport {
  std::size_t m_orders = 0;
  std::size_t dim = 0;
  double s_min = 0.0;      // bits
  double s_control = 0.0;  // bits
  double chi = 0.0;        // bits
};

/// Output spectrum for M orders given the spectrum of rho (d entries).
Spectrum output_spectrum(std::size_t m, std::size_t d, const Spectrum& rho_spectrum);

/// Minimum output entropy, attained at pure inputs.
double s_min(std::size_t m, std::size_t d);

/// Entropy of the reduced control state (1/M)(sum |i><i| + d^-2 sum_{i!=j} |i><j|).
double control_entropy(std::size_t m, std::size_t d);

/// chi = log2 d + control_entropy - s_min.
CapacityReport holevo(std::size_t m, std::size_t d);

/// lim_{M -> inf} holevo(M, d).chi.
double asymptotic_limit(std::size_t d);

/// Output state with amplitudes c: c_i^2 I/d on the diagonal blocks and
/// c_i c_j rho/d^2 off the diagonal.
ComplexMatrix analytic_output_state(const ControlAmplitudes& c, const DensityMatrix& rho);

inline constexpr std::size_t kMaxDeterminantDim = 256;

/// Relative gap between det(rho_out) and
/// det((1/m)[I/d + (m-1) rho/d^2]) * det((1/m)[I/d - rho/d^2])^(m-1).
/// Evaluated in log space. Requires uniform amplitudes and m d <= 256.
double det_factorization_residual(std::size_t m, std::size_t basis_dim, const DensityMatrix& rho,
                                  const ControlAmplitudes& c);

}  // namespace switchcap
