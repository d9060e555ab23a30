#include "switchcap/capacity.hpp"

#include <array>
#include <cmath>
#include <string>

#include "switchcap/errors.hpp"

namespace switchcap {

namespace {

void require_domain(std::size_t m, std::size_t d, const char* what) {
  if (m < 1 || d < 2) {
    throw DomainError(std::string(what) + ": need m >= 1 and d >= 2 (got m=" + std::to_string(m) +
                      ", d=" + std::to_string(d) + ")");
  }
}

}  // namespace

Spectrum output_spectrum(std::size_t m, std::size_t d, const Spectrum& rho_spectrum) {
  require_domain(m, d, "output_spectrum");
  if (rho_spectrum.size() != d) {
    throw InvalidSpectrum("output_spectrum: expected " + std::to_string(d) + " eigenvalues, got " +
                          std::to_string(rho_spectrum.size()));
  }
  if (std::abs(rho_spectrum.sum() - 1.0) > 1e-10) {
    throw InvalidSpectrum("output_spectrum: eigenvalues of rho sum to " +
                          std::to_string(rho_spectrum.sum()));
  }
  const double md = static_cast<double>(m * d);
  const double md2 = md * static_cast<double>(d);
  const double m1 = static_cast<double>(m - 1);
  std::vector<double> values;
  values.reserve(m * d);
  for (double l : rho_spectrum.values) {
    values.push_back(1.0 / md + m1 * l / md2);
    for (std::size_t k = 1; k < m; ++k) values.push_back(1.0 / md - l / md2);
  }
  return make_spectrum(std::move(values));
}

double s_min(std::size_t m, std::size_t d) {
  require_domain(m, d, "s_min");
  if (m == 1) return std::log2(static_cast<double>(d));
  const double mf = static_cast<double>(m);
  const double df = static_cast<double>(d);
  const double md2 = mf * df * df;
  // Pure input: one eigenvalue (d+m-1)/(m d^2), m-1 copies of (d-1)/(m d^2),
  // and m(d-1) copies of 1/(m d).
  const std::array<WeightedEigenvalue, 3> spectrum{{
      {(df + mf - 1.0) / md2, 1.0},
      {(df - 1.0) / md2, mf - 1.0},
      {1.0 / (mf * df), mf * (df - 1.0)},
  }};
  return von_neumann_entropy(spectrum);
}

double control_entropy(std::size_t m, std::size_t d) {
  require_domain(m, d, "control_entropy");
  const double mf = static_cast<double>(m);
  const double d2 = static_cast<double>(d * d);
  const double md2 = mf * d2;
  const std::array<WeightedEigenvalue, 2> spectrum{{
      {(mf - 1.0 + d2) / md2, 1.0},
      {(d2 - 1.0) / md2, mf - 1.0},
  }};
  return von_neumann_entropy(spectrum);
}

CapacityReport holevo(std::size_t m, std::size_t d) {
  require_domain(m, d, "holevo");
  CapacityReport r;
  r.m_orders = m;
  r.dim = d;
  r.s_min = s_min(m, d);
  r.s_control = control_entropy(m, d);
  r.chi = std::log2(static_cast<double>(d)) + r.s_control - r.s_min;
  return r;
}

double asymptotic_limit(std::size_t d) {
  if (d < 2) throw DomainError("asymptotic_limit: need d >= 2");
  // The log2(M) growth of s_min and s_control cancels; what remains is
  // log2(d)/d + B log2(d^2/(d^2-1)) + Q log2((d-1)/d^2)
  // with B = (d^2-1)/d^2 and Q = (d-1)/d^2.
  const double df = static_cast<double>(d);
  const double d2 = df * df;
  const double b = (d2 - 1.0) / d2;
  const double q = (df - 1.0) / d2;
  return std::log2(df) / df + b * std::log2(d2 / (d2 - 1.0)) + q * std::log2((df - 1.0) / d2);
}

ComplexMatrix analytic_output_state(const ControlAmplitudes& c, const DensityMatrix& rho) {
  const std::size_t m = c.size();
  const std::size_t d = rho.dim();
  const double df = static_cast<double>(d);
  ComplexMatrix out(m * d, m * d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double w = c[i] * c[j];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col) {
          out(i * d + r, j * d + col) =
              i == j ? complex(r == col ? w / df : 0.0) : w * rho.matrix()(r, col) / (df * df);
        }
    }
  return out;
}

double det_factorization_residual(std::size_t m, std::size_t basis_dim, const DensityMatrix& rho,
                                  const ControlAmplitudes& c) {
  require_domain(m, basis_dim, "det_factorization_residual");
  if (rho.dim() != basis_dim) throw DimensionMismatch("det_factorization_residual: rho dimension");
  if (c.size() != m) throw DimensionMismatch("det_factorization_residual: amplitude count");
  if (!c.is_uniform()) throw DomainError("det_factorization_residual: amplitudes must be uniform");
  if (m * basis_dim > kMaxDeterminantDim) {
    throw DomainError("det_factorization_residual: m*d = " + std::to_string(m * basis_dim) +
                      " exceeds " + std::to_string(kMaxDeterminantDim));
  }

  const double mf = static_cast<double>(m);
  const double df = static_cast<double>(basis_dim);
  const ComplexMatrix eye = ComplexMatrix::identity(basis_dim);
  const ComplexMatrix plus = (eye * (1.0 / df) + rho.matrix() * ((mf - 1.0) / (df * df))) * (1.0 / mf);
  const ComplexMatrix minus = (eye * (1.0 / df) - rho.matrix() * (1.0 / (df * df))) * (1.0 / mf);

  const LogDeterminant lhs = log_determinant(analytic_output_state(c, rho));
  const LogDeterminant det_plus = log_determinant(plus);
  const LogDeterminant det_minus = log_determinant(minus);

  const double log_rhs = det_plus.log_abs + (mf - 1.0) * det_minus.log_abs;
  const complex phase_rhs = det_plus.phase * std::pow(det_minus.phase, mf - 1.0);
  const complex ratio_phase = phase_rhs / lhs.phase;
  // |rhs / lhs - 1|, with expm1 keeping precision when the two agree.
  return std::abs((ratio_phase - 1.0) + ratio_phase * std::expm1(log_rhs - lhs.log_abs));
}

}  // namespace switchcap
