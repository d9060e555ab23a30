#pragma once

// Brute-force quantum SWITCH of N completely depolarizing channels.
//
// Every channel k is realized by the Kraus set {U_a / d} of a unitary
// basis. A "tuple" assigns one basis index t[k] to each channel, so there
// are d^(2N) tuples. Causal order sigma = (s_0, ..., s_{N-1}) maps a tuple to
// the operator U_{t[s_0]} U_{t[s_1]} ... U_{t[s_{N-1}]}: channel s_0 is the
// leftmost factor, i.e. it acts last. The switch Kraus operator for a tuple is
// (1/d^N) sum_l |l><l| (x) P_l(tuple).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "switchcap/channel.hpp"
#include "switchcap/matrix.hpp"
#include "switchcap/state.hpp"

namespace switchcap {

using Permutation = std::vector<std::size_t>;

// M distinct permutations of the N channel slots.
class OrderSet {
 public:
  // Throws InvalidOrderSet unless every order is a permutation of
  // {0..n_channels-1}, there are no duplicates and 1 <= M.
  OrderSet(std::size_t n_channels, std::vector<Permutation> orders);

  std::size_t n_channels() const noexcept { return n_channels_; }
  std::size_t size() const noexcept { return orders_.size(); }
  const Permutation& operator[](std::size_t i) const { return orders_[i]; }
  const std::vector<Permutation>& orders() const noexcept { return orders_; }

  // True iff every pair of orders is related by a cyclic shift.
  bool all_cyclically_related() const;

 private:
  std::size_t n_channels_;
  std::vector<Permutation> orders_;
};

/// True iff b[k] == a[(k + s) mod N] for some shift s.
bool cyclically_related(const Permutation& a, const Permutation& b);

/// The N cyclic shifts of (0, 1, ..., N-1); the identity comes first.
OrderSet cyclic_orders(std::size_t n);

inline constexpr std::size_t kMaxAllOrdersChannels = 5;

/// All n! permutations in lexicographic order. Throws SizeGuard for n > 5.
OrderSet all_orders(std::size_t n);

// Nonnegative amplitudes of the control superposition, sum c_i^2 = 1.
class ControlAmplitudes {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit ControlAmplitudes(std::vector<double> values);
  static ControlAmplitudes uniform(std::size_t m);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool is_uniform(double tol = kNormTol) const;

 private:
  std::vector<double> values_;
};

// Work budget for the exhaustive tuple summation.
inline constexpr double kOracleBudget = 1e9;

/// M^2 * d^(2N) * (M d)^2, the cost model the size guard uses.
double oracle_cost(std::size_t n_channels, std::size_t m_orders, std::size_t dim);

/// Throws SizeGuard when oracle_cost exceeds kOracleBudget.
void check_size_guard(const OrderSet& orders, std::size_t dim);

/// d^(2N) Kraus operators of size (M d) x (M d), tuple-indexed with channel 0
/// as the most significant digit.
std::vector<ComplexMatrix> build_switch_kraus(const OrderSet& orders, const UnitaryBasis& basis);

// Joint control (x) target output. Control index is the outer (slow) one.
struct SwitchOutput {
  std::size_t m_orders;
  std::size_t dim;
  DensityMatrix state;

  // (i, j) control sector, a dim x dim matrix.
  ComplexMatrix block(std::size_t i, std::size_t j) const;
};

/// Switch output on (sum_i c_i |i>)(sum_j c_j <j|) (x) rho. The tuple sum is
/// split into fixed chunks and reduced in chunk order, so the result is
/// bit-identical for every `jobs` value.
SwitchOutput apply_switch(const OrderSet& orders, const UnitaryBasis& basis,
                          const ControlAmplitudes& c, const DensityMatrix& rho,
                          std::size_t jobs = 1);

/// (1/d^(2N)) sum_tuples P_i rho P_j^dagger, the (i, j) control block before
/// amplitude weighting.
ComplexMatrix cross_term(const OrderSet& orders, const UnitaryBasis& basis, std::size_t i,
                         std::size_t j, const DensityMatrix& rho);

struct OracleHolevo {
  double chi = 0.0;        // s_average - s_min_sampled
  double s_average = 0.0;  // entropy of the output on I/d
  double s_min_sampled = 0.0;
  std::size_t samples = 0;
};

/// Uniform-amplitude Holevo estimate: S(out(I/d)) minus the smallest output
/// entropy over min(n, d) computational basis states followed by Haar-random
/// pure states drawn from mt19937_64(seed). Lower bound on the Holevo
/// quantity restricted to this encoding.
OracleHolevo holevo_oracle_report(const OrderSet& orders, const UnitaryBasis& basis,
                                  std::size_t n_samples, std::uint64_t seed, std::size_t jobs = 1);

double holevo_oracle(const OrderSet& orders, const UnitaryBasis& basis, std::size_t n_samples,
                     std::uint64_t seed);

}  // namespace switchcap
