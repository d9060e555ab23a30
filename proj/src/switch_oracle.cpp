#include "switchcap/switch_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "switchcap/errors.hpp"
#include "switchcap/linalg.hpp"

namespace switchcap {

namespace {

// Tuples per reduction chunk. Fixed so the summation order never depends on
// the worker count.
constexpr std::size_t kChunkTuples = 64;

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Basis index of every channel for a tuple; channel 0 is the most
// significant base-d^2 digit.
std::vector<std::size_t> tuple_digits(std::size_t tuple, std::size_t n_channels,
                                      std::size_t basis_size) {
  std::vector<std::size_t> digits(n_channels);
  for (std::size_t k = n_channels; k-- > 0;) {
    digits[k] = tuple % basis_size;
    tuple /= basis_size;
  }
  return digits;
}

ComplexMatrix order_product(const Permutation& order, const std::vector<std::size_t>& digits,
                            const UnitaryBasis& basis) {
  ComplexMatrix p = basis[digits[order.front()]];
  for (std::size_t pos = 1; pos < order.size(); ++pos) p = p * basis[digits[order[pos]]];
  return p;
}

std::vector<ComplexMatrix> order_products(const OrderSet& orders, std::size_t tuple,
                                          const UnitaryBasis& basis) {
  const auto digits = tuple_digits(tuple, orders.n_channels(), basis.size());
  std::vector<ComplexMatrix> out;
  out.reserve(orders.size());
  for (const auto& order : orders.orders()) out.push_back(order_product(order, digits, basis));
  return out;
}

// Sums accumulate(partial, tuple) over all tuples in fixed chunks, then
// reduces the chunk partials in index order.
template <class Accumulate>
ComplexMatrix chunked_tuple_sum(std::size_t n_tuples, std::size_t rows, std::size_t cols,
                                std::size_t jobs, const Accumulate& accumulate) {
  const std::size_t n_chunks = (n_tuples + kChunkTuples - 1) / kChunkTuples;
  std::vector<ComplexMatrix> partials(n_chunks, ComplexMatrix(rows, cols));
  auto work = [&](std::size_t first_chunk, std::size_t stride) {
    for (std::size_t chunk = first_chunk; chunk < n_chunks; chunk += stride) {
      const std::size_t begin = chunk * kChunkTuples;
      const std::size_t end = std::min(n_tuples, begin + kChunkTuples);
      for (std::size_t t = begin; t < end; ++t) accumulate(partials[chunk], t);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n_chunks, 1));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  ComplexMatrix total(rows, cols);
  for (const auto& p : partials) total += p;
  return total;
}

}  // namespace

OrderSet::OrderSet(std::size_t n_channels, std::vector<Permutation> orders)
    : n_channels_(n_channels), orders_(std::move(orders)) {
  if (n_channels_ < 2) throw InvalidOrderSet("OrderSet: need at least 2 channels");
  if (orders_.empty()) throw InvalidOrderSet("OrderSet: need at least one order");
  std::set<Permutation> seen;
  for (const auto& order : orders_) {
    Permutation sorted = order;
    std::sort(sorted.begin(), sorted.end());
    Permutation expected(n_channels_);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (sorted != expected) throw InvalidOrderSet("OrderSet: order is not a permutation of 0..N-1");
    if (!seen.insert(order).second) throw InvalidOrderSet("OrderSet: duplicate order");
  }
}

bool OrderSet::all_cyclically_related() const {
  for (std::size_t i = 0; i < orders_.size(); ++i)
    for (std::size_t j = i + 1; j < orders_.size(); ++j)
      if (!cyclically_related(orders_[i], orders_[j])) return false;
  return true;
}

bool cyclically_related(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool match = true;
    for (std::size_t k = 0; k < n && match; ++k) match = b[k] == a[(k + shift) % n];
    if (match) return true;
  }
  return false;
}

OrderSet cyclic_orders(std::size_t n) {
  if (n < 2) throw InvalidOrderSet("cyclic_orders: need n >= 2");
  std::vector<Permutation> orders;
  for (std::size_t shift = 0; shift < n; ++shift) {
    Permutation p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (k + shift) % n;
    orders.push_back(std::move(p));
  }
  return OrderSet(n, std::move(orders));
}

OrderSet all_orders(std::size_t n) {
  if (n > kMaxAllOrdersChannels) {
    throw SizeGuard("all_orders: n = " + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxAllOrdersChannels));
  }
  if (n < 2) throw InvalidOrderSet("all_orders: need n >= 2");
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<Permutation> orders;
  do {
    orders.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return OrderSet(n, std::move(orders));
}

ControlAmplitudes::ControlAmplitudes(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidState("ControlAmplitudes: empty");
  double norm2 = 0.0;
  for (double c : values_) {
    if (!std::isfinite(c) || c < 0.0) throw InvalidState("ControlAmplitudes: amplitudes must be >= 0");
    norm2 += c * c;
  }
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InvalidState("ControlAmplitudes: sum of squares is " + std::to_string(norm2));
  }
}

ControlAmplitudes ControlAmplitudes::uniform(std::size_t m) {
  if (m == 0) throw InvalidState("ControlAmplitudes: empty");
  return ControlAmplitudes(std::vector<double>(m, 1.0 / std::sqrt(static_cast<double>(m))));
}

bool ControlAmplitudes::is_uniform(double tol) const {
  const double u = 1.0 / std::sqrt(static_cast<double>(values_.size()));
  return std::all_of(values_.begin(), values_.end(),
                     [&](double c) { return std::abs(c - u) <= tol; });
}

double oracle_cost(std::size_t n_channels, std::size_t m_orders, std::size_t dim) {
  const double m = static_cast<double>(m_orders);
  const double d = static_cast<double>(dim);
  const double n = static_cast<double>(n_channels);
  return m * m * std::pow(d, 2.0 * n) * (m * d) * (m * d);
}

void check_size_guard(const OrderSet& orders, std::size_t dim) {
  const double cost = oracle_cost(orders.n_channels(), orders.size(), dim);
  if (cost > kOracleBudget) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", cost);
    throw SizeGuard("switch oracle: N=" + std::to_string(orders.n_channels()) +
                    " M=" + std::to_string(orders.size()) + " d=" + std::to_string(dim) +
                    " needs ~" + std::string(buf) + " operations (budget 1e9)");
  }
}

std::vector<ComplexMatrix> build_switch_kraus(const OrderSet& orders, const UnitaryBasis& basis) {
  check_size_guard(orders, basis.dim());
  const std::size_t d = basis.dim();
  const std::size_t m = orders.size();
  const std::size_t n_tuples = ipow(basis.size(), orders.n_channels());
  const double scale = 1.0 / std::pow(static_cast<double>(d), static_cast<double>(orders.n_channels()));

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(n_tuples);
  for (std::size_t t = 0; t < n_tuples; ++t) {
    const auto products = order_products(orders, t, basis);
    ComplexMatrix k(m * d, m * d);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) k(l * d + r, l * d + c) = scale * products[l](r, c);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

ComplexMatrix SwitchOutput::block(std::size_t i, std::size_t j) const {
  if (i >= m_orders || j >= m_orders) throw DimensionMismatch("SwitchOutput::block: index out of range");
  return extract_block(state.matrix(), i, j, dim);
}

SwitchOutput apply_switch(const OrderSet& orders, const UnitaryBasis& basis,
                          const ControlAmplitudes& c, const DensityMatrix& rho, std::size_t jobs) {
  const std::size_t d = basis.dim();
  const std::size_t m = orders.size();
  if (rho.dim() != d) {
    throw DimensionMismatch("apply_switch: state dim " + std::to_string(rho.dim()) +
                            " vs basis dim " + std::to_string(d));
  }
  if (c.size() != m) {
    throw DimensionMismatch("apply_switch: " + std::to_string(c.size()) + " amplitudes for " +
                            std::to_string(m) + " orders");
  }
  check_size_guard(orders, d);

  const std::size_t n_tuples = ipow(basis.size(), orders.n_channels());
  const double norm = 1.0 / static_cast<double>(n_tuples);
  ComplexMatrix total = chunked_tuple_sum(n_tuples, m * d, m * d, jobs, [&](ComplexMatrix& acc, std::size_t t) {
    const auto products = order_products(orders, t, basis);
    for (std::size_t i = 0; i < m; ++i) {
      if (c[i] == 0.0) continue;
      const ComplexMatrix left = products[i] * rho.matrix();
      for (std::size_t j = 0; j < m; ++j) {
        if (c[j] == 0.0) continue;
        const double w = c[i] * c[j];
        // acc block (i, j) += w * left * P_j^dagger
        const ComplexMatrix& pj = products[j];
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t col = 0; col < d; ++col) {
            complex s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += left(r, k) * std::conj(pj(col, k));
            acc(i * d + r, j * d + col) += w * s;
          }
      }
    }
  });
  total *= norm;
  return SwitchOutput{m, d, DensityMatrix(std::move(total))};
}

ComplexMatrix cross_term(const OrderSet& orders, const UnitaryBasis& basis, std::size_t i,
                         std::size_t j, const DensityMatrix& rho) {
  if (i == j || i >= orders.size() || j >= orders.size()) {
    throw DomainError("cross_term: need distinct order indices below " + std::to_string(orders.size()));
  }
  if (rho.dim() != basis.dim()) throw DimensionMismatch("cross_term: state/basis dimension mismatch");
  check_size_guard(orders, basis.dim());

  const std::size_t d = basis.dim();
  const std::size_t n_tuples = ipow(basis.size(), orders.n_channels());
  ComplexMatrix total = chunked_tuple_sum(n_tuples, d, d, 1, [&](ComplexMatrix& acc, std::size_t t) {
    const auto digits = tuple_digits(t, orders.n_channels(), basis.size());
    accumulate_sandwich(acc, order_product(orders[i], digits, basis), rho.matrix(),
                        order_product(orders[j], digits, basis));
  });
  total *= 1.0 / static_cast<double>(n_tuples);
  return total;
}

OracleHolevo holevo_oracle_report(const OrderSet& orders, const UnitaryBasis& basis,
                                  std::size_t n_samples, std::uint64_t seed, std::size_t jobs) {
  if (n_samples == 0) throw DomainError("holevo_oracle: need at least one sample");
  check_size_guard(orders, basis.dim());
  const std::size_t d = basis.dim();
  const auto c = ControlAmplitudes::uniform(orders.size());
  auto output_entropy = [&](const DensityMatrix& rho) {
    return von_neumann_entropy(hermitian_spectrum(apply_switch(orders, basis, c, rho, jobs).state.matrix()));
  };

  OracleHolevo report;
  report.s_average = output_entropy(DensityMatrix::maximally_mixed(d));
  report.s_min_sampled = std::numeric_limits<double>::infinity();
  const std::size_t n_basis = std::min(n_samples, d);
  for (std::size_t k = 0; k < n_basis; ++k) {
    report.s_min_sampled = std::min(report.s_min_sampled, output_entropy(DensityMatrix::basis_state(d, k)));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = n_basis; k < n_samples; ++k) {
    const auto psi = haar_random_vector(d, rng);
    report.s_min_sampled = std::min(report.s_min_sampled, output_entropy(DensityMatrix::pure(psi)));
  }
  report.samples = n_samples;
  report.chi = report.s_average - report.s_min_sampled;
  return report;
}

double holevo_oracle(const OrderSet& orders, const UnitaryBasis& basis, std::size_t n_samples,
                     std::uint64_t seed) {
  return holevo_oracle_report(orders, basis, n_samples, seed).chi;
}

}  // namespace switchcap
