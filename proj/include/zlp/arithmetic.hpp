#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zlp/error.hpp"
#include "zlp/zeta.hpp"

namespace zlp {

/// Largest sieve bound accepted (one byte per entry plus the prime list).
inline constexpr std::int64_t kSieveCapacity = 200'000'000;

/// Möbius values mu(1..n_max) together with the primes <= n_max.
class MobiusTable {
 public:
  MobiusTable() = default;
  MobiusTable(std::vector<std::int8_t> mu, std::vector<std::int32_t> primes)
      : mu_(std::move(mu)), primes_(std::move(primes)) {}

  std::int64_t n_max() const { return static_cast<std::int64_t>(mu_.size()) - 1; }

  /// mu(n) for 1 <= n <= n_max.
  int operator()(std::int64_t n) const { return mu_[static_cast<std::size_t>(n)]; }

  /// mu(1), ..., mu(n_max).
  std::span<const std::int8_t> values() const { return std::span(mu_).subspan(1); }

  std::span<const std::int32_t> primes() const { return primes_; }

 private:
  std::vector<std::int8_t> mu_;  // index 0 unused
  std::vector<std::int32_t> primes_;
};

/// Linear sieve: every composite is visited once, through its least prime factor.
inline MobiusTable mobius_sieve(std::int64_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (n_max > kSieveCapacity)
    throw Error(ErrorCode::CapacityExceeded,
                "sieve bound " + std::to_string(n_max) + " exceeds " + std::to_string(kSieveCapacity));
  constexpr std::int8_t kUnvisited = 2;
  const auto n = static_cast<std::size_t>(n_max);
  std::vector<std::int8_t> mu(n + 1, kUnvisited);
  std::vector<std::int32_t> primes;
  mu[0] = 0;
  mu[1] = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (mu[i] == kUnvisited) {
      mu[i] = -1;
      primes.push_back(static_cast<std::int32_t>(i));
    }
    for (const std::int32_t p : primes) {
      const std::size_t composite = i * static_cast<std::size_t>(p);
      if (composite > n) break;
      if (i % static_cast<std::size_t>(p) == 0) {
        mu[composite] = 0;
        break;
      }
      mu[composite] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  return MobiusTable(std::move(mu), std::move(primes));
}

struct InverseZetaPartials {
  double euler_product;  // prod_{p <= prime_limit} (1 - p^{-s})
  double mobius_sum;     // sum_{n <= n_max} mu(n) n^{-s}
  double direct;         // 1 / zeta(s) from the series engine
  double euler_tail_bound;
  double mobius_tail_bound;
};

/// sum_{n > N} n^{-s} <= integral_N^inf x^{-s} dx = N^{1-s}/(s-1).
inline double power_tail_bound(double s, double n) { return std::pow(n, 1.0 - s) / (s - 1.0); }

inline InverseZetaPartials inverse_zeta_partials(double s, std::int64_t prime_limit, std::int64_t n_max,
                                                 const EvalOptions& opts = {}) {
  if (!(s > 1.0) || !std::isfinite(s))
    throw Error(ErrorCode::OutOfDomain, "partials need s > 1, got " + std::to_string(s));
  if (prime_limit < 1 || n_max < 1)
    throw Error(ErrorCode::InvalidArgument, "prime_limit and n_max must be >= 1");
  const MobiusTable table = mobius_sieve(std::max(prime_limit, n_max));

  double product = 1.0;
  for (const std::int32_t p : table.primes()) {
    if (p > prime_limit) break;
    product *= 1.0 - std::pow(static_cast<double>(p), -s);
  }

  // Neumaier summation, largest terms last so the small ones are not absorbed.
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t n = n_max; n >= 1; --n) {
    const int mu = table(n);
    if (mu == 0) continue;
    const double term = mu * std::pow(static_cast<double>(n), -s);
    const double next = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }

  // 1 - prod_{p > P}(1 - p^{-s}) <= sum_{p > P} p^{-s}; the prime restriction is
  // dropped so the bound stays valid without a density estimate.
  return {product,
          sum + carry,
          1.0 / zeta_real(s, opts),
          power_tail_bound(s, static_cast<double>(prime_limit)),
          power_tail_bound(s, static_cast<double>(n_max))};
}

}  // namespace zlp
