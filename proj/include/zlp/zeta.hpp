#pragma once

// Riemann zeta on the half-plane Re s > 0 through the alternating (Dirichlet
// eta) series with Borwein's acceleration weights:
//
//   zeta(s) = eta(s) / (1 - 2^{1-s}),
//   eta(s)  ~ sum_{k<n} (-1)^k w_k (k+1)^{-s},   w_k = (d_n - d_k) / d_n.
//
// The weights lie in [0, 1], so the sum does not cancel catastrophically. The
// raw d_k overflow a double once n exceeds ~400, hence the rescaled recurrence
// in borwein_weights().

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "zlp/error.hpp"

namespace zlp {

using Complex = std::complex<double>;

struct Constants {
  static constexpr double euler_gamma = 0.57721566490153286060651209008240243;
};

struct EvalOptions {
  double abs_tol = 1e-12;
  int max_terms = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
      throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
    if (max_terms < 16)
      throw Error(ErrorCode::InvalidArgument, "max_terms must be >= 16");
  }
};

/// |s - 1| below this radius is treated as the pole.
inline constexpr double kPoleGuardRadius = 1e-8;

namespace detail {

inline Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

/// 1 - 2^{1-s}, accurate near s = 1.
inline Complex eta_denominator(Complex s) {
  return -expm1((1.0 - s) * std::numbers::ln2);
}

inline void check_domain(Complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw Error(ErrorCode::InvalidArgument, "non-finite argument");
  if (!(s.real() > 0.0))
    throw Error(ErrorCode::OutOfDomain, "zeta engine requires Re s > 0, got Re s = " +
                                            std::to_string(s.real()));
  if (std::abs(s - 1.0) < kPoleGuardRadius)
    throw Error(ErrorCode::PoleAtOne, "argument within the pole guard radius of s = 1");
}

// Error model of the accelerated series (Borwein 2000, Algorithm 2):
//   |err| <= 3 (1 + 2|t|) e^{pi|t|/2} / ((3 + sqrt 8)^n |1 - 2^{1-s}|)
// for Re s >= 1/2. Left of the critical line 1/|Gamma(s)| grows by an extra
// |t|^{1/2 - sigma}, folded in below. The derivative series carries an extra
// log(k+1) per term; a few additional terms cover it.
inline int required_terms(Complex s, double tol, Complex denom, bool derivative) {
  constexpr double log_rate = 1.7627471740390860505;  // ln(3 + sqrt 8)
  const double t = std::abs(s.imag());
  const double sigma_growth = s.real() < 0.5 ? (0.5 - s.real()) * std::log1p(t) : 0.0;
  const double log_num = std::log(3.0 * (1.0 + 2.0 * t)) + 0.5 * std::numbers::pi * t +
                         sigma_growth - std::log(tol) - std::log(std::abs(denom));
  const double n = std::ceil(log_num / log_rate) + (derivative ? 6.0 : 1.0);
  if (!std::isfinite(n)) return std::numeric_limits<int>::max();
  return static_cast<int>(std::max(n, 8.0));
}

/// Normalized weights w_k = (d_n - d_k)/d_n, k = 0..n-1.
inline std::vector<double> borwein_weights(int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  constexpr double kRescaleAt = 1e200;
  for (int i = 0; i < n; ++i) {
    const double ratio = 4.0 * (static_cast<double>(n) + i) * (static_cast<double>(n) - i) /
                         ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    c[i + 1] = c[i] * ratio;
    if (c[i + 1] > kRescaleAt) {
      // Earlier entries may underflow to zero; they are negligible against d_n.
      for (int j = 0; j <= i + 1; ++j) c[j] *= 1.0 / kRescaleAt;
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  double suffix = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    suffix += c[k + 1];
    w[k] = suffix;
  }
  const double total = suffix + c[0];
  for (double& x : w) x /= total;
  return w;
}

struct EtaSums {
  Complex eta;
  Complex deta;  // d eta / ds, only filled when requested
};

inline EtaSums eta_sums(Complex s, int n, bool with_derivative) {
  const std::vector<double> w = borwein_weights(n);
  Complex eta{0.0, 0.0};
  Complex deta{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double log_base = std::log(static_cast<double>(k) + 1.0);
    const double mag = w[k] * std::exp(-s.real() * log_base);
    const double phase = s.imag() * log_base;
    const Complex term{mag * std::cos(phase), -mag * std::sin(phase)};
    if (k % 2 == 0) {
      eta += term;
      if (with_derivative) deta -= log_base * term;
    } else {
      eta -= term;
      if (with_derivative) deta += log_base * term;
    }
  }
  return {eta, deta};
}

inline EtaSums checked_eta(Complex s, const EvalOptions& opts, Complex denom, bool derivative) {
  const int n = required_terms(s, opts.abs_tol, denom, derivative);
  if (n > opts.max_terms)
    throw Error(ErrorCode::NoConvergence,
                "accelerated series needs " + std::to_string(n) + " terms at Im s = " +
                    std::to_string(s.imag()) + ", max_terms = " + std::to_string(opts.max_terms));
  return eta_sums(s, n, derivative);
}

}  // namespace detail

/// zeta(s) for Re s > 0, s != 1.
inline Complex zeta(Complex s, const EvalOptions& opts = {}) {
  opts.validate();
  detail::check_domain(s);
  const Complex denom = detail::eta_denominator(s);
  return detail::checked_eta(s, opts, denom, false).eta / denom;
}

/// ln|zeta(s)|. Near a zero this is large and negative but finite.
inline double log_abs_zeta(Complex s, const EvalOptions& opts = {}) {
  opts.validate();
  detail::check_domain(s);
  const Complex denom = detail::eta_denominator(s);
  const Complex eta = detail::checked_eta(s, opts, denom, false).eta;
  return std::log(std::abs(eta)) - std::log(std::abs(denom));
}

/// zeta'(s)/zeta(s) from the term-wise differentiated series.
inline Complex zeta_log_derivative(Complex s, const EvalOptions& opts = {}) {
  opts.validate();
  detail::check_domain(s);
  const Complex denom = detail::eta_denominator(s);
  const auto sums = detail::checked_eta(s, opts, denom, true);
  // d/ds ln(1 - 2^{1-s}) = 2^{1-s} ln 2 / (1 - 2^{1-s})
  const Complex pow_term = 1.0 - denom;
  return sums.deta / sums.eta - pow_term * std::numbers::ln2 / denom;
}

inline double zeta_real(double s, const EvalOptions& opts = {}) {
  return zeta(Complex{s, 0.0}, opts).real();
}

inline double zeta_log_derivative_real(double s, const EvalOptions& opts = {}) {
  return zeta_log_derivative(Complex{s, 0.0}, opts).real();
}

}  // namespace zlp
