#pragma once

// Adaptive 21-point Gauss-Kronrod integration on a fixed set of breakpoints.
//
// Refinement proceeds in rounds: every panel of a round is evaluated
// independently (optionally on several threads), then the panels to bisect
// are chosen from the complete error list. Partial sums are always formed in
// positional order, so the result is bit-identical for any thread count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zlp/detail/parallel.hpp"
#include "zlp/error.hpp"

namespace zlp {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  double truncation_t = 0.0;  // where the t-integral was cut
  double tail_estimate = 0.0; // bound on the discarded |t| > truncation_t part

  double total_error() const { return error_estimate + tail_estimate; }
};

struct AdaptiveOptions {
  double tol = 1e-10;              // absolute target on the whole integral
  std::size_t max_panels = 400000;
  unsigned threads = 1;            // 0 = hardware concurrency
};

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

struct GaussKronrod21 {
  static constexpr std::array<double, 11> nodes = {
      0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
      0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
      0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
      0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
      0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
      0.000000000000000000000000000000000};
  static constexpr std::array<double, 11> kronrod_weights = {
      0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
      0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
      0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
      0.123491976262065851077715255580770, 0.134709217311473325928054001771707,
      0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
      0.149445554002916905664936468389821};
  // Gauss weights for nodes[1], nodes[3], ..., nodes[9].
  static constexpr std::array<double, 5> gauss_weights = {
      0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
      0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
      0.295524224714752870173892994651338};
};

struct PanelEstimate {
  double value;
  double error;
};

// Error scaling follows QUADPACK's qk21.
template <class F>
PanelEstimate gauss_kronrod21(const F& f, double a, double b) {
  using R = GaussKronrod21;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 10> lo{};
  std::array<double, 10> hi{};
  const double fc = f(center);
  double kronrod = R::kronrod_weights[10] * fc;
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * R::nodes[j];
    lo[j] = f(center - dx);
    hi[j] = f(center + dx);
    const double pair = lo[j] + hi[j];
    kronrod += R::kronrod_weights[j] * pair;
    abs_sum += R::kronrod_weights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
    if (j % 2 == 1) gauss += R::gauss_weights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = R::kronrod_weights[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    asc += R::kronrod_weights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

  const double value = kronrod * half;
  abs_sum *= abs_half;
  asc *= abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > tiny / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
  return {value, err};
}

struct Panel {
  double a;
  double b;
  double value = 0.0;
  double error = 0.0;
  bool evaluated = false;
};

inline bool splittable(const Panel& p) {
  const double scale = std::max({std::abs(p.a), std::abs(p.b), 1e-300});
  return (p.b - p.a) > 256.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()], never placing
/// a panel across an interior breakpoint. Breakpoints must be ascending;
/// duplicates are dropped.
template <class F>
AdaptiveResult integrate_adaptive(const F& f, std::span<const double> breakpoints,
                                  const AdaptiveOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (breakpoints.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two breakpoints");

  std::vector<detail::Panel> panels;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const double a = breakpoints[i - 1];
    const double b = breakpoints[i];
    if (!(b >= a)) throw Error(ErrorCode::InvalidArgument, "breakpoints must be ascending");
    if (b > a) panels.push_back({a, b});
  }
  if (panels.empty()) return {0.0, 0.0, 0};

  std::vector<std::size_t> pending;
  std::vector<std::size_t> order;
  for (;;) {
    pending.clear();
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (!panels[i].evaluated) pending.push_back(i);
    detail::parallel_for(pending.size(), opts.threads, [&](std::size_t k) {
      auto& p = panels[pending[k]];
      const auto est = detail::gauss_kronrod21(f, p.a, p.b);
      p.value = est.value;
      p.error = est.error;
      p.evaluated = true;
    });

    double total_error = 0.0;
    for (const auto& p : panels) total_error += p.error;
    if (total_error <= opts.tol) break;

    order.clear();
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (detail::splittable(panels[i])) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (panels[x].error != panels[y].error) return panels[x].error > panels[y].error;
      return x < y;
    });
    std::vector<char> split(panels.size(), 0);
    double remaining = total_error;
    std::size_t chosen = 0;
    for (const std::size_t i : order) {
      if (remaining <= 0.5 * opts.tol) break;
      split[i] = 1;
      remaining -= panels[i].error;
      ++chosen;
    }
    if (chosen == 0 || panels.size() + chosen > opts.max_panels) {
      double value = 0.0;
      for (const auto& p : panels) value += p.value;
      throw Error(ErrorCode::ToleranceNotReached,
                  "adaptive quadrature stopped at error " + std::to_string(total_error) +
                      " (tol " + std::to_string(opts.tol) + ", " + std::to_string(panels.size()) +
                      " panels, value " + std::to_string(value) + ")");
    }

    std::vector<detail::Panel> next;
    next.reserve(panels.size() + chosen);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const auto& p = panels[i];
      if (split[i]) {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back({p.a, mid});
        next.push_back({mid, p.b});
      } else {
        next.push_back(p);
      }
    }
    panels = std::move(next);
  }

  AdaptiveResult result;
  for (const auto& p : panels) {
    result.value += p.value;
    result.error += p.error;
  }
  result.panels = panels.size();
  return result;
}

}  // namespace zlp
