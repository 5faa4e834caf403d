#pragma once

// Pairs (alpha, alpha') with zeta(2 alpha') = 1/(1 - 2 alpha). The line
// rho = 1/2 + alpha inside the strip and the line rho = 2 alpha' + alpha - 1/2
// outside it share the scale rho0 = 1/2 - alpha; under RH their theta-form
// integrals agree.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zlp/arithmetic.hpp"
#include "zlp/error.hpp"
#include "zlp/lorentz.hpp"
#include "zlp/potentials.hpp"
#include "zlp/zeta.hpp"

namespace zlp {

struct SymmetryPair {
  double alpha;
  double alpha_prime;
  double potential;    // ln(1/(1 - 2 alpha)), shared by both lines
  double rho_inside;   // 1/2 + alpha
  double rho_outside;  // 2 alpha' + alpha - 1/2
  double rho0;         // 1/2 - alpha
};

inline SymmetryPair make_symmetry_pair(double alpha, double alpha_prime) {
  return {alpha, alpha_prime, inside_potential(alpha), 0.5 + alpha,
          2.0 * alpha_prime + alpha - 0.5, 0.5 - alpha};
}

/// Search interval for alpha'. The lower end sits just right of the pole of
/// zeta(2 alpha'); beyond the upper end zeta(2 alpha') equals 1 in double.
inline constexpr double kAlphaPrimeLower = 0.5 + 1e-6;
inline constexpr double kAlphaPrimeCap = 50.0;

/// Solves ln zeta(2 alpha') = ln(1/(1 - 2 alpha)) for the unique alpha' > 1/2.
/// zeta is decreasing on (1, inf), so bisection on the bracket is safe; Newton
/// with d/dx ln zeta(2x) = 2 zeta'/zeta(2x) finishes the job.
inline SymmetryPair solve_alpha_prime(double alpha, double tol = 1e-10, const EvalOptions& opts = {}) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw Error(ErrorCode::OutOfDomain, "alpha must lie in (0, 1/2), got " + std::to_string(alpha));
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const double target = inside_potential(alpha);
  // Relative gap between the target 1/(1-2 alpha) and 1; below tol the root
  // runs past the cap.
  if (std::expm1(target) <= tol)
    throw Error(ErrorCode::NoBracket, "target within tol of 1: alpha' exceeds the cap " +
                                          std::to_string(kAlphaPrimeCap));
  const auto g = [&](double x) { return outside_potential(x, opts) - target; };

  double lo = kAlphaPrimeLower;
  double hi = kAlphaPrimeCap;
  if (!(g(lo) > 0.0))
    throw Error(ErrorCode::NoBracket, "alpha too close to 1/2: root left of " + std::to_string(lo));

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  for (int iter = 0; iter < 100; ++iter) {
    if (std::abs(gx) <= 1e-2 * tol) break;
    (gx > 0.0 ? lo : hi) = x;
    const double slope = 2.0 * zeta_log_derivative_real(2.0 * x, opts);
    double next = x - gx / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool stalled = std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x;
    x = next;
    gx = g(x);
    if (stalled) break;
  }
  if (!(std::abs(gx) <= tol))
    throw Error(ErrorCode::NoConvergence, "alpha' solver stalled at residual " + std::to_string(gx));
  return make_symmetry_pair(alpha, x);
}

enum class InverseZetaMethod { Direct, EulerProduct, MobiusSum };

struct PartialLimits {
  std::int64_t prime_limit = 1'000'000;
  std::int64_t n_max = 1'000'000;
};

struct AlphaEstimate {
  double value;
  double tail_bound;  // bound on |value - exact alpha| from truncation; 0 for Direct
};

/// alpha = (1 - 1/zeta(2 alpha'))/2 with 1/zeta from the engine, the partial
/// Euler product, or the partial Möbius sum.
inline AlphaEstimate alpha_from_alpha_prime(double alpha_prime, InverseZetaMethod method = InverseZetaMethod::Direct,
                                            const PartialLimits& limits = {}, const EvalOptions& opts = {}) {
  if (!(alpha_prime > 0.5) || !std::isfinite(alpha_prime))
    throw Error(ErrorCode::OutOfDomain, "alpha' must exceed 1/2, got " + std::to_string(alpha_prime));
  const double s = 2.0 * alpha_prime;
  if (method == InverseZetaMethod::Direct) return {0.5 * (1.0 - 1.0 / zeta_real(s, opts)), 0.0};
  const auto partials = inverse_zeta_partials(s, limits.prime_limit, limits.n_max, opts);
  if (method == InverseZetaMethod::EulerProduct)
    return {0.5 * (1.0 - partials.euler_product), 0.5 * partials.euler_tail_bound};
  return {0.5 * (1.0 - partials.mobius_sum), 0.5 * partials.mobius_tail_bound};
}

struct SymmetryResidual {
  QuadratureResult inside;
  QuadratureResult outside;
  double difference;  // inside.value - outside.value

  double combined_error() const { return inside.total_error() + outside.total_error(); }
};

inline SymmetryResidual symmetry_residual(const SymmetryPair& pair, double theta_max = kDefaultThetaMax,
                                          const LorentzOptions& opts = {}) {
  const auto inside = integrate_theta_form(pair.rho_inside, pair.rho0, theta_max, opts);
  const auto outside = integrate_theta_form(pair.rho_outside, pair.rho0, theta_max, opts);
  return {inside, outside, inside.value - outside.value};
}

struct SweepRecord {
  double alpha;
  std::optional<SymmetryPair> pair;
  std::optional<SymmetryResidual> residual;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

/// Grid points closer than this to 0 or 1/2 are rejected.
inline constexpr double kSweepMargin = 1e-3;

/// One record per grid point, in input order; failures are recorded per point.
inline std::vector<SweepRecord> sweep_symmetry(const std::vector<double>& alpha_grid,
                                               double theta_max = kDefaultThetaMax,
                                               const LorentzOptions& opts = {}, double solver_tol = 1e-10) {
  std::vector<SweepRecord> out;
  out.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    SweepRecord record{alpha, std::nullopt, std::nullopt, {}};
    try {
      if (!(alpha >= kSweepMargin && alpha <= 0.5 - kSweepMargin))
        throw Error(ErrorCode::OutOfDomain, "grid point " + std::to_string(alpha) +
                                                " not inside [1e-3, 1/2 - 1e-3]");
      record.pair = solve_alpha_prime(alpha, solver_tol, opts.zeta);
      record.residual = symmetry_residual(*record.pair, theta_max, opts);
    } catch (const Error& e) {
      record.error = e.what();
    }
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace zlp
