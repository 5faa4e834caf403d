#pragma once

// Lorentz potentials of ln|zeta| and their closed forms.
//
//   phi   = mean of ln|zeta(rho+it)| under the measure with scale rho0
//         = ln( zeta(rho+rho0) (rho+rho0-1) / (|1-rho| + rho0) )
//   phi1  = same with the extra factor (|1-rho| + it) inside the log
//   phi2  = phi1's integrand against the squared kernel
//
// phi1/phi2 are parameterized by alpha: rho = 1/2 + alpha, rho0 = |1/2 - alpha|.
// Inside the strip the closed forms hold only under RH; comparing them with
// the quadrature is the point of this module.

#include <cmath>
#include <string>
#include <string_view>

#include "zlp/error.hpp"
#include "zlp/lorentz.hpp"
#include "zlp/zeta.hpp"

namespace zlp {

enum class PotentialKind { Phi, Phi1, Phi2, Remark };

constexpr std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Phi: return "phi";
    case PotentialKind::Phi1: return "phi1";
    case PotentialKind::Phi2: return "phi2";
    case PotentialKind::Remark: return "remark";
  }
  return "unknown";
}

struct PotentialReport {
  PotentialKind name;
  double alpha;
  double rho;
  double rho0;
  double numeric;
  double closed;
  double residual;  // numeric - closed
  QuadratureResult quadrature;

  double total_error() const { return quadrature.total_error(); }
};

enum class FieldVariant { DAlpha, DRho };

/// Width of the excluded band around alpha = 1/2 where phi1, phi2 and E diverge.
inline constexpr double kBoundaryGuard = 1e-6;
/// |rho + rho0 - 1| below this uses the residue limit zeta(u)(u-1) -> 1.
inline constexpr double kResidueLimitRadius = 1e-8;

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::OutOfDomain, "alpha must be positive, got " + std::to_string(alpha));
  if (std::abs(alpha - 0.5) < kBoundaryGuard)
    throw Error(ErrorCode::DivergentAtBoundary, "alpha within " + std::to_string(kBoundaryGuard) +
                                                    " of 1/2, where both branches diverge");
}

inline bool inside_strip(double alpha) { return alpha < 0.5; }

/// ln(zeta(u) (u - 1)), continuous through u = 1.
inline double log_residue_product(double u, const EvalOptions& opts) {
  if (std::abs(u - 1.0) < kResidueLimitRadius) return 0.0;
  return std::log(zeta_real(u, opts) * (u - 1.0));
}

// Integral of the log factor ln|rho0 + it| beyond T, bounded by ln(c t) with
// c = sqrt(1 + rho0^2/T^2): kernel 1 gives (ln cT + 1)/T, kernel 2 gives
// (ln cT + 1/3)/(3 T^3).
inline double log_factor_tail_bound(double rho0, double T, int kernel_power) {
  const double log_ct = std::abs(0.5 * std::log1p(rho0 * rho0 / (T * T)) + std::log(T));
  const double scale = 2.0 * rho0 / std::numbers::pi;
  return kernel_power == 1 ? scale * (log_ct + 1.0) / T : scale * (log_ct + 1.0 / 3.0) / (3.0 * T * T * T);
}

inline PotentialReport make_report(PotentialKind kind, double alpha, double rho, double rho0,
                                   const QuadratureResult& q, double closed) {
  return {kind, alpha, rho, rho0, q.value, closed, q.value - closed, q};
}

/// phi1/phi2 numeric side: integrand ln|zeta(rho+it) (rho0 + it)|.
inline QuadratureResult product_integral(double rho, double rho0, int kernel_power, LorentzOptions opts) {
  opts.kernel_power = kernel_power;
  const auto log_zeta = [rho, &opts](double t) { return log_abs_zeta(Complex{rho, t}, opts.zeta); };
  const auto integrand = [&](double t) { return log_zeta(t) + 0.5 * std::log(rho0 * rho0 + t * t); };
  QuadratureResult q = integrate_lorentz_weighted(integrand, log_zeta, LorentzMeasure(rho0), opts);
  q.tail_estimate += log_factor_tail_bound(rho0, q.truncation_t, kernel_power);
  return q;
}

}  // namespace detail

/// ln(1/(1 - 2 alpha)): the inside-strip potential on rho = 1/2 + alpha, rho0 = 1/2 - alpha.
inline double inside_potential(double alpha) { return -std::log1p(-2.0 * alpha); }

/// ln zeta(2 alpha'): the potential on the line whose shifted argument is 2 alpha'.
inline double outside_potential(double alpha_prime, const EvalOptions& opts = {}) {
  return std::log(zeta_real(2.0 * alpha_prime, opts));
}

inline double phi_closed(double rho, double rho0, const EvalOptions& opts = {}) {
  detail::check_rho(rho);
  if (!(rho0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho0 must be positive");
  return detail::log_residue_product(rho + rho0, opts) - std::log(std::abs(1.0 - rho) + rho0);
}

inline double phi1_closed(double alpha, const EvalOptions& opts = {}) {
  detail::check_alpha(alpha);
  if (detail::inside_strip(alpha)) return 0.0;
  return std::log(zeta_real(2.0 * alpha, opts) * (2.0 * alpha - 1.0));
}

inline double phi2_closed(double alpha, const EvalOptions& opts = {}) {
  detail::check_alpha(alpha);
  if (detail::inside_strip(alpha)) return -Constants::euler_gamma / (2.0 * (0.5 - alpha));
  const double u = 2.0 * alpha;
  const double shift = u - 1.0;
  const double log_deriv = zeta_log_derivative_real(u, opts);
  return -(log_deriv + 1.0 / shift) / shift +
         std::log(zeta_real(u, opts) * shift) / (2.0 * (alpha - 0.5) * (alpha - 0.5));
}

/// Closed form of phi for rho0 = rho; both branches equal ln zeta(2) at rho = 1.
inline double remark_closed(double rho, const EvalOptions& opts = {}) {
  detail::check_rho(rho);
  const double z = zeta_real(2.0 * rho, opts);
  return rho < 1.0 ? std::log(z * (2.0 * rho - 1.0)) : std::log(z);
}

inline PotentialReport phi_report(double rho, double rho0, const LorentzOptions& opts = {}) {
  const double closed = phi_closed(rho, rho0, opts.zeta);
  LorentzOptions o = opts;
  o.kernel_power = 1;
  const auto q = integrate_lorentz(rho, LorentzMeasure(rho0), o);
  return detail::make_report(PotentialKind::Phi, rho - 0.5, rho, rho0, q, closed);
}

inline PotentialReport phi1_report(double alpha, const LorentzOptions& opts = {}) {
  const double closed = phi1_closed(alpha, opts.zeta);
  const double rho = 0.5 + alpha;
  const double rho0 = std::abs(0.5 - alpha);
  const auto q = detail::product_integral(rho, rho0, 1, opts);
  return detail::make_report(PotentialKind::Phi1, alpha, rho, rho0, q, closed);
}

/// The numeric side keeps the (rho0/pi) prefactor with the squared kernel.
inline PotentialReport phi2_report(double alpha, const LorentzOptions& opts = {}) {
  const double closed = phi2_closed(alpha, opts.zeta);
  const double rho = 0.5 + alpha;
  const double rho0 = std::abs(0.5 - alpha);
  const auto q = detail::product_integral(rho, rho0, 2, opts);
  return detail::make_report(PotentialKind::Phi2, alpha, rho, rho0, q, closed);
}

inline PotentialReport remark_potential(double rho, const LorentzOptions& opts = {}) {
  const double closed = remark_closed(rho, opts.zeta);
  LorentzOptions o = opts;
  o.kernel_power = 1;
  const auto q = integrate_lorentz(rho, LorentzMeasure(rho), o);
  return detail::make_report(PotentialKind::Remark, rho - 0.5, rho, rho, q, closed);
}

/// Closed-form field: d phi/d alpha (DAlpha) or d phi/d rho at fixed rho0 (DRho).
inline double electric_field(double alpha, FieldVariant variant, const EvalOptions& opts = {}) {
  detail::check_alpha(alpha);
  if (detail::inside_strip(alpha)) {
    const double inv = 1.0 / (1.0 - 2.0 * alpha);
    return variant == FieldVariant::DAlpha ? 2.0 * inv : Constants::euler_gamma + inv;
  }
  const double log_deriv = zeta_log_derivative_real(2.0 * alpha, opts);
  return variant == FieldVariant::DAlpha ? 2.0 * log_deriv : log_deriv;
}

}  // namespace zlp
