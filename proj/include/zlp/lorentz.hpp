#pragma once

// Lorentz-weighted integrals along vertical lines Re s = rho:
//
//   (rho0/pi) * integral_R f(t) / (rho0^2 + t^2)^p dt,   p in {1, 2},
//
// and the compact form obtained from t = rho0 tan(theta). Integrands are even
// in t (|zeta(conj s)| = |zeta(s)|), so [0, T] is integrated and doubled.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zlp/detail/zero_table.hpp"
#include "zlp/error.hpp"
#include "zlp/quadrature.hpp"
#include "zlp/zeta.hpp"

namespace zlp {

/// Normalized Cauchy weight (rho0/pi)/(rho0^2 + t^2).
class LorentzMeasure {
 public:
  explicit LorentzMeasure(double rho0) : rho0_(rho0) {
    if (!(rho0 > 0.0) || !std::isfinite(rho0))
      throw Error(ErrorCode::InvalidArgument, "rho0 must be positive, got " + std::to_string(rho0));
  }

  double rho0() const { return rho0_; }
  double normalization() const { return rho0_ / std::numbers::pi; }

  /// Weight of the given kernel power at ordinate t.
  double weight(double t, int kernel_power = 1) const {
    const double q = rho0_ * rho0_ + t * t;
    return normalization() / (kernel_power == 1 ? q : q * q);
  }

 private:
  double rho0_;
};

/// Ascending, positive zero ordinates used to pre-split panels.
class ZeroOrdinates {
 public:
  ZeroOrdinates() = default;

  explicit ZeroOrdinates(std::vector<double> ordinates) : ordinates_(std::move(ordinates)) {
    for (std::size_t i = 0; i < ordinates_.size(); ++i) {
      if (!(ordinates_[i] > 0.0) || !std::isfinite(ordinates_[i]))
        throw Error(ErrorCode::InvalidArgument, "zero ordinates must be positive and finite");
      if (i > 0 && !(ordinates_[i] > ordinates_[i - 1]))
        throw Error(ErrorCode::InvalidArgument, "zero ordinates must be strictly increasing");
    }
  }

  static ZeroOrdinates embedded() {
    return ZeroOrdinates(
        std::vector<double>(detail::kFirstZeroOrdinates.begin(), detail::kFirstZeroOrdinates.end()));
  }

  /// One ordinate per line; blank lines and lines starting with '#' are skipped.
  static ZeroOrdinates parse(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream fields(line.substr(first));
      double value = 0.0;
      std::string rest;
      if (!(fields >> value) || (fields >> rest))
        throw Error(ErrorCode::ParseError, "zero file line " + std::to_string(line_no) + ": '" + line + "'");
      values.push_back(value);
    }
    try {
      return ZeroOrdinates(std::move(values));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }

  static ZeroOrdinates load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open zero file " + path.string());
    return parse(in);
  }

  const std::vector<double>& ordinates() const { return ordinates_; }
  std::size_t size() const { return ordinates_.size(); }

  std::size_t count_below(double t) const {
    return static_cast<std::size_t>(std::upper_bound(ordinates_.begin(), ordinates_.end(), t) -
                                    ordinates_.begin());
  }

 private:
  std::vector<double> ordinates_;
};

struct LorentzOptions {
  int kernel_power = 1;
  double t_max = 1000.0;
  double tol = 1e-10;
  std::optional<ZeroOrdinates> zeros = ZeroOrdinates::embedded();
  double initial_panel_width = 2.0;
  std::size_t max_panels = 400000;
  unsigned threads = 0;
  EvalOptions zeta{};
};

inline constexpr double kDefaultThetaMax = 0.999 * std::numbers::pi / 2.0;
inline constexpr int kTailSamples = 64;

namespace detail {

inline void check_kernel(int kernel_power) {
  if (kernel_power != 1 && kernel_power != 2)
    throw Error(ErrorCode::InvalidArgument, "kernel_power must be 1 or 2");
}

inline void check_rho(double rho) {
  if (!(rho > 0.5) || !std::isfinite(rho))
    throw Error(ErrorCode::OutOfDomain, "line abscissa must exceed 1/2, got " + std::to_string(rho));
}

/// Panel boundaries on [0, t_max]: a geometric ladder at the kernel scale, a
/// uniform grid, and the supplied zero ordinates.
inline std::vector<double> t_breakpoints(double rho0, double t_max, const LorentzOptions& opts) {
  std::vector<double> pts{0.0, t_max};
  for (double x = rho0 / 8.0; x < std::min(t_max, 8.0 * rho0); x *= 2.0) pts.push_back(x);
  const double width = opts.initial_panel_width > 0.0 ? opts.initial_panel_width : t_max;
  const auto cells = static_cast<std::size_t>(std::ceil(t_max / width));
  for (std::size_t i = 1; i < cells; ++i) pts.push_back(t_max * static_cast<double>(i) / cells);
  if (opts.zeros)
    for (const double z : opts.zeros->ordinates())
      if (z < t_max) pts.push_back(z);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// max |f| over kTailSamples points spread evenly on [t, 2t].
template <class F>
double sampled_bound(const F& f, double t) {
  double bound = 0.0;
  for (int j = 0; j < kTailSamples; ++j) {
    const double x = t * (1.0 + static_cast<double>(j) / (kTailSamples - 1));
    bound = std::max(bound, std::abs(f(x)));
  }
  return bound;
}

}  // namespace detail

/// (rho0/pi) * integral_{-T}^{T} f(t) / (rho0^2+t^2)^p dt for even f. The tail
/// estimate assumes |f| stays below its sampled maximum on [T, 2T] (taken from
/// tail_f, which lets callers bound a factor of the integrand separately).
template <class F, class TailF>
QuadratureResult integrate_lorentz_weighted(const F& f, const TailF& tail_f, const LorentzMeasure& measure,
                                            const LorentzOptions& opts) {
  detail::check_kernel(opts.kernel_power);
  if (!(opts.t_max > 0.0) || !std::isfinite(opts.t_max))
    throw Error(ErrorCode::InvalidArgument, "t_max must be positive and finite");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const int p = opts.kernel_power;
  const auto weighted = [&](double t) { return 2.0 * f(t) * measure.weight(t, p); };
  const auto pts = detail::t_breakpoints(measure.rho0(), opts.t_max, opts);
  const auto adaptive = integrate_adaptive(weighted, pts, {opts.tol, opts.max_panels, opts.threads});

  const double T = opts.t_max;
  const double bound = detail::sampled_bound(tail_f, T);
  const double scale = 2.0 * measure.normalization() * bound;
  const double tail = p == 1 ? scale / T : scale / (3.0 * T * T * T);
  return {adaptive.value, adaptive.error, adaptive.panels, T, tail};
}

template <class F>
QuadratureResult integrate_lorentz_weighted(const F& f, const LorentzMeasure& measure,
                                            const LorentzOptions& opts) {
  return integrate_lorentz_weighted(f, f, measure, opts);
}

/// Lorentz mean of ln|zeta(rho + i t)| (kernel 1) or its squared-kernel variant.
inline QuadratureResult integrate_lorentz(double rho, const LorentzMeasure& measure,
                                          const LorentzOptions& opts = {}) {
  detail::check_rho(rho);
  const auto f = [rho, &opts](double t) { return log_abs_zeta(Complex{rho, t}, opts.zeta); };
  return integrate_lorentz_weighted(f, measure, opts);
}

/// (2/pi) * integral_0^{theta_max} ln|zeta(rho + i rho0 tan theta)| d theta.
inline QuadratureResult integrate_theta_form(double rho, double rho0, double theta_max,
                                             const LorentzOptions& opts = {}) {
  detail::check_rho(rho);
  if (!(rho0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho0 must be positive");
  if (!(theta_max > 0.0 && theta_max < std::numbers::pi / 2))
    throw Error(ErrorCode::OutOfDomain, "theta_max must lie in (0, pi/2)");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const double T = rho0 * std::tan(theta_max);
  const auto log_zeta = [rho, &opts](double t) { return log_abs_zeta(Complex{rho, t}, opts.zeta); };
  const auto integrand = [&](double theta) { return 2.0 / std::numbers::pi * log_zeta(rho0 * std::tan(theta)); };

  std::vector<double> pts = detail::t_breakpoints(rho0, T, opts);
  for (double& x : pts) x = std::atan(x / rho0);
  pts.back() = theta_max;
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const auto adaptive = integrate_adaptive(integrand, pts, {opts.tol, opts.max_panels, opts.threads});
  const double tail = 2.0 / std::numbers::pi * (std::numbers::pi / 2 - theta_max) *
                      detail::sampled_bound(log_zeta, T);
  return {adaptive.value, adaptive.error, adaptive.panels, T, tail};
}

struct IdentityCheck {
  double numeric;
  double closed;
  double residual;
  QuadratureResult quadrature;
};

/// Quadrature self-check on (rho0/pi) * integral ln|1 - rho + i t| / (rho0^2 + t^2) dt
/// = ln(|1 - rho| + rho0). With an infinite t_max the whole line is mapped
/// onto theta in [0, pi/2) and nothing is truncated.
inline IdentityCheck log_linear_identity(double rho, double rho0, double t_max, double tol,
                                         unsigned threads = 0) {
  if (!std::isfinite(rho)) throw Error(ErrorCode::InvalidArgument, "rho must be finite");
  const LorentzMeasure measure(rho0);
  const double shift = 1.0 - rho;
  const auto f = [shift](double t) { return 0.5 * std::log(shift * shift + t * t); };

  QuadratureResult q;
  if (std::isinf(t_max)) {
    const auto integrand = [&](double theta) {
      return 2.0 / std::numbers::pi * f(rho0 * std::tan(theta));
    };
    std::vector<double> pts{0.0};
    for (int k = 1; k < 16; ++k) pts.push_back(std::numbers::pi / 2 * k / 16.0);
    if (shift != 0.0) pts.push_back(std::atan(std::abs(shift) / rho0));
    pts.push_back(std::numbers::pi / 2);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto adaptive = integrate_adaptive(integrand, pts, {tol, 400000, threads});
    q = {adaptive.value, adaptive.error, adaptive.panels, std::numeric_limits<double>::infinity(), 0.0};
  } else {
    LorentzOptions opts;
    opts.t_max = t_max;
    opts.tol = tol;
    opts.zeros.reset();
    opts.threads = threads;
    q = integrate_lorentz_weighted(f, measure, opts);
  }
  const double closed = std::log(std::abs(shift) + rho0);
  return {q.value, closed, q.value - closed, q};
}

}  // namespace zlp
