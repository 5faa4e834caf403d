#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle/euler_maclaurin.hpp"
#include "zlp/zeta.hpp"

using zlp::Complex;
using zlp::ErrorCode;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const zlp::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected zlp::Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Zeta, EvenIntegerClosedForms) {
  EXPECT_NEAR(zlp::zeta(2.0).real(), kPi * kPi / 6.0, 1e-12);
  EXPECT_NEAR(zlp::zeta(4.0).real(), std::pow(kPi, 4) / 90.0, 1e-12);
  EXPECT_EQ(zlp::zeta(2.0).imag(), 0.0);
}

TEST(Zeta, ExperimentArgumentIsCloseToE) {
  // mpmath: zeta(1.47446) = 2.7183005818827865
  const double z = zlp::zeta_real(1.47446);
  EXPECT_NEAR(z, 2.7183005818827865, 1e-12);
  EXPECT_NEAR(z, std::numbers::e, 5e-5);
}

TEST(Zeta, FirstNontrivialZero) {
  const double modulus = std::abs(zlp::zeta({0.5, 14.134725}));
  EXPECT_LT(modulus, 1e-5);
  EXPECT_NEAR(modulus, 1.1241835020461373e-7, 1e-12);
}

TEST(Zeta, HighOrdinatesMatchReference) {
  struct Case {
    Complex s, value, log_derivative;
  };
  // mpmath, 30 digits
  const Case cases[] = {
      {{0.5, 100}, {2.6926198856813241, -0.020386029602598162}, {-1.3836444764195794, -0.08260940246796864}},
      {{0.6, 1000}, {0.62886128115380816, 0.59846078652818731}, {-0.45051210021911631, -3.8751447863488734}},
      {{0.8, 2000}, {0.53120472710631355, 0.080442326471511164}, {-0.1311677637919313, 0.33242074536142057}},
      {{1.5, 1999.5}, {0.69633388099803614, 0.062092822598239378}, {0.22033634732442124, 0.093251246176854879}},
      {{0.3, 50}, {-0.47797016836604676, 0.30179894143408388}, {-3.330236487604439, -2.6866952345523581}},
  };
  for (const auto& c : cases) {
    EXPECT_LT(std::abs(zlp::zeta(c.s) - c.value), 1e-11) << c.s;
    EXPECT_LT(std::abs(zlp::zeta_log_derivative(c.s) - c.log_derivative), 1e-10) << c.s;
  }
}

TEST(Zeta, AgreesWithEulerMaclaurinAcrossTheHalfPlane) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sigma(0.05, 3.0);
  std::uniform_real_distribution<double> t(-50.0, 50.0);
  for (int i = 0; i < 40; ++i) {
    const Complex s{sigma(rng), t(rng)};
    const Complex expected = zlp::oracle::zeta_euler_maclaurin(s);
    EXPECT_LT(std::abs(zlp::zeta(s) - expected), 1e-11) << s;
  }
}

TEST(Zeta, ConjugationSymmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> sigma(0.1, 4.0);
  std::uniform_real_distribution<double> t(-300.0, 300.0);
  for (int i = 0; i < 20; ++i) {
    const Complex s{sigma(rng), t(rng)};
    EXPECT_LE(std::abs(zlp::zeta(std::conj(s)) - std::conj(zlp::zeta(s))), 1e-14) << s;
  }
}

TEST(LogAbsZeta, Values) {
  EXPECT_NEAR(zlp::log_abs_zeta(2.0), std::log(kPi * kPi / 6.0), 1e-13);
  EXPECT_NEAR(zlp::log_abs_zeta(3.0), 0.18403417539149142, 1e-13);
  EXPECT_NEAR(zlp::log_abs_zeta(1.47446), 1.000006898975248, 1e-12);
  EXPECT_NEAR(zlp::log_abs_zeta(1.47446), 1.0, 1e-5);
}

TEST(LogAbsZeta, NearZeroIsLargeNegativeButFinite) {
  const double v = zlp::log_abs_zeta({0.5, 14.134725142});
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(v, -15.0);
}

TEST(ZetaLogDerivative, AtTwo) {
  EXPECT_NEAR(zlp::zeta_log_derivative_real(2.0), -0.56996099309453281, 1e-13);
}

TEST(ZetaLogDerivative, FiniteDifferenceOracleOnRealAxis) {
  const double s = 1.47446;
  const double h = 1e-5;
  const double fd = (zlp::log_abs_zeta(s + h) - zlp::log_abs_zeta(s - h)) / (2 * h);
  EXPECT_NEAR(zlp::zeta_log_derivative_real(s), fd, 1e-6);
  EXPECT_NEAR(zlp::zeta_log_derivative_real(s), -1.6091674375615622, 1e-12);
}

TEST(ZetaLogDerivative, MatchesCentralDifferenceOfZeta) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> sigma(1.2, 3.0);
  std::uniform_real_distribution<double> t(-40.0, 40.0);
  const double h = 1e-6;
  for (int i = 0; i < 20; ++i) {
    const Complex s{sigma(rng), t(rng)};
    const Complex dz = (zlp::zeta(s + h) - zlp::zeta(s - h)) / (2 * h);
    EXPECT_LT(std::abs(zlp::zeta_log_derivative(s) - dz / zlp::zeta(s)), 1e-6) << s;
  }
}

TEST(ZetaLogDerivative, PoleDominatesNearOne) {
  for (const double step : {1e-3, 1e-5, 1e-7}) {
    const double s = 1.0 + step;
    const double eps = s - 1.0;  // exact offset of the representable s
    const double d = zlp::zeta_log_derivative_real(s);
    // zeta'/zeta = -1/(s-1) + gamma + O(s-1)
    EXPECT_NEAR(d * eps, -1.0, 1e-3 * std::max(eps * 1e3, 1.0)) << eps;
    EXPECT_NEAR(d + 1.0 / eps, zlp::Constants::euler_gamma, 2.0 * eps + 1e-6) << eps;
  }
}

TEST(Zeta, DomainErrors) {
  EXPECT_EQ(error_code_of([] { zlp::zeta({0.0, 3.0}); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(error_code_of([] { zlp::zeta({-1.0, 0.0}); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(error_code_of([] { zlp::zeta({1.0 + 1e-9, 0.0}); }), ErrorCode::PoleAtOne);
  EXPECT_EQ(error_code_of([] { zlp::zeta_log_derivative(1.0); }), ErrorCode::PoleAtOne);
  EXPECT_EQ(error_code_of([] { zlp::log_abs_zeta({std::nan(""), 0.0}); }), ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(zlp::zeta({1.0 + 1e-7, 0.0}));
}

TEST(Zeta, TermBudgetExhaustion) {
  zlp::EvalOptions opts;
  EXPECT_EQ(error_code_of([&] { zlp::zeta({0.7, 3000.0}, opts); }), ErrorCode::NoConvergence);
  opts.max_terms = 16;
  EXPECT_EQ(error_code_of([&] { zlp::zeta({0.7, 30.0}, opts); }), ErrorCode::NoConvergence);
  opts.max_terms = 4;
  EXPECT_EQ(error_code_of([&] { zlp::zeta(2.0, opts); }), ErrorCode::InvalidArgument);
  opts = {};
  opts.abs_tol = 0.0;
  EXPECT_EQ(error_code_of([&] { zlp::zeta(2.0, opts); }), ErrorCode::InvalidArgument);
}

TEST(Zeta, LooserToleranceUsesFewerTerms) {
  zlp::EvalOptions loose;
  loose.abs_tol = 1e-6;
  const Complex s{0.8, 200.0};
  EXPECT_LT(std::abs(zlp::zeta(s, loose) - zlp::zeta(s)), 1e-6);
}

TEST(BorweinWeights, MonotoneInUnitInterval) {
  for (const int n : {8, 60, 900, 1900}) {
    const auto w = zlp::detail::borwein_weights(n);
    ASSERT_EQ(w.size(), static_cast<std::size_t>(n));
    EXPECT_LE(w.front(), 1.0);
    EXPECT_GT(w.front(), 0.99);
    for (std::size_t k = 1; k < w.size(); ++k) EXPECT_LE(w[k], w[k - 1]);
    EXPECT_GE(w.back(), 0.0);
  }
}
