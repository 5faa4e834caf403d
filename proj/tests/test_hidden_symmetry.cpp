#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zlp/hidden_symmetry.hpp"

using zlp::InverseZetaMethod;

namespace {

const double kExperimentAlpha = 0.5 * (1.0 - std::exp(-1.0));

zlp::ErrorCode error_code_of(auto&& f) {
  try {
    f();
  } catch (const zlp::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected zlp::Error";
  return zlp::ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SolveAlphaPrime, ExperimentPair) {
  const auto pair = zlp::solve_alpha_prime(kExperimentAlpha);
  EXPECT_NEAR(2 * pair.alpha_prime, 1.4744642873193702, 1e-9);
  EXPECT_NEAR(2 * pair.alpha_prime, 1.47446, 1e-5);
  EXPECT_NEAR(pair.rho_inside, 0.81606, 1e-5);
  EXPECT_NEAR(pair.rho_outside, 1.29052, 1e-5);
  EXPECT_DOUBLE_EQ(pair.rho0, 0.5 - kExperimentAlpha);
  EXPECT_NEAR(pair.potential, 1.0, 1e-15);
}

TEST(SolveAlphaPrime, MatchesReferenceRoots) {
  // mpmath roots of zeta(2x) = 1/(1 - 2 alpha)
  const std::pair<double, double> cases[] = {
      {0.05, 1.8245105305304306}, {0.1, 1.3942163526662478}, {0.2, 0.98868771658914415},
      {0.25, 0.86432361949909181}, {0.3, 0.76517132131378846}, {0.4, 0.61346840420815738},
      {0.45, 0.553106149737419}};
  for (const auto& [alpha, root] : cases)
    EXPECT_NEAR(zlp::solve_alpha_prime(alpha).alpha_prime, root, 1e-9 * root) << alpha;
}

TEST(SolveAlphaPrime, LimitsOfTheStrip) {
  const auto near_half = zlp::solve_alpha_prime(0.5 - 1e-4);
  EXPECT_GT(near_half.alpha_prime, 0.5);
  EXPECT_LT(near_half.alpha_prime, 0.5 + 1e-3);
  const auto near_zero = zlp::solve_alpha_prime(1e-6);
  EXPECT_GT(near_zero.alpha_prime, 5.0);
}

TEST(SolveAlphaPrime, Errors) {
  EXPECT_EQ(error_code_of([] { zlp::solve_alpha_prime(0.0); }), zlp::ErrorCode::OutOfDomain);
  EXPECT_EQ(error_code_of([] { zlp::solve_alpha_prime(0.5); }), zlp::ErrorCode::OutOfDomain);
  EXPECT_EQ(error_code_of([] { zlp::solve_alpha_prime(1e-12); }), zlp::ErrorCode::NoBracket);
  EXPECT_EQ(error_code_of([] { zlp::solve_alpha_prime(0.5 - 1e-8); }), zlp::ErrorCode::NoBracket);
}

TEST(SolveAlphaPrime, GridInvariants) {
  const double tol = 1e-10;
  double previous = INFINITY;
  for (int k = 1; k <= 9; ++k) {
    const double alpha = 0.05 * k;
    const auto pair = zlp::solve_alpha_prime(alpha, tol);
    // Definition restated at the solver tolerance.
    EXPECT_LE(std::abs(pair.potential - zlp::outside_potential(pair.alpha_prime)), tol) << alpha;
    // Round trip through alpha = (1 - 1/zeta(2 alpha'))/2.
    EXPECT_NEAR(zlp::alpha_from_alpha_prime(pair.alpha_prime).value, alpha, 10 * tol) << alpha;
    EXPECT_LT(pair.alpha_prime, previous) << alpha;
    EXPECT_GT(pair.rho_outside, 1.0) << alpha;
    EXPECT_GT(pair.potential, 0.0);
    previous = pair.alpha_prime;
  }
}

TEST(AlphaFromAlphaPrime, Direct) {
  EXPECT_NEAR(zlp::alpha_from_alpha_prime(0.73723).value, 0.31606154840548094, 1e-12);
  EXPECT_NEAR(zlp::alpha_from_alpha_prime(0.73723).value, kExperimentAlpha, 1e-5);
  EXPECT_NEAR(zlp::alpha_from_alpha_prime(1.0).value, 0.5 * (1 - 6 / (std::numbers::pi * std::numbers::pi)),
              1e-14);
  EXPECT_NEAR(zlp::alpha_from_alpha_prime(40.0).value, 0.0, 1e-12);
  EXPECT_EQ(zlp::alpha_from_alpha_prime(1.0).tail_bound, 0.0);
  EXPECT_THROW(zlp::alpha_from_alpha_prime(0.5), zlp::Error);
}

TEST(AlphaFromAlphaPrime, PartialMethodsWithinTheirBounds) {
  const zlp::PartialLimits limits{200000, 200000};
  for (const double ap : {0.73723, 1.0, 1.5}) {
    const double direct = zlp::alpha_from_alpha_prime(ap).value;
    for (const auto method : {InverseZetaMethod::EulerProduct, InverseZetaMethod::MobiusSum}) {
      const auto est = zlp::alpha_from_alpha_prime(ap, method, limits);
      EXPECT_GT(est.tail_bound, 0.0);
      EXPECT_LE(std::abs(est.value - direct), est.tail_bound) << ap;
    }
  }
}

TEST(SymmetryResidual, ExperimentValues) {
  const auto pair = zlp::solve_alpha_prime(kExperimentAlpha);
  const auto r = zlp::symmetry_residual(pair);
  EXPECT_NEAR(r.inside.value, 0.999995, 2e-5);
  EXPECT_NEAR(r.outside.value, 0.999997, 2e-5);
  EXPECT_NEAR(r.difference, 0.999995 - 0.999997, 2e-6);
  EXPECT_LE(std::abs(r.difference), r.combined_error());
}

TEST(SymmetryResidual, VanishingInterval) {
  const auto r = zlp::symmetry_residual(zlp::solve_alpha_prime(0.2), 1e-9);
  EXPECT_LT(std::abs(r.inside.value), 1e-8);
  EXPECT_LT(std::abs(r.outside.value), 1e-8);
  EXPECT_LT(std::abs(r.difference), 1e-8);
}

TEST(SymmetryResidual, OutsideLineConvergesUnconditionally) {
  // alpha' = 1: the outside line carries ln zeta(2) with no RH input.
  const double alpha = zlp::alpha_from_alpha_prime(1.0).value;
  const auto pair = zlp::make_symmetry_pair(alpha, 1.0);
  const auto r = zlp::symmetry_residual(pair);
  EXPECT_LE(std::abs(r.outside.value - 0.49770030247074535), r.outside.total_error());
  EXPECT_LE(std::abs(r.difference), r.combined_error());
}

TEST(SweepSymmetry, RecordsInInputOrder) {
  EXPECT_TRUE(zlp::sweep_symmetry({}).empty());
  const auto records = zlp::sweep_symmetry({0.3, 0.0005, kExperimentAlpha});
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].ok());
  EXPECT_FALSE(records[1].ok());
  EXPECT_NE(records[1].error.find("OutOfDomain"), std::string::npos);
  ASSERT_TRUE(records[2].ok());
  EXPECT_NEAR(records[2].residual->inside.value, 0.999995, 2e-5);
  EXPECT_DOUBLE_EQ(records[0].alpha, 0.3);
  EXPECT_LE(std::abs(records[0].residual->difference), records[0].residual->combined_error());
}
