#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zlp/arithmetic.hpp"

namespace {

// Trial-division oracle for mu(n).
int mobius_by_factoring(long n) {
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

}  // namespace

TEST(MobiusSieve, SmallValues) {
  const auto table = zlp::mobius_sieve(6);
  const std::vector<std::int8_t> expected{1, -1, -1, 0, -1, 1};
  ASSERT_EQ(table.values().size(), expected.size());
  EXPECT_TRUE(std::equal(expected.begin(), expected.end(), table.values().begin()));
  const auto big = zlp::mobius_sieve(100);
  EXPECT_EQ(big(30), -1);
  EXPECT_EQ(big(49), 0);
  EXPECT_EQ(big(1), 1);
  EXPECT_EQ(big.primes().size(), 25u);
}

TEST(MobiusSieve, MatchesTrialDivision) {
  const auto table = zlp::mobius_sieve(20000);
  for (long n = 1; n <= 20000; ++n) ASSERT_EQ(table(n), mobius_by_factoring(n)) << n;
}

TEST(MobiusSieve, DivisorSumsVanish) {
  constexpr long N = 5000;
  const auto table = zlp::mobius_sieve(N);
  std::vector<int> divisor_sum(N + 1, 0);
  for (long d = 1; d <= N; ++d)
    for (long m = d; m <= N; m += d) divisor_sum[m] += table(d);
  EXPECT_EQ(divisor_sum[1], 1);
  for (long n = 2; n <= N; ++n) ASSERT_EQ(divisor_sum[n], 0) << n;
}

TEST(MobiusSieve, Limits) {
  EXPECT_THROW(zlp::mobius_sieve(0), zlp::Error);
  try {
    zlp::mobius_sieve(zlp::kSieveCapacity + 1);
    FAIL();
  } catch (const zlp::Error& e) {
    EXPECT_EQ(e.code(), zlp::ErrorCode::CapacityExceeded);
  }
}

TEST(InverseZetaPartials, AtTwo) {
  const auto r = zlp::inverse_zeta_partials(2.0, 100000, 100000);
  const double exact = 6.0 / (std::numbers::pi * std::numbers::pi);
  EXPECT_NEAR(r.direct, exact, 1e-13);
  EXPECT_LE(std::abs(r.euler_product - exact), r.euler_tail_bound);
  EXPECT_LE(std::abs(r.mobius_sum - exact), r.mobius_tail_bound);
  EXPECT_NEAR(r.euler_product, exact, 2e-5);
  EXPECT_NEAR(r.mobius_sum, exact, 2e-5);
}

TEST(InverseZetaPartials, ExperimentArgument) {
  // mpmath: 1/zeta(1.47446) = 0.36787690318903818
  const auto r = zlp::inverse_zeta_partials(1.47446, 1000, 1000);
  EXPECT_NEAR(r.direct, 0.36787690318903818, 1e-12);
  EXPECT_NEAR(r.direct, 1.0 / std::numbers::e, 1e-5);
}

TEST(InverseZetaPartials, LargeArgumentTendsToOne) {
  const auto r = zlp::inverse_zeta_partials(60.0, 1000, 1000);
  EXPECT_NEAR(r.direct, 1.0, 1e-12);
  EXPECT_NEAR(r.euler_product, 1.0, 1e-15);
  EXPECT_NEAR(r.mobius_sum, 1.0, 1e-15);
}

TEST(InverseZetaPartials, TailBoundsHold) {
  for (const double s : {1.2, 1.47446, 2.0, 3.5}) {
    for (const long limit : {100L, 3000L, 50000L}) {
      const auto r = zlp::inverse_zeta_partials(s, limit, limit);
      EXPECT_LE(std::abs(r.euler_product - r.direct), r.euler_tail_bound) << s << " " << limit;
      EXPECT_LE(std::abs(r.mobius_sum - r.direct), r.mobius_tail_bound) << s << " " << limit;
    }
  }
}

TEST(InverseZetaPartials, Domain) {
  try {
    zlp::inverse_zeta_partials(1.0, 10, 10);
    FAIL();
  } catch (const zlp::Error& e) {
    EXPECT_EQ(e.code(), zlp::ErrorCode::OutOfDomain);
  }
}
