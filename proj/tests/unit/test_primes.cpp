#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tplab/primes.hpp"

using namespace tplab::primes;

TEST(Primes, SmallLists) {
  const auto t10 = primes_up_to(10);
  EXPECT_EQ(std::vector<std::uint64_t>(t10.begin(), t10.end()), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  const auto t2 = primes_up_to(2);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2[0], 2u);
}

TEST(Primes, CountsAtPowersOfTen) {
  const std::size_t expected[] = {4, 25, 168, 1229, 9592, 78498, 664579};
  const auto t = primes_up_to(10'000'000);
  std::uint64_t x = 10;
  for (std::size_t e : expected) {
    EXPECT_EQ(t.count_up_to(x), e) << "x = " << x;
    x *= 10;
  }
}

TEST(Primes, SieveAgreesWithTrialDivision) {
  const auto t = primes_up_to(10'000);
  for (std::uint64_t n = 0; n <= 10'000; ++n) EXPECT_EQ(t.contains(n), is_prime(n)) << n;
}

TEST(Primes, SegmentBoundaries) {
  // the segment length is 2^18; primes straddling it must survive
  const auto t = primes_up_to((1u << 18) + 100);
  EXPECT_TRUE(t.contains(262139));
  EXPECT_TRUE(t.contains(262147));
  EXPECT_FALSE(t.contains(262144));
}

TEST(Primes, RejectsBadLimits) {
  EXPECT_THROW(primes_up_to(1), std::invalid_argument);
  EXPECT_THROW(primes_up_to(kMaxSieveLimit + 1), std::invalid_argument);
}

TEST(Mertens, ReciprocalSums) {
  EXPECT_DOUBLE_EQ(mertens_sum(2).sum, 0.5);
  EXPECT_NEAR(mertens_sum(100).sum, 1.8028172010488709399, 1e-14);
}

TEST(Mertens, GrowthMatchesLogLog) {
  const double d = mertens_sum(1'000'000).sum - mertens_sum(1000).sum;
  EXPECT_NEAR(d, 0.6892479723926059, 1e-12);
  EXPECT_NEAR(d, std::log(std::log(1e6)) - std::log(std::log(1e3)), 0.01);
}

TEST(Mertens, FittedConstantNearMeisselMertens) {
  EXPECT_NEAR(mertens_fitted_constant(), 0.2614972128, 2e-3);
}

TEST(Mertens, MonotoneAndSubadditive) {
  double prev = 0.0;
  for (std::uint64_t x = 2; x <= 400; ++x) {
    const double s = mertens_sum(x).sum;
    EXPECT_GE(s, prev);
    prev = s;
  }
  for (std::uint64_t a = 2; a <= 60; a += 7)
    for (std::uint64_t b = 2; b <= 60; b += 5)
      EXPECT_LE(mertens_sum(a + b).sum, mertens_sum(a).sum + mertens_sum(b).sum + 1e-15);
}
