#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "tplab/kloosterman.hpp"

using namespace tplab::kloosterman;

TEST(Kloosterman, TinyModuli) {
  EXPECT_DOUBLE_EQ(kloosterman({1, 1, 1}), 1.0);
  EXPECT_NEAR(kloosterman({1, 1, 2}), 1.0, 1e-15);
  EXPECT_NEAR(kloosterman({1, 1, 3}), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(kloosterman({1, 2, 1}), 1.0);
}

TEST(Kloosterman, ReferenceValues) {
  // mpmath, 30 digits
  EXPECT_NEAR(kloosterman({1, 1, 7}), 2.04891733952230531, 1e-14);
  EXPECT_NEAR(kloosterman({3, 5, 91}), -9.87586373163500324, 1e-13);
  EXPECT_NEAR(kloosterman({1, 1, 101}), 1.52578217665837235, 1e-13);
  EXPECT_NEAR(kloosterman({2, 3, 360}), 0.0, 1e-12);
  EXPECT_NEAR(kloosterman({7, 7, 125}), -17.0487328355722937, 1e-13);
}

TEST(Kloosterman, RealValued) {
  for (std::uint64_t c : {5u, 12u, 97u, 210u, 1024u}) EXPECT_LT(kloosterman_direct({3, 4, c}).imag_residual, 1e-12);
}

TEST(Kloosterman, FactoredMatchesDirect) {
  for (std::uint64_t c = 1; c <= 400; ++c)
    for (std::uint64_t m : {1u, 2u, 6u})
      for (std::uint64_t n : {1u, 5u, 12u}) {
        const KloostermanQuery q{m, n, c};
        EXPECT_NEAR(kloosterman_factored(q), kloosterman(q), 1e-11) << m << " " << n << " " << c;
      }
}

TEST(Kloosterman, Symmetries) {
  for (std::uint64_t c : {9u, 35u, 64u, 221u}) {
    EXPECT_EQ(residue_histogram({2, 7, c}), residue_histogram({7, 2, c}));
    // S(m, n; c) = S(1, mn; c) for gcd(m, c) = 1
    if (std::gcd<std::uint64_t>(2, c) == 1) EXPECT_NEAR(kloosterman({2, 7, c}), kloosterman({1, 14, c}), 1e-12);
  }
}

TEST(Kloosterman, Ramanujan) {
  // n = c gives the Ramanujan sum c_c(m)
  EXPECT_NEAR(kloosterman({1, 12, 12}), 0.0, 1e-12);
  EXPECT_NEAR(kloosterman({6, 12, 12}), -4.0, 1e-12);
}

TEST(Kloosterman, WeilBound) {
  for (std::uint64_t c = 1; c <= 600; ++c) {
    const auto w = weil_bound_check({3, 5, c});
    EXPECT_TRUE(w.holds) << c;
  }
  EXPECT_DOUBLE_EQ(weil_bound({2, 4, 8}), 4.0 * std::sqrt(2.0) * std::sqrt(8.0));
}

TEST(Kloosterman, Arithmetic) {
  EXPECT_EQ(divisor_count(1), 1u);
  EXPECT_EQ(divisor_count(360), 24u);
  EXPECT_EQ(mod_inverse(3, 7), 5u);
  EXPECT_EQ(mod_inverse(0, 1), 0u);
  EXPECT_THROW(mod_inverse(4, 8), std::invalid_argument);
  const auto f = factorize(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].pe, 8u);
  EXPECT_EQ(f[2].p, 5u);
  EXPECT_THROW(kloosterman({0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(divisor_count(0), std::invalid_argument);
}
