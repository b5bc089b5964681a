#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

#include "cmsunit/error.hpp"
#include "cmsunit/heights.hpp"
#include "cmsunit/intarith.hpp"

using namespace cmsunit;

namespace {

BoundInputs pair_13_17() {
  BoundInputs in;
  in.disc0 = -7;
  in.class_number0 = 1;
  in.h_j0 = log(Float(3375));
  in.ell = 13;
  in.big_ell = 17;
  return in;
}

Float log10_to_ln(double x) { return Float(x) * log(Float(10)); }

}  // namespace

TEST(Heights, ComputeFExamples) {
  EXPECT_EQ(compute_F(100), 4);
  EXPECT_EQ(compute_F(3), 1);
  EXPECT_EQ(compute_F(mpz_class("1000000000000000")), 256);
}

TEST(Heights, ComputeFMatchesBruteForce) {
  // omega(a) for a <= 1000 by sieve, then the running max of 2^omega over a <= sqrt n.
  std::vector<int> omega(1001, 0);
  for (int p = 2; p <= 1000; ++p)
    if (omega[p] == 0)
      for (int k = p; k <= 1000; k += p) ++omega[k];
  std::vector<int> best(1001, 1);
  for (int a = 2; a <= 1000; ++a) best[a] = std::max(best[a - 1], 1 << omega[a]);
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    const auto r = static_cast<int>(std::sqrt(static_cast<double>(n)) + 1e-9);
    ASSERT_EQ(compute_F(n), best[r]) << n;
  }
}

TEST(Heights, EfExamples) {
  EXPECT_EQ(e_f(7, 1, 3), 0);
  EXPECT_EQ(e_f(2, -1, 1), mpq_class(2, 3));
  EXPECT_EQ(e_f(3, 0, 1), mpq_class(1, 3));
  EXPECT_EQ(e_f(2, -1, 2), mpq_class(1));  // (2/3) * (3/4)/(1/2)
  EXPECT_THROW(e_f(3, 0, 0), Error);
}

TEST(Heights, DeltaExamples) {
  EXPECT_EQ(delta_fn(1), 0);
  const Float d6 = delta_fn(6);
  EXPECT_NEAR(d6.convert_to<double>(), -0.0604499, 1e-7);
  EXPECT_GE(d6, Float("-0.0605"));
  EXPECT_NEAR((delta_fn(2) + delta_fn(3) - d6).convert_to<double>(), 0.0, 1e-30);
}

TEST(Heights, DeltaAdditiveAndMonotoneInPowers) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1000000);
  for (int i = 0; i < 1000;) {
    const auto m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    ++i;
    ASSERT_LT(abs(delta_fn(m * n) - delta_fn(m) - delta_fn(n)), Float(1e-30));
  }
  for (std::uint32_t p : primes_up_to(100)) {
    std::uint64_t pk = p;
    for (int k = 1; k <= 10 && pk <= UINT64_MAX / p; ++k, pk *= p) ASSERT_GE(delta_fn(pk * p), delta_fn(pk)) << p << "^" << k;
  }
  for (std::uint32_t p : primes_up_to(10000))
    if (p >= 5) ASSERT_GT(delta_fn(p), 0) << p;
}

TEST(Heights, PkLowerBound) {
  const Float c0 = pk_constant(0);
  const Float expected = Float("1.509") * log(Float(3)) - 12 * c0 + Float("8.64");
  EXPECT_EQ(height_lower_pk(Float(3), 0), expected);
  EXPECT_GT(height_lower_pk(Float(1e20), 0.5), height_lower_pk(Float(1e20), 1.5));
  EXPECT_THROW(pk_constant(-1), Error);
  EXPECT_THROW(height_lower_pk(Float(2), 0), Error);
  EXPECT_NEAR(euler_gamma().convert_to<double>(), 0.5772156649015329, 1e-15);
}

TEST(Heights, MajorantsDomain) {
  EXPECT_THROW(majorants(pair_13_17(), Float(1e14)), Error);
  EXPECT_NO_THROW(majorants(pair_13_17(), Float(1e16)));
}

TEST(Heights, MajorantsNonnegativeAndDecreasing) {
  const BoundInputs in = pair_13_17();
  BoundBreakdown prev = majorants_log(in, log10_to_ln(16));
  for (double e = 16.125; e <= 80; e += 0.125) {
    const BoundBreakdown b = majorants_log(in, log10_to_ln(e));
    ASSERT_GE(b.A, 0);
    ASSERT_GE(b.B, 0);
    ASSERT_GE(b.C, 0);
    ASSERT_GE(b.D, 0);
    ASSERT_LT(b.A, prev.A) << e;
    ASSERT_LT(b.B, prev.B) << e;
    ASSERT_LT(b.C, prev.C) << e;
    ASSERT_LT(b.D, prev.D) << e;
    prev = b;
  }
}

// Recomputed in double from the closed forms at |D| = 10^62 for the {13, 17}
// pair with j0 = -3375; the epsilon sum there exceeds the target 0.2481.
TEST(Heights, MajorantsAt1e62MatchClosedForms) {
  const double L = 62 * std::log(10.0), c1 = 1.1714, pi = std::acos(-1.0);
  const double Y = 3 / std::sqrt(5.0) * L - 9.78;
  const double K = 4 * std::log(7.0) + std::log(3375.0) + 1.33 + std::log(2.0);
  const double logF = std::log(2.0) / 2 * L / (std::log(L) - c1 - std::log(2.0)) + std::log(L);
  const double s53 = std::sqrt(5.0) / 3;
  const double A = 8 / pi * std::exp(-0.1908 * L);
  const double B = (logF + K) / Y;
  const double C = std::log(Y / pi) / Y;
  const double D = s53 + (s53 * 9.78 + std::log(17.0) * (std::log(49.0) / std::log(13.0) + 1)) / Y;

  const BoundBreakdown b = majorants_log(pair_13_17(), log10_to_ln(62));
  EXPECT_NEAR(b.A.convert_to<double>(), A, 1e-20);
  EXPECT_NEAR(b.B.convert_to<double>(), B, 1e-12);
  EXPECT_NEAR(b.C.convert_to<double>(), C, 1e-12);
  EXPECT_NEAR(b.D.convert_to<double>(), D, 1e-12);
  EXPECT_NEAR(b.K.convert_to<double>(), K, 1e-12);
  EXPECT_NEAR(b.epsilon_sum.convert_to<double>(), 0.315535, 1e-6);
  EXPECT_EQ(b.total, b.A + b.B + b.C + b.D);
}

TEST(Heights, ThresholdIsACrossing) {
  const BoundInputs in = pair_13_17();
  const Threshold t = find_threshold(in);
  EXPECT_FALSE(t.extended);
  EXPECT_EQ(t.c1, in.c1);
  EXPECT_LT(majorants_log(in, t.log_abs).total, 1);
  EXPECT_GE(majorants_log(in, t.log_abs - Float(1e-6)).total, 1);
  EXPECT_NEAR((t.log_abs / log(Float(10))).convert_to<double>(), 80.841, 1e-3);
  // Smaller c1 can only help.
  BoundInputs zero = in;
  zero.c1 = 0;
  EXPECT_LT(find_threshold(zero).log_abs, t.log_abs);
}

TEST(Heights, ThresholdNotFoundBelowCeiling) {
  GridOptions g;
  g.ceiling = 1e50;
  EXPECT_THROW(find_threshold(pair_13_17(), g), Error);
}

TEST(Heights, UpperBoundsOrdered) {
  const Float d(1e14);
  const mpz_class F = compute_F(mpz_class("100000000000000"));
  const Float u1 = height_upper_1728(d, 1, F, 7);
  const Float u2 = height_upper_1728(d, 2, F, 7);
  EXPECT_GT(u1, 0);
  EXPECT_GT(u1, u2);
  EXPECT_GT(height_upper_0(d, 1, F, 7), u1);
  EXPECT_GT(height_upper_0(d, 5, F, 5), height_upper_1728(d, 5, F, 5));
  EXPECT_THROW(height_upper_1728(Float(1e13), 1, F, 7), Error);
  EXPECT_THROW(height_upper_0(d, 1, F, 3), Error);
}

TEST(Heights, VariantThresholds) {
  const Threshold t7 = find_threshold_1728(7, 1.1714);
  EXPECT_GT(gap_1728(t7.log_abs + Float(1), 7, 1.1714), 0);
  EXPECT_NEAR((t7.log_abs / log(Float(10))).convert_to<double>(), 116.08, 0.01);
  const Threshold t0 = find_threshold_0(5, 1.0, 1.1714);
  EXPECT_TRUE(t0.extended);
  EXPECT_FALSE(t0.value.has_value());
  EXPECT_GT(gap_0(t0.log_abs * 2, 5, 1.0, 1.1714), 0);
}
