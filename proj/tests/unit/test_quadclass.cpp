#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "cmsunit/error.hpp"
#include "cmsunit/quadclass.hpp"

using namespace cmsunit;

namespace {

// Class number from the analytic formula, independent of form enumeration:
// h(d) = -(w / 2|d|) sum_{n<|d|} chi(n) n for fundamental d, and
// h(f^2 d) = h(d) f / [O_K^* : O^*] prod_{p|f} (1 - chi(p)/p).
std::int64_t analytic_class_number(std::int64_t d) {
  const Decomposition dec = decompose(d);
  const std::int64_t dk = dec.fundamental;
  const std::int64_t w = dk == -3 ? 6 : dk == -4 ? 4 : 2;
  std::int64_t sum = 0;
  for (std::int64_t n = 1; n < -dk; ++n) sum += kronecker(dk, n) * n;
  const std::int64_t hk = -(w * sum) / (2 * -dk);
  std::int64_t f = dec.conductor;
  double h = static_cast<double>(hk * f) / static_cast<double>(f == 1 ? 1 : w / 2);
  for (std::int64_t p = 2, m = f; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    h *= 1.0 - static_cast<double>(kronecker(dk, p)) / static_cast<double>(p);
  }
  return std::llround(h);
}

std::int64_t mulmod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

TEST(Quadclass, IsDiscriminant) {
  EXPECT_TRUE(is_discriminant(-3));
  EXPECT_FALSE(is_discriminant(-5));
  EXPECT_TRUE(is_discriminant(-175));
  EXPECT_FALSE(is_discriminant(0));
  EXPECT_FALSE(is_discriminant(5));
  EXPECT_THROW(Discriminant(-5), Error);
}

TEST(Quadclass, Decompose) {
  EXPECT_EQ(Discriminant(-175).conductor(), 5);
  EXPECT_EQ(Discriminant(-175).fundamental(), -7);
  EXPECT_EQ(Discriminant(-7).conductor(), 1);
  EXPECT_EQ(Discriminant(-12).conductor(), 2);
  EXPECT_EQ(Discriminant(-12).fundamental(), -3);
  for (std::int64_t a = 3; a <= 20000; ++a) {
    if (!is_discriminant(-a)) continue;
    const Discriminant d(-a);
    ASSERT_EQ(d.conductor() * d.conductor() * d.fundamental(), d.value());
    ASSERT_TRUE(is_fundamental_discriminant(d.fundamental())) << d.value();
  }
}

TEST(Quadclass, ReducedFormsExamples) {
  EXPECT_EQ(reduced_forms(Discriminant(-3)), (std::vector<QuadForm>{{1, 1, 1}}));
  EXPECT_EQ(reduced_forms(Discriminant(-23)), (std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}}));
  EXPECT_EQ(reduced_forms(Discriminant(-11)), (std::vector<QuadForm>{{1, 1, 3}}));
  EXPECT_EQ(class_number(Discriminant(-7)), 1);
  EXPECT_EQ(class_number(Discriminant(-23)), 3);
  EXPECT_EQ(class_number(Discriminant(-4)), 1);
}

void check_forms(std::int64_t a) {
  const Discriminant d(-a);
  const auto forms = reduced_forms(d);
  std::set<QuadForm> seen;
  for (const auto& f : forms) {
    ASSERT_EQ(f.discriminant(), d.value());
    ASSERT_TRUE(f.is_reduced());
    ASSERT_TRUE(f.is_primitive());
    ASSERT_TRUE(seen.insert(f).second);
  }
  ASSERT_TRUE(std::is_sorted(forms.begin(), forms.end()));
  ASSERT_EQ(static_cast<std::int64_t>(forms.size()), class_number(d));
}

TEST(Quadclass, FormsWellFormedUpTo1e4) {
  for (std::int64_t a = 3; a <= 10000; ++a) {
    if (is_discriminant(-a)) check_forms(a);
  }
}

TEST(Quadclass, FormsWellFormedSampleTo1e6) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> pick(10001, 1000000);
  for (int i = 0; i < 300;) {
    const std::int64_t a = pick(rng);
    if (!is_discriminant(-a)) continue;
    ++i;
    check_forms(a);
  }
}

TEST(Quadclass, ClassNumberMatchesAnalyticFormula) {
  for (std::int64_t a = 3; a <= 10000; ++a) {
    if (!is_discriminant(-a)) continue;
    ASSERT_EQ(class_number(Discriminant(-a)), analytic_class_number(-a)) << -a;
  }
}

TEST(Quadclass, KroneckerExamples) {
  EXPECT_EQ(kronecker(-7, 7), 0);
  EXPECT_EQ(kronecker(-7, 11), 1);
  EXPECT_EQ(kronecker(-4, 13), 1);
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(-7, 2), 1);   // -7 = 1 mod 8
  EXPECT_EQ(kronecker(-3, 2), -1);  // -3 = 5 mod 8
}

TEST(Quadclass, KroneckerMatchesEulerCriterion) {
  static const std::int64_t odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                                            67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 997, 7919};
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick_q(0, std::size(odd_primes) - 1);
  std::uniform_int_distribution<std::int64_t> pick_d(-100000, -1);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t q = odd_primes[pick_q(rng)];
    const std::int64_t d = pick_d(rng);
    const std::int64_t e = mulmod_pow(d, (q - 1) / 2, q);
    const int euler = e == 0 ? 0 : e == 1 ? 1 : -1;
    ASSERT_EQ(kronecker(d, q), euler) << d << " " << q;
  }
}

TEST(Quadclass, KroneckerMultiplicativeInD) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> pick(-3000, -1);
  std::uniform_int_distribution<std::int64_t> pick_n(1, 5000);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t a = pick(rng), b = -pick(rng), n = pick_n(rng);
    if (std::gcd(a, b) != 1) continue;
    ASSERT_EQ(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n)) << a << " " << b << " " << n;
  }
}
