#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cdlab/rng.hpp"
#include "cdlab/trig_polynomial.hpp"

using cdlab::TrigPolynomial;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(TrigPolynomial, Evaluate) {
  const TrigPolynomial f(0.5, {1.0, 0.0}, {0.0, -2.0});
  for (double x : {0.0, 0.3, 1.7, -2.2, 6.0})
    EXPECT_NEAR(f(x), 0.5 + std::cos(x) - 2.0 * std::sin(2 * x), 1e-14);
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_DOUBLE_EQ(f.a(1), 1.0);
  EXPECT_DOUBLE_EQ(f.b(2), -2.0);
  EXPECT_DOUBLE_EQ(f.a(7), 0.0);
}

TEST(TrigPolynomial, RejectsNonFinite) {
  EXPECT_THROW(TrigPolynomial(NAN, {}, {}), std::invalid_argument);
  EXPECT_THROW(TrigPolynomial(0.0, {INFINITY}, {0.0}), std::invalid_argument);
}

TEST(TrigPolynomial, DerivativeMatchesFiniteDifference) {
  cdlab::SplitMix64 rng(41);
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = cdlab::random_trig_polynomial(rng, 4);
    const auto df = f.derivative();
    for (int i = 0; i < 1000; ++i) {
      const double x = rng.uniform(0.0, 2 * pi);
      const double fd = (f(x + h) - f(x - h)) / (2 * h);
      // Central difference error is h^2/6 |f'''| <= h^2/6 * sum k^3 |c_k|.
      ASSERT_NEAR(fd, df(x), 1e-6) << x;
    }
  }
}

TEST(TrigPolynomial, ShiftByPiFlipsOddHarmonics) {
  cdlab::SplitMix64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = cdlab::random_trig_polynomial(rng, 5);
    const auto g = f.shifted_by_pi();
    for (double x : {0.1, 1.0, 2.5, 4.0}) EXPECT_NEAR(g(x), f(x + pi), 1e-12);
    EXPECT_EQ(f.even_part() + f.odd_part(), f);
    EXPECT_EQ(f.odd_part().shifted_by_pi(), -1.0 * f.odd_part());
    EXPECT_EQ(f.even_part().shifted_by_pi(), f.even_part());
  }
}

TEST(TrigPolynomial, ProductMatchesPointwise) {
  cdlab::SplitMix64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = cdlab::random_trig_polynomial(rng, 3);
    const auto g = cdlab::random_trig_polynomial(rng, 4);
    const auto fg = f * g;
    EXPECT_EQ(fg.degree(), 7u);
    for (double x : {0.0, 0.7, 2.0, 3.3, 5.9}) EXPECT_NEAR(fg(x), f(x) * g(x), 1e-12);
  }
}

TEST(TrigPolynomial, ArithmeticAndNorm) {
  const auto c = TrigPolynomial::cos_k(2, 3.0);
  const auto s = TrigPolynomial::sin_k(1);
  EXPECT_TRUE((c - c).is_zero());
  EXPECT_NEAR((c + s).coefficient_norm(), std::sqrt(10.0), 1e-15);
  EXPECT_TRUE(TrigPolynomial::constant(4.0).derivative().is_zero());
}

TEST(SplitMix64, ReferenceStream) {
  // First outputs for seed 0 from the reference implementation.
  cdlab::SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ull);
  EXPECT_EQ(rng.next(), 0x06C45D188009454Full);
}

TEST(SplitMix64, UniformRange) {
  cdlab::SplitMix64 rng(44);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}
