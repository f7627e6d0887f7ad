#include <gtest/gtest.h>

#include "superpluecker/error.hpp"
#include "superpluecker/ptolemy.hpp"

using namespace superpluecker;

namespace {

constexpr unsigned N = 6;

GrassmannElement c(const Rational& q) { return GrassmannElement(N, q); }
GrassmannElement zero() { return GrassmannElement(N); }

}  // namespace

TEST(Ptolemy, CrossRatio) {
  EXPECT_EQ(z_of({c(1), c(1), c(1), c(1), c(1), zero(), zero()}), c(1));
  EXPECT_EQ(z_of({c(Rational(9, 4)), c(1), c(1), c(1), c(1), zero(), zero()}), c(Rational(9, 4)));
  Rng rng(1);
  const auto q = sample_quad(rng, N, SampleProfile{}).quad;
  EXPECT_EQ(body(z_of(q)), body(q.a) * body(q.c) / (body(q.b) * body(q.d)));
}

TEST(Ptolemy, ClassicalWhenOddVanish) {
  const PtolemyQuad q{c(2), c(3), c(5), c(7), c(11), zero(), zero()};
  const auto f = ptolemy_flip(q);
  EXPECT_EQ(q.e * f.f, q.a * q.c + q.b * q.d);
  EXPECT_TRUE(f.sigma_prime.is_zero());
  EXPECT_TRUE(f.theta_prime.is_zero());
  const auto bars = bar_transform(q.e, f.f, q.sigma, q.theta, f.sigma_prime, f.theta_prime, z_of(q));
  EXPECT_EQ(bars.e_bar, q.e);
  EXPECT_EQ(bars.f_bar, f.f);
}

TEST(Ptolemy, PythagoreanParameter) {
  Rng rng(2);
  const auto two = sample_quad(rng, N, SampleProfile{}, Rational(2));
  EXPECT_EQ(body(z_of(two.quad)), Rational(9, 16));
  EXPECT_EQ(body(z_of(two.quad)) + 1, Rational(25, 16));
  const auto three = sample_quad(rng, N, SampleProfile{}, Rational(3));
  EXPECT_EQ(body(z_of(three.quad)) + 1, Rational(25, 9));
  EXPECT_THROW(sample_quad(rng, N, SampleProfile{}, Rational(1)), DomainError);
  EXPECT_THROW(sample_quad(rng, N, SampleProfile{}, Rational(0)), DomainError);
}

TEST(Ptolemy, IdentitiesOnSamples) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed(3, s));
    const auto sq = sample_quad(rng, N, SampleProfile{});
    const auto& q = sq.quad;
    const auto f = ptolemy_flip(q);
    EXPECT_EQ(f.sigma_prime * f.theta_prime, q.sigma * q.theta);
    const auto bars = bar_transform(q.e, f.f, q.sigma, q.theta, f.sigma_prime, f.theta_prime, z_of(q));
    EXPECT_EQ(bars.e_bar * bars.f_bar, q.a * q.c + q.b * q.d);
  }
}

TEST(Ptolemy, PlusHalfExponentGivesSquaredFactor) {
  Rng rng(4);
  const auto q = sample_quad(rng, N, SampleProfile{}).quad;
  const auto f = ptolemy_flip(q);
  const auto z = z_of(q);
  const auto bars = bar_transform(q.e, f.f, q.sigma, q.theta, f.sigma_prime, f.theta_prime, z,
                                  BarExponent::PlusHalf);
  const auto x = q.sigma * q.theta * sqrt(z) * invert(c(1) + z);
  const auto one_x = c(1) + x;
  EXPECT_EQ(bars.e_bar * bars.f_bar, (q.a * q.c + q.b * q.d) * one_x * one_x);
  EXPECT_NE(bars.e_bar * bars.f_bar, q.a * q.c + q.b * q.d);
}
