#include <gtest/gtest.h>

#include "superpluecker/error.hpp"
#include "superpluecker/grassmann.hpp"
#include "superpluecker/sampling.hpp"

using namespace superpluecker;

namespace {

constexpr unsigned N = 6;

GrassmannElement th(unsigned k) { return GrassmannElement::generator(N, k); }
GrassmannElement c(const Rational& q) { return GrassmannElement(N, q); }

}  // namespace

TEST(Grassmann, Addition) {
  EXPECT_EQ(th(1) + th(1), th(1) * Rational(2));
  EXPECT_EQ(th(3) + GrassmannElement(N), th(3));
  EXPECT_EQ((c(1) + th(1) * th(2)) + c(-1), th(1) * th(2));
}

TEST(Grassmann, ProductSigns) {
  EXPECT_EQ(th(1) * th(2), GrassmannElement::monomial(N, {1, 2}));
  EXPECT_EQ(th(2) * th(1), -GrassmannElement::monomial(N, {1, 2}));
  EXPECT_TRUE((th(1) * th(1)).is_zero());
  EXPECT_EQ(GrassmannElement::monomial(N, {3, 1, 2}), GrassmannElement::monomial(N, {1, 2, 3}));
  EXPECT_EQ(GrassmannElement::monomial(N, {2, 1, 3}), -GrassmannElement::monomial(N, {1, 2, 3}));
}

TEST(Grassmann, ParityClassification) {
  EXPECT_EQ(parity_of(c(3) + th(1) * th(2)), ParityClass::Even);
  EXPECT_EQ(parity_of(th(3)), ParityClass::Odd);
  EXPECT_EQ(parity_of(c(1) + th(1)), ParityClass::Mixed);
  EXPECT_EQ(parity_of(GrassmannElement(N)), ParityClass::Zero);
}

TEST(Grassmann, BodyAndSoul) {
  const auto x = c(Rational(5, 2)) + th(1) * th(2);
  EXPECT_EQ(body(x), Rational(5, 2));
  EXPECT_EQ(soul(x), th(1) * th(2));
  EXPECT_EQ(body(th(1)), 0);
}

TEST(Grassmann, Invert) {
  EXPECT_EQ(invert(c(2)), c(Rational(1, 2)));
  EXPECT_EQ(invert(c(1) + th(1) * th(2)), c(1) - th(1) * th(2));
  EXPECT_THROW(invert(th(1)), Error);
  EXPECT_THROW(invert(th(1) * th(2)), NotInvertibleError);
}

TEST(Grassmann, Sqrt) {
  const auto x = c(Rational(9, 4)) + th(1) * th(2);
  const auto r = sqrt(x);
  EXPECT_EQ(r, c(Rational(3, 2)) + th(1) * th(2) * Rational(1, 3));
  EXPECT_EQ(r * r, x);
  EXPECT_EQ(sqrt(c(1)), c(1));
  EXPECT_THROW(sqrt(c(2)), DomainError);
}

TEST(Grassmann, MismatchedAlgebrasRejected) {
  EXPECT_THROW(GrassmannElement::generator(3, 1) + GrassmannElement::generator(4, 1), ShapeError);
  EXPECT_THROW(GrassmannElement::generator(3, 4), DomainError);
}

TEST(Grassmann, RingAxiomsOnSamples) {
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(derive_seed(11, s));
    GeneratorPool pool(8);
    const auto x = sample_even(rng, pool, profile);
    const auto y = sample_odd(rng, pool, profile);
    const auto z = sample_odd(rng, pool, profile);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    // Supercommutativity.
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ(y * z, -(z * y));
    EXPECT_TRUE((y * y).is_zero());
    EXPECT_EQ(x * invert(x), GrassmannElement(8, 1));
    EXPECT_EQ(invert(x) * x, GrassmannElement(8, 1));
  }
}

TEST(Grassmann, DenseProductPathMatchesSparse) {
  // Products with many term pairs take the accumulator path; compare against
  // a term-by-term sum.
  SampleProfile profile;
  profile.soul_terms = 6;
  profile.soul_degree = 4;
  profile.odd_mode = OddMode::Pooled;
  profile.pooled_terms = 5;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(derive_seed(5, s));
    GeneratorPool pool(12);
    auto x = sample_even(rng, pool, profile) * sample_even(rng, pool, profile) +
             sample_odd(rng, pool, profile);
    auto y = sample_even(rng, pool, profile) * sample_odd(rng, pool, profile) +
             sample_even(rng, pool, profile);
    GrassmannElement expected(12);
    for (const auto& a : x.terms()) {
      for (const auto& b : y.terms()) {
        expected += GrassmannElement::from_terms(12, {a}) * GrassmannElement::from_terms(12, {b});
      }
    }
    EXPECT_EQ(x * y, expected);
  }
}

TEST(Sampling, Deterministic) {
  SampleProfile profile;
  Rng a(42), b(42);
  GeneratorPool pa(40), pb(40);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(sample_even(a, pa, profile), sample_even(b, pb, profile));
    EXPECT_EQ(sample_odd(a, pa, profile), sample_odd(b, pb, profile));
  }
}

TEST(Sampling, Postconditions) {
  SampleProfile profile;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    GeneratorPool pool(6);
    const auto e = sample_even(rng, pool, profile);
    EXPECT_NE(body(e), 0);
    EXPECT_TRUE(is_even(e));
    const auto o = sample_odd(rng, pool, profile);
    EXPECT_EQ(parity_of(o), ParityClass::Odd);
    EXPECT_EQ(pool.used(), 1U);
  }
  GeneratorPool pool(1);
  sample_odd(rng, pool, profile);
  EXPECT_THROW(sample_odd(rng, pool, profile), DomainError);
}
