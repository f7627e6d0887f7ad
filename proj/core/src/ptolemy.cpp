#include "superpluecker/ptolemy.hpp"

#include "superpluecker/error.hpp"

namespace superpluecker {

namespace {

GrassmannElement one(unsigned g) { return GrassmannElement(g, 1); }

// x = sigma theta sqrt(Z) / (1 + Z); zero without taking roots when sigma theta = 0.
GrassmannElement nilpotent_term(const GrassmannElement& sigma, const GrassmannElement& theta,
                                const GrassmannElement& z) {
  GrassmannElement st = sigma * theta;
  if (st.is_zero()) return st;
  return st * sqrt(z) * invert(one(z.generator_count()) + z);
}

}  // namespace

GrassmannElement z_of(const PtolemyQuad& q) {
  const GrassmannElement bd = q.b * q.d;
  if (!is_invertible(bd)) throw NotInvertibleError("Z: bd is not invertible");
  return q.a * q.c * invert(bd);
}

FlipResult ptolemy_flip(const PtolemyQuad& q) {
  for (const auto* x : {&q.a, &q.b, &q.c, &q.d, &q.e}) {
    if (!has_parity(*x, Parity::Even)) throw DomainError("ptolemy: lambda-lengths must be even");
  }
  if (!has_parity(q.sigma, Parity::Odd) || !has_parity(q.theta, Parity::Odd)) {
    throw DomainError("ptolemy: mu-invariants must be odd");
  }
  const unsigned g = q.e.generator_count();
  const GrassmannElement z = z_of(q);
  const GrassmannElement ptolemy = q.a * q.c + q.b * q.d;
  FlipResult r;
  if (q.sigma.is_zero() && q.theta.is_zero()) {
    r.f = invert(q.e) * ptolemy;
    r.sigma_prime = GrassmannElement(g);
    r.theta_prime = GrassmannElement(g);
    return r;
  }
  const GrassmannElement sz = sqrt(z);
  const GrassmannElement inv_s1 = invert(sqrt(one(g) + z));
  r.f = invert(q.e) * ptolemy * (one(g) + q.sigma * q.theta * sz * invert(one(g) + z));
  r.sigma_prime = (q.sigma - q.theta * sz) * inv_s1;
  r.theta_prime = (q.theta + q.sigma * sz) * inv_s1;
  return r;
}

BarPair bar_transform(const GrassmannElement& e, const GrassmannElement& f,
                      const GrassmannElement& sigma, const GrassmannElement& theta,
                      const GrassmannElement& sigma_prime, const GrassmannElement& theta_prime,
                      const GrassmannElement& z, BarExponent p) {
  const unsigned g = e.generator_count();
  // The inner roots have body 1, so they always exist.
  auto factor = [&](const GrassmannElement& s, const GrassmannElement& t) {
    const GrassmannElement root = sqrt(one(g) + nilpotent_term(s, t, z));
    return p == BarExponent::MinusHalf ? invert(root) : root;
  };
  return {e * factor(sigma, theta), f * factor(sigma_prime, theta_prime)};
}

SampledQuad sample_quad(Rng& rng, unsigned generators, const SampleProfile& profile,
                        const Rational& m) {
  if (sgn(m) == 0 || m == 1 || m == -1) throw DomainError("sample_quad: m must not be 0 or +-1");
  const Rational t = (m * m - 1) / (2 * m);
  GeneratorPool pool(generators);
  SampleProfile even = profile;
  even.positive_body = true;
  PtolemyQuad q;
  q.b = sample_even(rng, pool, even);
  q.c = sample_even(rng, pool, even);
  q.d = sample_even(rng, pool, even);
  // body(Z) = t^2 exactly; the added soul keeps a generic.
  q.a = Rational(t * t) * q.b * q.d * invert(q.c) + soul(sample_even(rng, pool, even));
  q.e = sample_even(rng, pool, even);
  q.sigma = sample_odd(rng, pool, profile);
  q.theta = sample_odd(rng, pool, profile);
  return {m, std::move(q)};
}

SampledQuad sample_quad(Rng& rng, unsigned generators, const SampleProfile& profile) {
  Rational m;
  do {
    m = sample_nonzero_rational(rng, profile.body_num_max, profile.body_den_max, true);
  } while (m == 1);
  return sample_quad(rng, generators, profile, m);
}

}  // namespace superpluecker
