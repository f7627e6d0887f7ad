#include "superpluecker/sampling.hpp"

#include <algorithm>

#include "superpluecker/error.hpp"

namespace superpluecker {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return lo + static_cast<std::int64_t>(v % span);
}

unsigned GeneratorPool::take_fresh() {
  if (next_ >= n_) {
    throw DomainError("generator pool exhausted (N = " + std::to_string(n_) + ")");
  }
  return ++next_;
}

Rational sample_nonzero_rational(Rng& rng, int num_max, int den_max, bool positive) {
  const auto p = rng.uniform(1, std::max(1, num_max));
  const auto q = rng.uniform(1, std::max(1, den_max));
  Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
  r.canonicalize();
  if (!positive && rng.coin(50)) r = -r;
  return r;
}

namespace {

std::vector<unsigned> distinct_generators(Rng& rng, unsigned n, unsigned count) {
  std::vector<unsigned> all(n);
  for (unsigned i = 0; i < n; ++i) all[i] = i + 1;
  // Partial Fisher-Yates.
  for (unsigned i = 0; i < count; ++i) {
    const auto j = static_cast<unsigned>(rng.uniform(i, n - 1));
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  return all;
}

GrassmannElement random_monomial(Rng& rng, unsigned n, unsigned degree, const SampleProfile& p) {
  if (degree == 0 || degree > n) return GrassmannElement(n);
  auto gens = distinct_generators(rng, n, degree);
  return GrassmannElement::monomial(n, gens,
                                    sample_nonzero_rational(rng, p.body_num_max, p.body_den_max));
}

}  // namespace

GrassmannElement sample_even(Rng& rng, GeneratorPool& pool, const SampleProfile& profile) {
  const unsigned n = pool.generator_count();
  GrassmannElement x(n, sample_nonzero_rational(rng, profile.body_num_max, profile.body_den_max,
                                                profile.positive_body));
  const unsigned max_degree = std::min(profile.soul_degree, n) & ~1U;
  for (unsigned i = 0; i < profile.soul_terms && max_degree >= 2; ++i) {
    const auto degree = 2 * static_cast<unsigned>(rng.uniform(1, max_degree / 2));
    x += random_monomial(rng, n, degree, profile);
  }
  return x;
}

GrassmannElement sample_odd(Rng& rng, GeneratorPool& pool, const SampleProfile& profile) {
  const unsigned n = pool.generator_count();
  GrassmannElement x(n);
  if (profile.odd_mode == OddMode::Fresh) {
    const unsigned g = pool.take_fresh();
    x += GrassmannElement::generator(n, g) *
         sample_nonzero_rational(rng, profile.body_num_max, profile.body_den_max);
    for (unsigned i = 0; i < profile.odd_cubic_terms && n >= 3; ++i) {
      if (rng.coin(50)) x += random_monomial(rng, n, 3, profile);
    }
  } else {
    if (n == 0) throw DomainError("generator pool exhausted (N = 0)");
    const unsigned k = std::min(std::max(1U, profile.pooled_terms), n);
    for (unsigned g : distinct_generators(rng, n, k)) {
      x += GrassmannElement::generator(n, g) *
           sample_nonzero_rational(rng, profile.body_num_max, profile.body_den_max);
    }
    for (unsigned i = 0; i < profile.odd_cubic_terms && n >= 3; ++i) {
      if (rng.coin(25)) x += random_monomial(rng, n, 3, profile);
    }
  }
  return x;
}

GrassmannElement sample_homogeneous(Rng& rng, GeneratorPool& pool, const SampleProfile& profile,
                                    Parity parity) {
  return parity == Parity::Even ? sample_even(rng, pool, profile)
                                : sample_odd(rng, pool, profile);
}

}  // namespace superpluecker
