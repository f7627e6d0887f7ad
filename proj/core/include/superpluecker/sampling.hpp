#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "superpluecker/grassmann.hpp"

namespace superpluecker {

/// splitmix64 step; used to derive independent per-trial seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Seeded mt19937_64. The engine sequence is fixed by the standard; the
/// range reduction is done here (not with <random> distributions, whose output
/// is implementation-defined) so draws match across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin(unsigned percent) { return uniform(0, 99) < static_cast<std::int64_t>(percent); }

private:
  std::mt19937_64 engine_;
};

/// Where odd samples get their generators from.
enum class OddMode : std::uint8_t {
  /// Each odd sample owns a previously unused generator (free-algebra style testing).
  Fresh,
  /// Odd samples are random combinations of a small shared pool of generators.
  Pooled,
};

struct SampleProfile {
  int body_num_max = 5;          ///< |numerator| of bodies drawn from 1..body_num_max
  int body_den_max = 3;          ///< denominators drawn from 1..body_den_max
  bool positive_body = false;    ///< restrict even bodies to positive rationals
  unsigned soul_terms = 1;       ///< random soul monomials added to even samples
  unsigned soul_degree = 2;      ///< maximal (even) degree of soul monomials
  unsigned odd_cubic_terms = 1;  ///< optional degree-3 terms added to odd samples
  OddMode odd_mode = OddMode::Fresh;
  unsigned pooled_terms = 2;     ///< linear terms per odd sample in Pooled mode
};

/// Generator bookkeeping for one trial of Lambda_N.
///
/// In Fresh mode generators are handed out in increasing order; soul noise may
/// use any generator, fresh or not.
class GeneratorPool {
public:
  explicit GeneratorPool(unsigned generators) : n_(generators) {}

  unsigned generator_count() const { return n_; }
  unsigned used() const { return next_; }
  unsigned remaining() const { return n_ - next_; }
  /// Next unused generator (1-based); throws DomainError when exhausted.
  unsigned take_fresh();

private:
  unsigned n_;
  unsigned next_ = 0;
};

/// Nonzero rational p/q with 1 <= |p| <= num_max, 1 <= q <= den_max.
Rational sample_nonzero_rational(Rng& rng, int num_max, int den_max, bool positive = false);

/// Even element with nonzero body plus random even-degree soul terms.
GrassmannElement sample_even(Rng& rng, GeneratorPool& pool, const SampleProfile& profile);

/// Odd element. Fresh mode: c * theta_fresh plus optional cubic terms.
/// Pooled mode: a random combination of `pooled_terms` generators.
GrassmannElement sample_odd(Rng& rng, GeneratorPool& pool, const SampleProfile& profile);

/// Element of the requested parity.
GrassmannElement sample_homogeneous(Rng& rng, GeneratorPool& pool, const SampleProfile& profile,
                                    Parity parity);

}  // namespace superpluecker
