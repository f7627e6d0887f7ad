#include "superpluecker/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "json_io.hpp"
#include "superpluecker/cluster.hpp"
#include "superpluecker/matrix.hpp"
#include "superpluecker/pluecker.hpp"
#include "superpluecker/ptolemy.hpp"
#include "superpluecker/rational.hpp"
#include "superpluecker/sampling.hpp"
#include "superpluecker/supermatrix.hpp"

namespace superpluecker {

namespace {

using json_io::ordered_json;

constexpr int kMaxN = 12;
constexpr int kMaxR = 4;
constexpr std::size_t kDetailLimit = 400;

std::string clip(std::string s) {
  if (s.size() > kDetailLimit) {
    s.resize(kDetailLimit);
    s += "...";
  }
  return s;
}

// FNV-1a, so sub-suite streams do not depend on std::hash.
std::uint64_t label_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng trial_rng(std::uint64_t master, const std::string& stream, std::size_t trial) {
  return Rng(derive_seed(derive_seed(master, label_hash(stream)), trial));
}

std::string format_label(std::size_t p, std::size_t q) {
  return std::to_string(p) + "|" + std::to_string(q);
}

std::vector<Parity> standard(std::size_t even, std::size_t odd) {
  std::vector<Parity> v(even, Parity::Even);
  v.insert(v.end(), odd, Parity::Odd);
  return v;
}

std::uint64_t catalan(unsigned k) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

/// Collects checks and failures for one suite.
class Log {
public:
  explicit Log(VerificationReport& r) : r_(r) {}

  void check(std::size_t trial, const std::string& id, bool ok,
             const std::function<std::string()>& detail = {}) {
    ++r_.checks[id];
    if (!ok) r_.failures.push_back({trial, id, clip(detail ? detail() : std::string())});
  }

  void equal(std::size_t trial, const std::string& id, const GrassmannElement& lhs,
             const GrassmannElement& rhs, const std::string& where = {}) {
    check(trial, id, lhs == rhs, [&] {
      return (where.empty() ? std::string() : where + ": ") + "lhs=" + lhs.to_string() +
             " rhs=" + rhs.to_string();
    });
  }

  void skip(const std::string& id, std::size_t count = 1) { r_.skips[id] += count; }

  void fail(std::size_t trial, const std::string& id, const std::string& detail) {
    ++r_.checks[id];
    r_.failures.push_back({trial, id, clip(detail)});
  }

  /// Folds a relation report in under `prefix`; violations keep their relation id.
  void absorb(std::size_t trial, const std::string& prefix, const RelationReport& rep,
              std::size_t n) {
    r_.checks[prefix] += rep.checked;
    if (!rep.skips.empty()) r_.skips[prefix] += rep.skips.size();
    for (const auto& v : rep.violations) {
      r_.failures.push_back({trial, prefix + "/" + v.relation_id,
                             clip(tuple_label(v.index_tuple, n) + ": lhs=" + v.lhs.to_string() +
                                  " rhs=" + v.rhs.to_string())});
    }
  }

private:
  VerificationReport& r_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void check_caps(const RunConfig& c) {
  require(c.trials >= 1, "--trials must be at least 1");
  for (const auto& [name, v] : {std::pair{"--n", c.n}, {"--r", c.r}, {"--s", c.s}, {"--m", c.m}}) {
    if (v) require(*v >= 0, std::string(name) + " must be non-negative");
  }
  if (!c.unsafe) {
    if (c.n) require(*c.n <= kMaxN, "--n above " + std::to_string(kMaxN) + " needs --unsafe");
    if (c.r) require(*c.r <= kMaxR, "--r above " + std::to_string(kMaxR) + " needs --unsafe");
    if (c.s) require(*c.s <= kMaxR, "--s above " + std::to_string(kMaxR) + " needs --unsafe");
  }
  require(c.format == "json" || c.format == "dot", "--format must be dot or json");
  if (c.generators) require(*c.generators >= 1 && *c.generators <= 64, "--generators must be 1..64");
}

// ---------------------------------------------------------------------------
// berezinian

/// Even matrix with Ber and Ber* both defined (resampled otherwise).
SuperMatrix sample_invertible(Rng& rng, unsigned generators, const SampleProfile& profile,
                              std::size_t p, std::size_t q) {
  const auto labels = standard(p, q);
  for (int attempt = 0; attempt < 64; ++attempt) {
    GeneratorPool pool(generators);
    auto m = sample_supermatrix(rng, pool, profile, labels, labels);
    const auto b = blocks(m);
    if ((p == 0 || is_invertible(det(b.a00))) && (q == 0 || is_invertible(det(b.a11)))) return m;
  }
  throw DomainError("no invertible " + format_label(p, q) + " sample");
}

ordered_json suite_berezinian(const RunConfig& cfg, Log& log) {
  std::vector<std::pair<std::size_t, std::size_t>> formats;
  if (cfg.r || cfg.s) {
    const auto p = static_cast<std::size_t>(cfg.r.value_or(0));
    const auto q = static_cast<std::size_t>(cfg.s.value_or(0));
    require(p + q >= 1, "berezinian: format 0|0 is empty");
    formats.emplace_back(p, q);
  } else {
    for (std::size_t p = 0; p <= 3; ++p) {
      for (std::size_t q = 0; q <= 2; ++q) {
        if (p + q > 0) formats.emplace_back(p, q);
      }
    }
  }
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  const unsigned gens = cfg.generators.value_or(8);

  ordered_json out = ordered_json::array();
  for (auto [p, q] : formats) {
    const std::string f = format_label(p, q);
    const std::size_t dim = p + q;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "berezinian " + f, trial);
      SuperMatrix m, n;
      try {
        m = sample_invertible(rng, gens, profile, p, q);
        n = sample_invertible(rng, gens, profile, p, q);
      } catch (const DomainError& e) {
        log.fail(trial, "berezinian/sampling", f + ": " + e.what());
        continue;
      }
      const auto bm = ber(m);
      log.equal(trial, "berezinian/multiplicativity", ber(multiply(m, n)), bm * ber(n), f);
      log.equal(trial, "berezinian/reciprocal", bm * ber_star(m), GrassmannElement(gens, 1), f);
      log.equal(trial, "berezinian/parity_reverse", ber(parity_reverse(m)), ber_star(m), f);

      GeneratorPool pool(gens);
      SampleProfile positive = profile;
      positive.positive_body = true;
      const auto t = sample_even(rng, pool, positive);
      const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 1));
      const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 1));
      const auto t_row = i < p ? t : invert(t);
      const auto t_col = j < p ? t : invert(t);
      log.equal(trial, "berezinian/homogeneity_row", ber(scale_row(m, i, t)), t_row * bm, f);
      log.equal(trial, "berezinian/homogeneity_col", ber(scale_col(m, j, t)), bm * t_col, f);

      if (dim >= 2) {
        const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 1));
        auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 2));
        if (b >= a) ++b;
        const auto parity = m.row_parities()[a] + m.row_parities()[b];
        const auto factor = sample_homogeneous(rng, pool, profile, parity);
        log.equal(trial, "berezinian/elementary_row", ber(add_row_multiple(m, a, b, factor)), bm, f);
        log.equal(trial, "berezinian/elementary_col", ber(add_col_multiple(m, a, b, factor)), bm, f);
      }

      // Transpositions inside a parity group negate Ber.
      for (auto [lo, len] : {std::pair{std::size_t{0}, p}, std::pair{p, q}}) {
        if (len < 2) continue;
        const auto a = lo + static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(len) - 2));
        std::vector<std::size_t> perm(dim);
        for (std::size_t k = 0; k < dim; ++k) perm[k] = k;
        std::swap(perm[a], perm[a + 1]);
        log.equal(trial, "berezinian/antisymmetry_rows", ber(permute_rows(m, perm).matrix), -bm, f);
        log.equal(trial, "berezinian/antisymmetry_cols", ber(permute_cols(m, perm).matrix), -bm, f);
      }
    }
    out.push_back({{"format", f}, {"trials", cfg.trials}});
  }
  return {{"generators", gens}, {"odd_mode", "pooled"}, {"formats", out}};
}

// ---------------------------------------------------------------------------
// wrong-matrix

std::optional<PlaneRep> try_plane(Rng& rng, const PlaneShape& shape, unsigned gens,
                                  const std::function<bool(const PlaneRep&)>& accept = {}) {
  try {
    return sample_plane(rng, shape, gens, SampleProfile{}, accept);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}


ordered_json suite_wrong_matrix(const RunConfig& cfg, Log& log) {
  std::vector<int> rs;
  if (cfg.r) {
    require(*cfg.r >= 1, "wrong-matrix: --r must be at least 1");
    rs.push_back(*cfg.r);
  } else {
    rs = {1, 2, 3, 4};
  }
  SampleProfile profile;
  ordered_json identities = ordered_json::array();
  for (int ri : rs) {
    const auto r = static_cast<std::size_t>(ri);
    const unsigned gens = cfg.generators.value_or(static_cast<unsigned>(r + 1 + 4));
    std::size_t evaluated_star = 0, evaluated_ber = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "wrong-matrix r=" + std::to_string(r), trial);
      // r|1 with an even vector in the odd column: Ber* A = det A / det^2 A00.
      for (int attempt = 0;; ++attempt) {
        if (attempt == 64) {
          log.fail(trial, "wrong/sampling", "no r|1 sample with invertible A00");
          break;
        }
        GeneratorPool pool(gens);
        auto a = sample_supermatrix(rng, pool, profile, standard(r, 1), standard(r, 1), {}, {r});
        if (!is_invertible(det(blocks(a).a00))) continue;
        const auto c = check_wrong_identity_r1(a);
        ++evaluated_star;
        log.check(trial, "wrong/ber_star_odd_column", c.equal, [&] {
          return "r=" + std::to_string(r) + ": lhs=" + c.lhs.to_string() + " rhs=" + c.rhs.to_string();
        });
        // ber_star(A) det^2 A00 is an antisymmetric function of the r+1 columns.
        const auto d00 = det(blocks(a).a00);
        const auto f = ber_star(a) * d00 * d00;
        for (std::size_t i = 0; i <= r; ++i) {
          for (std::size_t j = i + 1; j <= r; ++j) {
            Matrix e = a.entries();
            for (std::size_t k = 0; k <= r; ++k) std::swap(e(k, i), e(k, j));
            SuperMatrix swapped(a.row_parities(), a.col_parities(), std::move(e), {}, {r});
            const auto s00 = det(blocks(swapped).a00);
            if (!is_invertible(s00)) {
              log.skip("wrong/column_antisymmetry");
              continue;
            }
            log.equal(trial, "wrong/column_antisymmetry", ber_star(swapped) * s00 * s00, -f,
                      "r=" + std::to_string(r) + " swap " + std::to_string(i + 1) + "," +
                          std::to_string(j + 1));
          }
        }
        break;
      }
      // 1|r with an odd vector in the even column: Ber B = det B / det^2 B11.
      for (int attempt = 0;; ++attempt) {
        if (attempt == 64) {
          log.fail(trial, "wrong/sampling", "no 1|r sample with invertible B11");
          break;
        }
        GeneratorPool pool(gens);
        auto b = sample_supermatrix(rng, pool, profile, standard(1, r), standard(1, r), {}, {0});
        if (!is_invertible(det(blocks(b).a11))) continue;
        const auto c = check_wrong_identity_r1(b);
        ++evaluated_ber;
        log.check(trial, "wrong/ber_even_column", c.equal, [&] {
          return "r=" + std::to_string(r) + ": lhs=" + c.lhs.to_string() + " rhs=" + c.rhs.to_string();
        });
        break;
      }
    }
    identities.push_back({{"r", r},
                          {"generators", gens},
                          {"ber_star_odd_column", evaluated_star},
                          {"ber_even_column", evaluated_ber}});
  }

  // Two evaluations of theta^{a c} on planes of Gr_{r|1}(r+1|1).
  ordered_json theta = ordered_json::array();
  for (std::size_t r : {std::size_t{2}, std::size_t{3}}) {
    if (cfg.r && static_cast<std::size_t>(*cfg.r) != r) continue;
    const PlaneShape shape{r, 1, r + 1, 1};
    const unsigned gens = cfg.generators.value_or(static_cast<unsigned>(shape.odd_entries() + 4));
    std::size_t compared = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "wrong-matrix theta r=" + std::to_string(r), trial);
      auto u = try_plane(rng, shape, gens);
      if (!u) {
        log.fail(trial, "wrong/sampling", "no full-rank plane");
        continue;
      }
      for (std::size_t c = 0; c <= r; ++c) {
        std::vector<std::size_t> tuple;
        for (std::size_t k = 0; k <= r; ++k) {
          if (k != c) tuple.push_back(k);
        }
        tuple.push_back(c);
        try {
          const auto x = theta_from_berezinians(*u, tuple);
          const auto y = theta_from_determinants(*u, tuple);
          ++compared;
          log.equal(trial, "wrong/theta_two_paths", x, y, tuple_label(tuple, shape.n));
        } catch (const NotInvertibleError&) {
          log.skip("wrong/theta_two_paths");
        }
      }
    }
    theta.push_back({{"r", r}, {"n", r + 1}, {"generators", gens}, {"compared", compared}});
  }
  return {{"identities", identities}, {"theta", theta}};
}

// ---------------------------------------------------------------------------
// pluecker

unsigned default_generators(const RunConfig& cfg, const PlaneShape& shape) {
  return cfg.generators.value_or(static_cast<unsigned>(shape.odd_entries() + 4));
}

ordered_json pluecker_2_0(const RunConfig& cfg, Log& log) {
  std::vector<std::size_t> ns = {4, 5, 6};
  if (cfg.n) {
    require(*cfg.n >= 2, "pluecker 2|0: --n must be at least 2");
    ns = {static_cast<std::size_t>(*cfg.n)};
  }
  ordered_json out = ordered_json::array();
  for (auto n : ns) {
    const PlaneShape shape{2, 0, n, 1};
    const unsigned gens = default_generators(cfg, shape);
    std::size_t planes = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "pluecker 2|0 n=" + std::to_string(n), trial);
      auto u = try_plane(rng, shape, gens);
      if (!u) {
        log.fail(trial, "pluecker/sampling", "2|0 n=" + std::to_string(n));
        continue;
      }
      ++planes;
      log.absorb(trial, "pluecker/gr2_0", check_gr2_0_relations(coords_gr2_0_n1(*u)), n);
      log.absorb(trial, "pluecker/simple", check_simple(wedge(u->matrix().entries(), n, 1)), n);
    }
    out.push_back({{"r", 2}, {"n", n}, {"m", 1}, {"generators", gens}, {"planes", planes}});
  }
  return out;
}

ordered_json pluecker_r_0(const RunConfig& cfg, Log& log) {
  std::vector<std::pair<std::size_t, std::size_t>> cases = {{2, 4}, {3, 5}};
  if (cfg.r || cfg.n) {
    const auto r = static_cast<std::size_t>(cfg.r.value_or(2));
    const auto n = static_cast<std::size_t>(cfg.n.value_or(static_cast<int>(r) + 2));
    require(r >= 1 && n >= r, "pluecker r|0: need 1 <= r <= n");
    cases = {{r, n}};
  }
  const auto m = static_cast<std::size_t>(cfg.m.value_or(1));
  ordered_json out = ordered_json::array();
  for (auto [r, n] : cases) {
    const PlaneShape shape{r, 0, n, m};
    const unsigned gens = default_generators(cfg, shape);
    std::size_t planes = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "pluecker r|0 " + std::to_string(r) + "," + std::to_string(n),
                          trial);
      auto u = try_plane(rng, shape, gens);
      if (!u) {
        log.fail(trial, "pluecker/sampling", "r|0 r=" + std::to_string(r));
        continue;
      }
      ++planes;
      const auto t = wedge(u->matrix().entries(), n, m);
      log.absorb(trial, "pluecker/ess", check_ess_relations_r0(t), n);
      log.absorb(trial, "pluecker/simple", check_simple(t), n);
    }
    out.push_back({{"r", r}, {"n", n}, {"m", m}, {"generators", gens}, {"planes", planes}});
  }
  return out;
}

/// Random even invertible (r+1)-square g in standard format r|1. Odd entries
/// are single generators and even entries plain rationals; gU stays sparse
/// enough to recompute every coordinate.
SuperMatrix sample_gauge(Rng& rng, std::size_t r, unsigned gens) {
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  profile.pooled_terms = 1;
  profile.soul_terms = 0;
  profile.odd_cubic_terms = 0;
  return sample_invertible(rng, gens, profile, r, 1);
}

ordered_json pluecker_r_1(const RunConfig& cfg, Log& log) {
  std::vector<std::pair<std::size_t, std::size_t>> cases = {{2, 4}, {2, 5}, {3, 5}};
  if (cfg.r || cfg.n) {
    const auto r = static_cast<std::size_t>(cfg.r.value_or(2));
    const auto n = static_cast<std::size_t>(cfg.n.value_or(static_cast<int>(r) + 2));
    require(r >= 1 && n > r, "pluecker r|1: need 1 <= r < n");
    cases = {{r, n}};
  }
  ordered_json out = ordered_json::array();
  for (auto [r, n] : cases) {
    const PlaneShape shape{r, 1, n, 1};
    const unsigned gens = default_generators(cfg, shape);
    std::size_t planes = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng = trial_rng(cfg.seed, "pluecker r|1 " + std::to_string(r) + "," + std::to_string(n),
                          trial);
      auto u = try_plane(rng, shape, gens);
      if (!u) {
        log.fail(trial, "pluecker/sampling", "r|1 r=" + std::to_string(r));
        continue;
      }
      ++planes;
      const auto c = reduced_coords_r1_n1(*u);
      log.check(trial, "pluecker/theta_two_paths", c.path_mismatches.empty(), [&] {
        return std::to_string(c.path_mismatches.size()) + " mismatches, first " +
               tuple_label(c.path_mismatches.front(), n);
      });
      if (!c.undefined.empty()) log.skip("pluecker/undefined_P", c.undefined.size());
      log.absorb(trial, "pluecker/r1", check_relations_r1_n1(c, TupleRange::Representatives), n);
      log.absorb(trial, "pluecker/theta_antisymmetry", check_theta_antisymmetry(*u, c), n);
      log.absorb(trial, "pluecker/covariance", scaling_covariance(*u, sample_gauge(rng, r, gens)), n);
    }
    out.push_back({{"r", r}, {"n", n}, {"m", 1}, {"generators", gens}, {"planes", planes}});
  }
  return out;
}

ordered_json suite_pluecker(const RunConfig& cfg, Log& log) {
  ordered_json out = ordered_json::object();
  const std::string& c = cfg.case_;
  require(c.empty() || c == "2|0" || c == "r|0" || c == "r|1",
          "pluecker: --case must be 2|0, r|0 or r|1");
  if (c.empty() || c == "2|0") out["2|0"] = pluecker_2_0(cfg, log);
  if (c.empty() || c == "r|0") out["r|0"] = pluecker_r_0(cfg, log);
  if (c.empty() || c == "r|1") out["r|1"] = pluecker_r_1(cfg, log);
  return out;
}

// ---------------------------------------------------------------------------
// cluster-walk

bool same_values(const DecoratedCluster& x, const DecoratedCluster& y) {
  return x.decoration == y.decoration && x.even_vars == y.even_vars &&
         x.frozen_vars == y.frozen_vars && x.odd_vars == y.odd_vars;
}

ordered_json suite_cluster_walk(const RunConfig& cfg, Log& log) {
  const int n = cfg.n.value_or(6);
  require(n >= 4, "cluster-walk: --n must be at least 4");
  const PlaneShape shape{2, 0, static_cast<std::size_t>(n), 1};
  const unsigned gens = default_generators(cfg, shape);
  std::size_t total_steps = 0, round_trips = 0;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = trial_rng(cfg.seed, "cluster-walk n=" + std::to_string(n), trial);
    auto u = try_plane(rng, shape, gens,
                       [](const PlaneRep& p) { return is_generic_for_clusters(coords_gr2_0_n1(p)); });
    if (!u) {
      log.fail(trial, "cluster/sampling", "no generic plane");
      continue;
    }
    const auto coords = coords_gr2_0_n1(*u);
    const auto seed = canonical_seed(n);
    const auto moves = random_walk(rng, seed, cfg.steps);
    const auto walk = verify_walk(coords, seed, moves);
    total_steps += walk.steps;
    log.check(trial, "cluster/walk", walk.consistent && walk.steps == moves.size(), [&] {
      return "step " + std::to_string(walk.first_bad_step.value_or(walk.steps)) + ": " + walk.detail;
    });

    // Every move from the seed and from the walk's end point, undone.
    DecoratedTriangulation end = seed;
    for (const auto& mv : moves) end = apply_move(end, mv);
    for (const auto& start : {seed, end}) {
      const auto cl = ground_truth_cluster(coords, start);
      for (const auto& mv : available_moves(start)) {
        const auto there = apply_move(cl, mv);
        const bool odd = mv.kind == MutationKind::Odd;
        const auto back = odd ? odd_mutation(there, mv.to, mv.from) : even_mutation(there);
        ++round_trips;
        log.check(trial, odd ? "cluster/odd_round_trip" : "cluster/even_round_trip",
                  same_values(back, cl), [&] {
                    return to_string(start) + " via " + to_string(there.decoration);
                  });
      }
    }
  }
  return {{"n", n},
          {"generators", gens},
          {"steps_per_walk", cfg.steps},
          {"steps_applied", total_steps},
          {"round_trips", round_trips}};
}

// ---------------------------------------------------------------------------
// ptolemy

ordered_json suite_ptolemy(const RunConfig& cfg, Log& log) {
  const unsigned gens = cfg.generators.value_or(8);
  SampleProfile profile;
  ordered_json per_trial = ordered_json::array();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = trial_rng(cfg.seed, "ptolemy", trial);
    const auto sq = sample_quad(rng, gens, profile);
    const auto& q = sq.quad;
    const auto flip = ptolemy_flip(q);
    const bool st = flip.sigma_prime * flip.theta_prime == q.sigma * q.theta;
    log.check(trial, "ptolemy/sigma_theta", st, [&] {
      return "m=" + to_pq_string(sq.m) + " lhs=" + (flip.sigma_prime * flip.theta_prime).to_string() +
             " rhs=" + (q.sigma * q.theta).to_string();
    });
    const auto bars = bar_transform(q.e, flip.f, q.sigma, q.theta, flip.sigma_prime,
                                    flip.theta_prime, z_of(q));
    const auto classical = q.a * q.c + q.b * q.d;
    const bool bp = bars.e_bar * bars.f_bar == classical;
    log.check(trial, "ptolemy/bar_ptolemy", bp, [&] {
      return "m=" + to_pq_string(sq.m) + " ebar*fbar=" + (bars.e_bar * bars.f_bar).to_string() +
             " ac+bd=" + classical.to_string();
    });

    // sigma = theta = 0: the classical relation e f = ac + bd.
    PtolemyQuad even = q;
    even.sigma = GrassmannElement(gens);
    even.theta = GrassmannElement(gens);
    const auto flat = ptolemy_flip(even);
    log.check(trial, "ptolemy/degenerate",
              flat.sigma_prime.is_zero() && flat.theta_prime.is_zero() && q.e * flat.f == classical,
              [&] { return "e*f=" + (q.e * flat.f).to_string() + " ac+bd=" + classical.to_string(); });

    // On a totally positive Gr(2,4) point the flip reproduces T13 T24 = T12 T34 + T14 T23.
    GeneratorPool pool(gens);
    SampleProfile soul_only = profile;
    Matrix u(2, 4, gens);
    Rational t = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      t += sample_nonzero_rational(rng, 3, 2, true);
      u(0, j) = GrassmannElement(gens, 1) + soul(sample_even(rng, pool, soul_only));
      u(1, j) = GrassmannElement(gens, t) + soul(sample_even(rng, pool, soul_only));
    }
    auto T = [&](std::size_t a, std::size_t b) {
      return u(0, a) * u(1, b) - u(0, b) * u(1, a);
    };
    PtolemyQuad plucker{T(0, 1), T(0, 3), T(2, 3), T(1, 2), T(0, 2), GrassmannElement(gens),
                        GrassmannElement(gens)};
    const auto pf = ptolemy_flip(plucker);
    log.equal(trial, "ptolemy/classical_pluecker", pf.f, T(1, 3));

    per_trial.push_back({{"m", to_pq_string(sq.m)},
                         {"pass_sigma_theta", st},
                         {"pass_bar_ptolemy", bp}});
  }
  return {{"generators", gens}, {"bar_exponent", "-1/2"}, {"trials", per_trial}};
}

// ---------------------------------------------------------------------------
// exchange-graph / triangulations

int graph_n(const RunConfig& cfg, int fallback) {
  const int n = cfg.n.value_or(fallback);
  require(n >= 4, "--n must be at least 4");
  return n;
}

ordered_json run_exchange_graph(const RunConfig& cfg, Log& log) {
  const int n = graph_n(cfg, 5);
  const auto g = exchange_graph(n);
  const auto expected = catalan(static_cast<unsigned>(n - 2)) * static_cast<std::uint64_t>(n - 3);
  log.check(0, "exchange/vertex_count", g.vertices.size() == expected, [&] {
    return std::to_string(g.vertices.size()) + " != " + std::to_string(expected);
  });
  log.check(0, "exchange/connected", g.connected());
  const auto flips = classical_flip_graph(n);
  log.check(0, "exchange/quotient_is_flip_graph", quotient_by_marking(g) == flips);
  log.check(0, "exchange/flip_graph_size", flips.vertices.size() == catalan(static_cast<unsigned>(n - 2)));
  std::size_t reachable = 0;
  for (const auto& t : flips.vertices) {
    const bool ok = marking_reachability(t);
    reachable += ok;
    log.check(0, "exchange/marking_reachability", ok, [&] {
      std::string s;
      for (auto d : t.diagonals) s += to_string(d) + " ";
      return s;
    });
  }
  std::size_t odd = 0;
  for (const auto& e : g.edges) odd += e.kind == MutationKind::Odd;

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open --out file: " + cfg.out);
    if (cfg.format == "dot") {
      f << to_dot(g);
    } else {
      f << json_io::graph(g).dump(2) << '\n';
    }
    if (!f) throw Error("write failed: " + cfg.out);
  }
  return {{"n", n},
          {"vertices", g.vertices.size()},
          {"edges", g.edges.size()},
          {"odd_edges", odd},
          {"even_edges", g.edges.size() - odd},
          {"triangulations", flips.vertices.size()},
          {"flip_edges", flips.edges.size()},
          {"connected", g.connected()},
          {"export", cfg.out.empty() ? ordered_json(nullptr) : ordered_json(cfg.format)}};
}

ordered_json run_triangulations(const RunConfig& cfg, Log& log) {
  const int n = cfg.n.value_or(6);
  require(n >= 4, "--n must be at least 4");
  const auto ts = enumerate_triangulations(n);
  const auto expected = catalan(static_cast<unsigned>(n - 2));
  log.check(0, "triangulations/catalan", ts.size() == expected, [&] {
    return std::to_string(ts.size()) + " != " + std::to_string(expected);
  });
  return {{"n", n}, {"count", ts.size()}};
}

}  // namespace

std::string command_line(const RunConfig& c) {
  std::ostringstream s;
  s << c.command;
  if (!c.suite.empty()) s << ' ' << c.suite;
  if (!c.case_.empty()) s << " --case " << c.case_;
  if (c.n) s << " --n " << *c.n;
  if (c.r) s << " --r " << *c.r;
  if (c.s) s << " --s " << *c.s;
  if (c.m) s << " --m " << *c.m;
  if (c.command == "verify") s << " --trials " << c.trials << " --seed " << c.seed;
  if (c.command == "verify" && c.suite == "cluster-walk") s << " --steps " << c.steps;
  if (c.generators) s << " --generators " << *c.generators;
  if (!c.out.empty()) s << " --out " << c.out << " --format " << c.format;
  if (c.unsafe) s << " --unsafe";
  return s.str();
}

VerificationReport run(const RunConfig& config) {
  check_caps(config);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.command = command_line(config);
  report.seed = config.seed;
  report.trials = config.trials;
  Log log(report);
  ordered_json details;
  if (config.command == "verify") {
    const auto& s = config.suite;
    if (s == "berezinian") {
      details = suite_berezinian(config, log);
    } else if (s == "wrong-matrix") {
      details = suite_wrong_matrix(config, log);
    } else if (s == "pluecker") {
      details = suite_pluecker(config, log);
    } else if (s == "cluster-walk") {
      details = suite_cluster_walk(config, log);
    } else if (s == "ptolemy") {
      details = suite_ptolemy(config, log);
    } else {
      throw UsageError("unknown suite '" + s +
                       "' (berezinian, wrong-matrix, pluecker, cluster-walk, ptolemy)");
    }
  } else if (config.command == "exchange-graph") {
    report.trials = 1;
    details = run_exchange_graph(config, log);
  } else if (config.command == "triangulations") {
    report.trials = 1;
    details = run_triangulations(config, log);
  } else {
    throw UsageError("unknown command '" + config.command + "'");
  }
  report.details = details.dump();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_json(const VerificationReport& r, bool include_elapsed) {
  ordered_json j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["checks"] = r.checks;
  j["skips"] = r.skips;
  ordered_json failures = ordered_json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"trial", f.trial}, {"check_id", f.check_id}, {"detail", f.detail}});
  }
  j["failures"] = std::move(failures);
  j["details"] = ordered_json::parse(r.details);
  if (include_elapsed) j["elapsed_ms"] = static_cast<std::int64_t>(r.elapsed_ms);
  return j.dump(2);
}

}  // namespace superpluecker
