#include <gtest/gtest.h>

#include <set>

#include "superpluecker/cluster.hpp"
#include "superpluecker/error.hpp"

using namespace superpluecker;

namespace {

// Brute force: every (n-3)-subset of proper diagonals that is pairwise non-crossing.
std::vector<Triangulation> brute_force_triangulations(int n) {
  std::vector<Diagonal> all;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 2; j <= n; ++j) {
      if (is_proper_diagonal({i, j}, n)) all.push_back({i, j});
    }
  }
  std::vector<Triangulation> out;
  const std::size_t k = static_cast<std::size_t>(n - 3);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    std::vector<Diagonal> pick;
    for (std::size_t b = 0; b < all.size(); ++b) {
      if (mask >> b & 1) pick.push_back(all[b]);
    }
    bool ok = true;
    for (std::size_t a = 0; a < pick.size() && ok; ++a) {
      for (std::size_t b = a + 1; b < pick.size() && ok; ++b) ok = !crosses(pick[a], pick[b]);
    }
    if (ok) out.push_back(make_triangulation(n, pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t catalan(unsigned k) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

Gr20Coords generic_coords(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  const PlaneShape shape{2, 0, n, 1};
  const auto u = sample_plane(rng, shape, static_cast<unsigned>(shape.odd_entries() + 4), SampleProfile{},
                              [](const PlaneRep& p) { return is_generic_for_clusters(coords_gr2_0_n1(p)); });
  return coords_gr2_0_n1(u);
}

bool same(const DecoratedCluster& x, const DecoratedCluster& y) {
  return x.decoration == y.decoration && x.even_vars == y.even_vars &&
         x.frozen_vars == y.frozen_vars && x.odd_vars == y.odd_vars;
}

}  // namespace

TEST(Triangulations, MatchBruteForce) {
  EXPECT_EQ(enumerate_triangulations(4).size(), 2U);
  EXPECT_EQ(enumerate_triangulations(5).size(), 5U);
  EXPECT_EQ(enumerate_triangulations(6).size(), 14U);
  for (int n = 4; n <= 9; ++n) EXPECT_EQ(enumerate_triangulations(n), brute_force_triangulations(n)) << n;
}

TEST(Triangulations, Validation) {
  EXPECT_THROW(make_triangulation(5, {{1, 3}, {2, 4}}), DomainError);
  EXPECT_THROW(make_triangulation(5, {{1, 3}}), DomainError);
  EXPECT_THROW(make_triangulation(5, {{1, 2}, {1, 3}}), DomainError);
  EXPECT_TRUE(crosses({1, 3}, {2, 4}));
  EXPECT_FALSE(crosses({1, 3}, {3, 5}));
  EXPECT_FALSE(crosses({1, 4}, {2, 3}));
}

TEST(Flip, Quadrilaterals) {
  const auto pent = make_triangulation(5, {{1, 3}, {1, 4}});
  const auto q = quad_of(pent, {1, 4});
  EXPECT_EQ(q.vertices, (std::array<int, 4>{1, 3, 4, 5}));
  EXPECT_EQ(q.target, (Diagonal{3, 5}));
  EXPECT_EQ(flip(pent, {1, 4}), make_triangulation(5, {{1, 3}, {3, 5}}));
  const auto sq = make_triangulation(4, {{1, 3}});
  EXPECT_EQ(quad_of(sq, {1, 3}).vertices, (std::array<int, 4>{1, 2, 3, 4}));
  EXPECT_EQ(quad_of(sq, {1, 3}).target, (Diagonal{2, 4}));
  EXPECT_THROW(quad_of(pent, {2, 4}), DomainError);
}

TEST(Decorated, CanonicalSeedAndLabel) {
  EXPECT_EQ(to_string(canonical_seed(5)), "T:{1-3,1-4};M:{1-3}");
  EXPECT_THROW(make_decorated(make_triangulation(5, {{1, 3}, {1, 4}}), {2, 4}), DomainError);
}

TEST(Mutation, PentagonOdd) {
  const auto c = generic_coords(1, 5);
  const auto t = make_triangulation(5, {{1, 3}, {1, 4}});
  const auto from = ground_truth_cluster(c, make_decorated(t, {1, 4}));
  const auto to = odd_mutation(from, 4, 3);
  EXPECT_EQ(to.decoration.marked, (Diagonal{1, 3}));
  EXPECT_EQ(to.odd_vars.at(3), c.theta[2]);
  EXPECT_TRUE(same(to, ground_truth_cluster(c, make_decorated(t, {1, 3}))));
  // Back again.
  EXPECT_TRUE(same(odd_mutation(to, 3, 4), from));
}

TEST(Mutation, OddExchangeFormula) {
  // a < b < c: theta^c = (T^{ac} theta^b - theta^a T^{bc}) / T^{ab}, here a=1, b=3, c=4.
  const auto c = generic_coords(2, 5);
  const auto t = make_triangulation(5, {{1, 3}, {1, 4}});
  const auto cl = ground_truth_cluster(c, make_decorated(t, {1, 3}));
  const auto moved = odd_mutation(cl, 3, 4);
  const auto expected = (c.T(0, 3) * c.theta[2] - c.theta[0] * c.T(2, 3)) * invert(c.T(0, 2));
  EXPECT_EQ(moved.odd_vars.at(4), expected);
  EXPECT_EQ(expected, c.theta[3]);
}

TEST(Mutation, PentagonEven) {
  const auto c = generic_coords(3, 5);
  const auto t = make_triangulation(5, {{1, 3}, {1, 4}});
  const auto cl = ground_truth_cluster(c, make_decorated(t, {1, 4}));
  const auto flipped = even_mutation(cl);
  const auto expected = make_decorated(make_triangulation(5, {{1, 3}, {3, 5}}), {3, 5});
  EXPECT_EQ(flipped.decoration, expected);
  EXPECT_EQ(flipped.even_vars.at({3, 5}), c.T(2, 4));
  EXPECT_EQ(flipped.odd_vars.at(3), c.theta[2]);
  EXPECT_EQ(flipped.odd_vars.at(5), c.theta[4]);
  EXPECT_TRUE(same(even_mutation(flipped), cl));
}

TEST(Mutation, EvenExchangeFormula) {
  const auto c = generic_coords(4, 6);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      for (std::size_t x = b + 1; x < 6; ++x) {
        for (std::size_t d = x + 1; d < 6; ++d) {
          EXPECT_EQ(c.T(x, d), (c.T(a, x) * c.T(b, d) - c.T(a, d) * c.T(b, x)) * invert(c.T(a, b)));
        }
      }
    }
  }
}

TEST(Mutation, GroundTruthSatisfiesInvariants) {
  const auto c = generic_coords(5, 6);
  for (const auto& t : enumerate_triangulations(6)) {
    for (auto d : t.diagonals) EXPECT_NO_THROW(validate_cluster(ground_truth_cluster(c, make_decorated(t, d))));
  }
}

TEST(Mutation, EveryMoveMatchesGroundTruth) {
  const auto c = generic_coords(6, 6);
  const auto g = exchange_graph(6);
  for (const auto& d : g.vertices) {
    const auto cl = ground_truth_cluster(c, d);
    for (const auto& mv : available_moves(d)) {
      EXPECT_TRUE(same(apply_move(cl, mv), ground_truth_cluster(c, apply_move(d, mv))))
          << to_string(d) << " " << to_string(mv.kind) << " " << mv.from << "->" << mv.to;
    }
  }
}

TEST(ExchangeGraph, Counts) {
  EXPECT_EQ(exchange_graph(4).vertices.size(), 2U);
  EXPECT_EQ(exchange_graph(5).vertices.size(), 10U);
  EXPECT_EQ(exchange_graph(6).vertices.size(), 42U);
  for (int n = 4; n <= 8; ++n) {
    const auto g = exchange_graph(n);
    EXPECT_EQ(g.vertices.size(), catalan(static_cast<unsigned>(n - 2)) * static_cast<std::uint64_t>(n - 3));
    EXPECT_TRUE(g.connected());
    for (const auto& e : g.edges) {
      EXPECT_LT(e.from, e.to);
      // Edges are genuine mutations.
      bool found = false;
      for (const auto& mv : available_moves(g.vertices[e.from])) {
        found |= mv.kind == e.kind && apply_move(g.vertices[e.from], mv) == g.vertices[e.to];
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(ExchangeGraph, QuotientIsClassicalFlipGraph) {
  for (int n = 4; n <= 8; ++n) {
    const auto flips = classical_flip_graph(n);
    EXPECT_EQ(flips.vertices, brute_force_triangulations(n));
    // Brute-force flip edges: triangulations sharing n-4 diagonals.
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < flips.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < flips.vertices.size(); ++b) {
        std::size_t shared = 0;
        for (auto d : flips.vertices[a].diagonals) shared += flips.vertices[b].contains(d);
        if (shared + 4 == static_cast<std::size_t>(n)) edges.insert({a, b});
      }
    }
    const std::set<std::pair<std::size_t, std::size_t>> got(flips.edges.begin(), flips.edges.end());
    EXPECT_EQ(got, edges);
    EXPECT_EQ(quotient_by_marking(exchange_graph(n)), flips);
  }
}

TEST(ExchangeGraph, MarkingReachability) {
  for (int n = 4; n <= 8; ++n) {
    for (const auto& t : enumerate_triangulations(n)) EXPECT_TRUE(marking_reachability(t));
  }
}

TEST(ExchangeGraph, DotExport) {
  const auto dot = to_dot(exchange_graph(4));
  EXPECT_EQ(dot.rfind("graph exchange_4 {", 0), 0U);
  EXPECT_NE(dot.find("kind=even"), std::string::npos);
  EXPECT_EQ(dot, to_dot(exchange_graph(4)));
}

TEST(Walk, ConsistentAndDeterministic) {
  const auto c = generic_coords(7, 6);
  Rng a(99), b(99);
  const auto moves = random_walk(a, canonical_seed(6), 300);
  EXPECT_EQ(moves, random_walk(b, canonical_seed(6), 300));
  const auto rep = verify_walk(c, canonical_seed(6), moves);
  EXPECT_TRUE(rep.consistent) << rep.detail;
  EXPECT_EQ(rep.steps, 300U);
  EXPECT_TRUE(verify_walk(c, canonical_seed(6), {}).consistent);
}
