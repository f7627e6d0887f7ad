#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superpluecker/grassmann.hpp"
#include "superpluecker/pluecker.hpp"
#include "superpluecker/sampling.hpp"

namespace superpluecker {

/// Chord (i, j) of the n-gon, 1-based, stored with i < j. Used both for proper
/// diagonals and for polygon sides.
struct Diagonal {
  int i = 0, j = 0;
  auto operator<=>(const Diagonal&) const = default;
};

/// Normalizes the endpoint order.
Diagonal chord(int a, int b);
bool is_side(Diagonal d, int n);
/// j - i >= 2 and (i, j) != (1, n).
bool is_proper_diagonal(Diagonal d, int n);
/// Strict interior crossing.
bool crosses(Diagonal a, Diagonal b);
std::string to_string(Diagonal d);

struct Triangulation {
  int n = 0;
  std::vector<Diagonal> diagonals;  ///< sorted
  bool contains(Diagonal d) const;
  auto operator<=>(const Triangulation&) const = default;
};

/// Validates (n - 3 pairwise non-crossing proper diagonals) and sorts.
Triangulation make_triangulation(int n, std::vector<Diagonal> diagonals);

/// All triangulations of the n-gon, sorted.
std::vector<Triangulation> enumerate_triangulations(int n);

/// Fan at vertex 1.
Triangulation fan_triangulation(int n);

struct Quad {
  std::array<int, 4> vertices;  ///< cyclic (= ascending) order
  Diagonal target;              ///< the other diagonal of the quadrilateral
};

/// Quadrilateral formed by the two triangles adjacent to d.
Quad quad_of(const Triangulation& t, Diagonal d);
Triangulation flip(const Triangulation& t, Diagonal d);

struct DecoratedTriangulation {
  Triangulation triangulation;
  Diagonal marked;
  auto operator<=>(const DecoratedTriangulation&) const = default;
};

DecoratedTriangulation make_decorated(Triangulation t, Diagonal marked);
/// Fan at vertex 1 with (1, 3) marked.
DecoratedTriangulation canonical_seed(int n);
/// "T:{1-3,1-4};M:{1-3}"
std::string to_string(const DecoratedTriangulation& d);

struct DecoratedCluster {
  DecoratedTriangulation decoration;
  std::map<Diagonal, GrassmannElement> even_vars;    ///< one per diagonal
  std::map<Diagonal, GrassmannElement> frozen_vars;  ///< one per polygon side
  std::map<int, GrassmannElement> odd_vars;          ///< the two marked endpoints

  /// T^{ab} with antisymmetry, from even or frozen variables.
  GrassmannElement T(int a, int b) const;
};

/// Checks the cluster invariants; throws DomainError on failure.
void validate_cluster(const DecoratedCluster& c);

/// Moves marked endpoint `from` to `to`, keeping the other endpoint b fixed.
/// (b, to) must be a proper diagonal of the triangulation.
///
/// The new odd variable is obtained by solving the three-term odd exchange
/// relation on the sorted triple. When from and to are not consecutive
/// neighbours of b, the move is carried out as a chain of such steps around b,
/// so every coefficient is a variable of the current cluster.
DecoratedCluster odd_mutation(const DecoratedCluster& c, int from, int to);

/// Flips the marked diagonal inside its quadrilateral; the marking moves to
/// the new diagonal and both new odd variables are solved for.
DecoratedCluster even_mutation(const DecoratedCluster& c);

enum class MutationKind { Odd, Even };
const char* to_string(MutationKind k);

struct Move {
  MutationKind kind = MutationKind::Even;
  int from = 0, to = 0;  ///< odd moves only
  auto operator<=>(const Move&) const = default;
};

/// Every mutation available at a decoration, in deterministic order.
std::vector<Move> available_moves(const DecoratedTriangulation& d);
DecoratedTriangulation apply_move(const DecoratedTriangulation& d, const Move& m);
DecoratedCluster apply_move(const DecoratedCluster& c, const Move& m);

struct ExchangeEdge {
  std::size_t from, to;  ///< vertex indices, from < to
  MutationKind kind;
  auto operator<=>(const ExchangeEdge&) const = default;
};

struct ExchangeGraph {
  int n = 0;
  std::vector<DecoratedTriangulation> vertices;  ///< sorted
  std::vector<ExchangeEdge> edges;               ///< sorted, undirected

  std::optional<std::size_t> index_of(const DecoratedTriangulation& d) const;
  bool connected() const;
};

/// Closure of all mutations from the canonical seed.
ExchangeGraph exchange_graph(int n);

/// Classical flip graph of triangulations (vertices sorted).
struct FlipGraph {
  std::vector<Triangulation> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< sorted, first < second
  bool operator==(const FlipGraph&) const = default;
};

FlipGraph classical_flip_graph(int n);
/// Forget markings, drop odd edges, merge parallel edges.
FlipGraph quotient_by_marking(const ExchangeGraph& g);

/// Connectivity of the markings of t under single odd mutations.
bool marking_reachability(const Triangulation& t);

std::string to_dot(const ExchangeGraph& g);

/// Cluster whose variables are the coordinates of a fixed Gr_{2|0}(n|1) plane.
/// Throws NotInvertibleError if a needed T^{ab} is not invertible.
DecoratedCluster ground_truth_cluster(const Gr20Coords& coords, const DecoratedTriangulation& d);
DecoratedCluster ground_truth_cluster(const PlaneRep& u, const DecoratedTriangulation& d);

/// True if every T^{ab}, a < b, has invertible body.
bool is_generic_for_clusters(const Gr20Coords& coords);

struct WalkReport {
  std::size_t steps = 0;  ///< moves applied successfully
  bool consistent = true;
  std::optional<std::size_t> first_bad_step;  ///< 1-based
  std::string detail;
};

/// Applies the moves to the ground-truth seed cluster and compares every
/// variable against the plane's coordinates after each step.
WalkReport verify_walk(const Gr20Coords& coords, const DecoratedTriangulation& seed,
                       std::span<const Move> moves);

/// Uniformly random sequence of valid moves.
std::vector<Move> random_walk(Rng& rng, const DecoratedTriangulation& seed, std::size_t steps);

}  // namespace superpluecker
