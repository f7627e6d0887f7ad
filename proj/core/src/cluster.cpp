#include "superpluecker/cluster.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "superpluecker/error.hpp"

namespace superpluecker {

Diagonal chord(int a, int b) { return a < b ? Diagonal{a, b} : Diagonal{b, a}; }

bool is_side(Diagonal d, int n) { return d.j - d.i == 1 || (d.i == 1 && d.j == n); }

bool is_proper_diagonal(Diagonal d, int n) {
  return d.i >= 1 && d.j <= n && d.i < d.j && d.j - d.i >= 2 && !(d.i == 1 && d.j == n);
}

bool crosses(Diagonal a, Diagonal b) {
  return (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
}

std::string to_string(Diagonal d) { return std::to_string(d.i) + "-" + std::to_string(d.j); }

bool Triangulation::contains(Diagonal d) const {
  return std::binary_search(diagonals.begin(), diagonals.end(), d);
}

Triangulation make_triangulation(int n, std::vector<Diagonal> diagonals) {
  if (n < 4) throw DomainError("triangulation: need n >= 4");
  std::sort(diagonals.begin(), diagonals.end());
  if (std::adjacent_find(diagonals.begin(), diagonals.end()) != diagonals.end()) {
    throw DomainError("triangulation: repeated diagonal");
  }
  if (diagonals.size() != static_cast<std::size_t>(n - 3)) {
    throw DomainError("triangulation: need exactly n - 3 diagonals");
  }
  for (std::size_t a = 0; a < diagonals.size(); ++a) {
    if (!is_proper_diagonal(diagonals[a], n)) {
      throw DomainError("triangulation: " + to_string(diagonals[a]) + " is not a proper diagonal");
    }
    for (std::size_t b = a + 1; b < diagonals.size(); ++b) {
      if (crosses(diagonals[a], diagonals[b])) throw DomainError("triangulation: crossing diagonals");
    }
  }
  return {n, std::move(diagonals)};
}

namespace {

// Triangulations of the convex polygon with the listed vertices (in order).
std::vector<std::vector<Diagonal>> triangulate(const std::vector<int>& vs) {
  if (vs.size() < 3) return {{}};
  std::vector<std::vector<Diagonal>> out;
  const int first = vs.front(), last = vs.back();
  // The base (first, last) lies in exactly one triangle; enumerate its apex.
  for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
    const std::vector<int> left(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    const std::vector<int> right(vs.begin() + static_cast<std::ptrdiff_t>(k), vs.end());
    const auto ls = triangulate(left);
    const auto rs = triangulate(right);
    for (const auto& l : ls) {
      for (const auto& r : rs) {
        std::vector<Diagonal> d = l;
        d.insert(d.end(), r.begin(), r.end());
        if (k > 1) d.push_back(chord(first, vs[k]));
        if (k + 2 < vs.size()) d.push_back(chord(vs[k], last));
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

bool is_edge(const Triangulation& t, int a, int b) {
  const Diagonal d = chord(a, b);
  return is_side(d, t.n) || t.contains(d);
}

}  // namespace

std::vector<Triangulation> enumerate_triangulations(int n) {
  if (n < 4) throw DomainError("enumerate_triangulations: need n >= 4");
  std::vector<int> vs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Triangulation> out;
  for (auto& d : triangulate(vs)) out.push_back(make_triangulation(n, std::move(d)));
  std::sort(out.begin(), out.end());
  return out;
}

Triangulation fan_triangulation(int n) {
  std::vector<Diagonal> d;
  for (int k = 3; k < n; ++k) d.push_back({1, k});
  return make_triangulation(n, std::move(d));
}

Quad quad_of(const Triangulation& t, Diagonal d) {
  if (!t.contains(d)) throw DomainError("quad_of: " + to_string(d) + " is not in the triangulation");
  int inside = 0, outside = 0;
  for (int k = 1; k <= t.n; ++k) {
    if (k == d.i || k == d.j || !is_edge(t, d.i, k) || !is_edge(t, k, d.j)) continue;
    (k > d.i && k < d.j ? inside : outside) = k;
  }
  if (inside == 0 || outside == 0) throw DomainError("quad_of: malformed triangulation");
  std::array<int, 4> v{d.i, d.j, inside, outside};
  std::sort(v.begin(), v.end());
  return {v, chord(inside, outside)};
}

Triangulation flip(const Triangulation& t, Diagonal d) {
  const Quad q = quad_of(t, d);
  std::vector<Diagonal> ds;
  for (const auto& x : t.diagonals) {
    if (x != d) ds.push_back(x);
  }
  ds.push_back(q.target);
  return make_triangulation(t.n, std::move(ds));
}

DecoratedTriangulation make_decorated(Triangulation t, Diagonal marked) {
  if (!t.contains(marked)) throw DomainError("decoration: marked diagonal not in triangulation");
  return {std::move(t), marked};
}

DecoratedTriangulation canonical_seed(int n) { return make_decorated(fan_triangulation(n), {1, 3}); }

std::string to_string(const DecoratedTriangulation& d) {
  std::string s = "T:{";
  for (std::size_t k = 0; k < d.triangulation.diagonals.size(); ++k) {
    if (k) s += ',';
    s += to_string(d.triangulation.diagonals[k]);
  }
  return s + "};M:{" + to_string(d.marked) + "}";
}

// ---------------------------------------------------------------------------

GrassmannElement DecoratedCluster::T(int a, int b) const {
  if (a == b) throw DomainError("cluster: T with repeated index");
  const Diagonal d = chord(a, b);
  auto it = even_vars.find(d);
  if (it == even_vars.end()) {
    it = frozen_vars.find(d);
    if (it == frozen_vars.end()) throw DomainError("cluster: T^{" + to_string(d) + "} is not a cluster variable");
  }
  return a < b ? it->second : -it->second;
}

void validate_cluster(const DecoratedCluster& c) {
  const auto& t = c.decoration.triangulation;
  if (!t.contains(c.decoration.marked)) throw DomainError("cluster: marked diagonal missing");
  if (c.even_vars.size() != t.diagonals.size()) throw DomainError("cluster: wrong number of even variables");
  for (const auto& d : t.diagonals) {
    auto it = c.even_vars.find(d);
    if (it == c.even_vars.end()) throw DomainError("cluster: no variable for " + to_string(d));
    if (!is_even(it->second) || !is_invertible(it->second)) {
      throw DomainError("cluster: even variable " + to_string(d) + " not even invertible");
    }
  }
  if (c.frozen_vars.size() != static_cast<std::size_t>(t.n)) throw DomainError("cluster: wrong number of frozen variables");
  for (const auto& [d, v] : c.frozen_vars) {
    if (!is_side(d, t.n)) throw DomainError("cluster: frozen key is not a side");
    if (!is_even(v) || !is_invertible(v)) throw DomainError("cluster: frozen variable not even invertible");
  }
  if (c.odd_vars.size() != 2 || !c.odd_vars.contains(c.decoration.marked.i) ||
      !c.odd_vars.contains(c.decoration.marked.j)) {
    throw DomainError("cluster: odd variables must sit at the marked endpoints");
  }
  for (const auto& [v, x] : c.odd_vars) {
    if (!has_parity(x, Parity::Odd)) throw DomainError("cluster: odd variable is not odd");
  }
}

namespace {

// The odd exchange relation on a sorted triple x < y < z,
//   T^{xy} th^z = T^{xz} th^y + T^{zy} th^x,
// written as sum_v C_v th^v = 0 with C_v = +-T over the other two (sorted),
// minus for the middle index.
GrassmannElement coefficient(const DecoratedCluster& c, std::array<int, 3> tri, int v) {
  std::sort(tri.begin(), tri.end());
  int others[2], k = 0;
  for (int x : tri) {
    if (x != v) others[k++] = x;
  }
  GrassmannElement t = c.T(others[0], others[1]);
  return v == tri[1] ? -t : t;
}

// th^u from th^p and th^q on the triple {u, p, q}.
GrassmannElement solve_odd(const DecoratedCluster& c, int u, int p, int q) {
  const std::array<int, 3> tri{u, p, q};
  GrassmannElement known = coefficient(c, tri, p) * c.odd_vars.at(p) + coefficient(c, tri, q) * c.odd_vars.at(q);
  return -(invert(coefficient(c, tri, u)) * known);
}

std::vector<int> neighbours_around(const Triangulation& t, int b) {
  std::vector<int> nb;
  for (int v = 1; v <= t.n; ++v) {
    if (v != b && is_edge(t, b, v)) nb.push_back(v);
  }
  std::sort(nb.begin(), nb.end(), [&](int x, int y) { return (x - b + t.n) % t.n < (y - b + t.n) % t.n; });
  return nb;
}

// Marked (b, x) -> (b, y) where b, x, y bound a triangle.
DecoratedCluster odd_step(const DecoratedCluster& c, int b, int x, int y) {
  DecoratedCluster out = c;
  GrassmannElement th = solve_odd(c, y, b, x);
  out.odd_vars.erase(x);
  out.odd_vars.insert_or_assign(y, std::move(th));
  out.decoration.marked = chord(b, y);
  return out;
}

}  // namespace

DecoratedCluster odd_mutation(const DecoratedCluster& c, int from, int to) {
  const auto& dec = c.decoration;
  if (from != dec.marked.i && from != dec.marked.j) throw DomainError("odd mutation: source is not a marked endpoint");
  const int b = from == dec.marked.i ? dec.marked.j : dec.marked.i;
  if (to == from || to == b) throw DomainError("odd mutation: target must be a new vertex");
  const Diagonal nd = chord(b, to);
  if (!is_proper_diagonal(nd, dec.triangulation.n) || !dec.triangulation.contains(nd)) {
    throw DomainError("odd mutation: " + to_string(nd) + " is not a diagonal of the triangulation");
  }
  const auto nb = neighbours_around(dec.triangulation, b);
  const auto pos = [&](int v) { return static_cast<std::ptrdiff_t>(std::find(nb.begin(), nb.end(), v) - nb.begin()); };
  std::ptrdiff_t p = pos(from);
  const std::ptrdiff_t target = pos(to);
  const std::ptrdiff_t step = target > p ? 1 : -1;
  DecoratedCluster cur = c;
  for (; p != target; p += step) {
    cur = odd_step(cur, b, nb[static_cast<std::size_t>(p)], nb[static_cast<std::size_t>(p + step)]);
  }
  return cur;
}

DecoratedCluster even_mutation(const DecoratedCluster& c) {
  const auto& dec = c.decoration;
  const Diagonal old = dec.marked;
  const Quad q = quad_of(dec.triangulation, old);
  const auto [q1, q2, q3, q4] = q.vertices;
  // Even exchange relation on the sorted quadrilateral:
  //   T^{q1q3} T^{q2q4} = T^{q1q2} T^{q3q4} + T^{q1q4} T^{q2q3},
  // the old and new diagonals being the crossing pair.
  const GrassmannElement rhs = c.T(q1, q2) * c.T(q3, q4) + c.T(q1, q4) * c.T(q2, q3);
  const GrassmannElement t_new = rhs * invert(c.even_vars.at(old));

  const int k1 = q.target.i, k2 = q.target.j;
  GrassmannElement th1 = solve_odd(c, k1, old.i, old.j);
  GrassmannElement th2 = solve_odd(c, k2, old.i, old.j);

  DecoratedCluster out;
  out.decoration = make_decorated(flip(dec.triangulation, old), q.target);
  out.even_vars = c.even_vars;
  out.even_vars.erase(old);
  out.even_vars.emplace(q.target, t_new);
  out.frozen_vars = c.frozen_vars;
  out.odd_vars.emplace(k1, std::move(th1));
  out.odd_vars.emplace(k2, std::move(th2));
  return out;
}

const char* to_string(MutationKind k) { return k == MutationKind::Odd ? "odd" : "even"; }

std::vector<Move> available_moves(const DecoratedTriangulation& d) {
  std::vector<Move> moves{{MutationKind::Even, 0, 0}};
  for (int from : {d.marked.i, d.marked.j}) {
    const int b = from == d.marked.i ? d.marked.j : d.marked.i;
    for (const auto& x : d.triangulation.diagonals) {
      if (x == d.marked || (x.i != b && x.j != b)) continue;
      moves.push_back({MutationKind::Odd, from, x.i == b ? x.j : x.i});
    }
  }
  return moves;
}

DecoratedTriangulation apply_move(const DecoratedTriangulation& d, const Move& m) {
  if (m.kind == MutationKind::Even) {
    const Quad q = quad_of(d.triangulation, d.marked);
    return make_decorated(flip(d.triangulation, d.marked), q.target);
  }
  if (m.from != d.marked.i && m.from != d.marked.j) throw DomainError("odd move: source is not a marked endpoint");
  const int b = m.from == d.marked.i ? d.marked.j : d.marked.i;
  const Diagonal nd = chord(b, m.to);
  if (m.to == m.from || !is_proper_diagonal(nd, d.triangulation.n) || !d.triangulation.contains(nd)) {
    throw DomainError("odd move: target is not a diagonal of the triangulation");
  }
  return make_decorated(d.triangulation, nd);
}

DecoratedCluster apply_move(const DecoratedCluster& c, const Move& m) {
  return m.kind == MutationKind::Even ? even_mutation(c) : odd_mutation(c, m.from, m.to);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> ExchangeGraph::index_of(const DecoratedTriangulation& d) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), d);
  if (it == vertices.end() || *it != d) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

namespace {

bool is_connected(std::size_t count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (count == 0) return true;
  std::vector<std::vector<std::size_t>> adj(count);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == count;
}

}  // namespace

bool ExchangeGraph::connected() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& x : edges) e.emplace_back(x.from, x.to);
  return is_connected(vertices.size(), e);
}

ExchangeGraph exchange_graph(int n) {
  if (n < 4) throw DomainError("exchange_graph: need n >= 4");
  std::set<DecoratedTriangulation> seen;
  std::vector<std::tuple<DecoratedTriangulation, DecoratedTriangulation, MutationKind>> raw;
  std::deque<DecoratedTriangulation> queue;
  const auto seed = canonical_seed(n);
  seen.insert(seed);
  queue.push_back(seed);
  while (!queue.empty()) {
    const DecoratedTriangulation v = std::move(queue.front());
    queue.pop_front();
    for (const auto& m : available_moves(v)) {
      DecoratedTriangulation w = apply_move(v, m);
      raw.emplace_back(v, w, m.kind);
      if (seen.insert(w).second) queue.push_back(std::move(w));
    }
  }
  ExchangeGraph g;
  g.n = n;
  g.vertices.assign(seen.begin(), seen.end());
  std::set<ExchangeEdge> edges;
  for (const auto& [a, b, kind] : raw) {
    const auto ia = *g.index_of(a), ib = *g.index_of(b);
    edges.insert({std::min(ia, ib), std::max(ia, ib), kind});
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

FlipGraph classical_flip_graph(int n) {
  FlipGraph g;
  g.vertices = enumerate_triangulations(n);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < g.vertices.size(); ++a) {
    for (const auto& d : g.vertices[a].diagonals) {
      const Triangulation t = flip(g.vertices[a], d);
      const auto b = static_cast<std::size_t>(
          std::lower_bound(g.vertices.begin(), g.vertices.end(), t) - g.vertices.begin());
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

FlipGraph quotient_by_marking(const ExchangeGraph& g) {
  FlipGraph q;
  for (const auto& v : g.vertices) q.vertices.push_back(v.triangulation);
  std::sort(q.vertices.begin(), q.vertices.end());
  q.vertices.erase(std::unique(q.vertices.begin(), q.vertices.end()), q.vertices.end());
  auto idx = [&](const Triangulation& t) {
    return static_cast<std::size_t>(std::lower_bound(q.vertices.begin(), q.vertices.end(), t) - q.vertices.begin());
  };
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : g.edges) {
    if (e.kind != MutationKind::Even) continue;
    const auto a = idx(g.vertices[e.from].triangulation), b = idx(g.vertices[e.to].triangulation);
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  q.edges.assign(edges.begin(), edges.end());
  return q;
}

bool marking_reachability(const Triangulation& t) {
  const auto& ds = t.diagonals;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      if (ds[a].i == ds[b].i || ds[a].i == ds[b].j || ds[a].j == ds[b].i || ds[a].j == ds[b].j) {
        edges.emplace_back(a, b);
      }
    }
  }
  return is_connected(ds.size(), edges);
}

std::string to_dot(const ExchangeGraph& g) {
  std::ostringstream os;
  os << "graph exchange_" << g.n << " {\n";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    os << "  v" << k << " [label=\"" << to_string(g.vertices[k]) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  v" << e.from << " -- v" << e.to << " [kind=" << to_string(e.kind) << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

DecoratedCluster ground_truth_cluster(const Gr20Coords& coords, const DecoratedTriangulation& d) {
  const int n = d.triangulation.n;
  if (static_cast<std::size_t>(n) != coords.n) throw ShapeError("ground truth: polygon size differs from plane");
  auto T = [&](Diagonal x) {
    GrassmannElement v = coords.T(static_cast<std::size_t>(x.i - 1), static_cast<std::size_t>(x.j - 1));
    if (!is_invertible(v)) throw NotInvertibleError("ground truth: T^{" + to_string(x) + "} not invertible");
    return v;
  };
  DecoratedCluster c;
  c.decoration = d;
  for (const auto& x : d.triangulation.diagonals) c.even_vars.emplace(x, T(x));
  for (int i = 1; i < n; ++i) c.frozen_vars.emplace(Diagonal{i, i + 1}, T({i, i + 1}));
  c.frozen_vars.emplace(Diagonal{1, n}, T({1, n}));
  for (int v : {d.marked.i, d.marked.j}) c.odd_vars.emplace(v, coords.theta[static_cast<std::size_t>(v - 1)]);
  return c;
}

DecoratedCluster ground_truth_cluster(const PlaneRep& u, const DecoratedTriangulation& d) {
  return ground_truth_cluster(coords_gr2_0_n1(u), d);
}

bool is_generic_for_clusters(const Gr20Coords& coords) {
  for (const auto& [key, v] : coords.t) {
    if (!is_invertible(v)) return false;
  }
  return true;
}

WalkReport verify_walk(const Gr20Coords& coords, const DecoratedTriangulation& seed,
                       std::span<const Move> moves) {
  WalkReport rep;
  DecoratedCluster cur = ground_truth_cluster(coords, seed);
  for (const auto& m : moves) {
    cur = apply_move(cur, m);
    ++rep.steps;
    const DecoratedCluster truth = ground_truth_cluster(coords, cur.decoration);
    std::string bad;
    for (const auto& [d, v] : truth.even_vars) {
      if (cur.even_vars.at(d) != v) bad = "T^{" + to_string(d) + "}";
    }
    for (const auto& [k, v] : truth.odd_vars) {
      auto it = cur.odd_vars.find(k);
      if (it == cur.odd_vars.end() || it->second != v) bad = "theta^" + std::to_string(k);
    }
    if (cur.frozen_vars != truth.frozen_vars) bad = "frozen variables";
    if (!bad.empty()) {
      rep.consistent = false;
      rep.first_bad_step = rep.steps;
      rep.detail = bad + " differs from the plane after " + std::string(to_string(m.kind)) +
                   " mutation at " + to_string(cur.decoration);
      return rep;
    }
  }
  return rep;
}

std::vector<Move> random_walk(Rng& rng, const DecoratedTriangulation& seed, std::size_t steps) {
  std::vector<Move> out;
  DecoratedTriangulation cur = seed;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto moves = available_moves(cur);
    const Move m = moves[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(moves.size()) - 1))];
    cur = apply_move(cur, m);
    out.push_back(m);
  }
  return out;
}

}  // namespace superpluecker
