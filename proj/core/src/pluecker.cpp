#include "superpluecker/pluecker.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "superpluecker/error.hpp"

namespace superpluecker {

namespace {

using Tuple = std::vector<std::size_t>;

// Every tuple in [0, d)^k, lexicographic.
template <class F>
void for_each_tuple(std::size_t d, std::size_t k, F&& f) {
  if (d == 0 && k > 0) return;
  Tuple t(k, 0);
  for (;;) {
    f(static_cast<const Tuple&>(t));
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == d) {
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

// Strictly increasing k-tuples in [0, d), lexicographic.
template <class F>
void for_each_combination(std::size_t d, std::size_t k, F&& f) {
  if (k > d) return;
  Tuple t(k);
  std::iota(t.begin(), t.end(), std::size_t{0});
  for (;;) {
    f(static_cast<const Tuple&>(t));
    std::size_t i = k;
    while (i > 0 && t[i - 1] == d - k + i - 1) --i;
    if (i == 0) return;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
}

Tuple concat(const Tuple& a, std::initializer_list<std::size_t> tail) {
  Tuple t = a;
  t.insert(t.end(), tail);
  return t;
}

std::vector<Parity> standard_labels(std::size_t even, std::size_t odd) {
  std::vector<Parity> p(even, Parity::Even);
  p.insert(p.end(), odd, Parity::Odd);
  return p;
}

GrassmannElement signed_value(int sign, GrassmannElement x) {
  if (sign < 0) return -x;
  return x;
}

// Components on all of [0, D)^k for fast repeated lookup.
class DenseTable {
public:
  explicit DenseTable(const Multivector& t) : d_(t.n() + t.m()), k_(t.degree()) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < k_; ++i) size *= d_;
    values_.reserve(size);
    for_each_tuple(d_, k_, [&](const Tuple& tup) { values_.push_back(t.get(tup)); });
  }

  const GrassmannElement& operator()(const Tuple& tup) const {
    std::size_t idx = 0;
    for (auto x : tup) idx = idx * d_ + x;
    return values_[idx];
  }

private:
  std::size_t d_, k_;
  std::vector<GrassmannElement> values_;
};

// Plain permutation sign sorting an all-even tuple; 0 on repeats.
int sort_sign(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j + 1 < t.size() - i; ++j) {
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == t[i - 1]) return 0;
  }
  return sign;
}

}  // namespace

std::string index_label(std::size_t index, std::size_t n) {
  if (index < n) return std::to_string(index + 1);
  return "^" + std::to_string(index - n + 1);
}

std::string tuple_label(std::span<const std::size_t> tuple, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ',';
    s += index_label(tuple[i], n);
  }
  return s;
}

// ---------------------------------------------------------------------------

PlaneRep::PlaneRep(SuperMatrix u, PlaneShape shape) : u_(std::move(u)), shape_(shape) {
  if (u_.rows() != shape_.r + shape_.s || u_.cols() != shape_.n + shape_.m) {
    throw ShapeError("plane: matrix shape does not match r|s x n|m");
  }
  if (u_.row_parities() != standard_labels(shape_.r, shape_.s) ||
      u_.col_parities() != standard_labels(shape_.n, shape_.m)) {
    throw ShapeError("plane: labels must be in standard format");
  }
  if (u_.is_wrong()) throw DomainError("plane: coordinate matrix must be even");
}

PlaneRep PlaneRep::transformed(const SuperMatrix& g) const {
  if (g.row_parities() != standard_labels(shape_.r, shape_.s) || g.is_wrong()) {
    throw ShapeError("plane transform: g must be an even r|s-square matrix");
  }
  return PlaneRep(multiply(g, u_), shape_);
}

SuperMatrix coordinate_matrix(const PlaneRep& u, std::span<const std::size_t> cols) {
  const auto& sh = u.shape();
  if (cols.size() != sh.r + sh.s) throw ShapeError("coordinate matrix: need r+s columns");
  std::vector<std::size_t> all_rows(sh.r + sh.s);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  Matrix e = u.matrix().entries().submatrix(all_rows, cols);
  std::vector<Parity> labels = standard_labels(sh.r, sh.s);
  std::vector<std::size_t> wrong;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= sh.n + sh.m) throw ShapeError("coordinate matrix: column out of range");
    const Parity actual = u.is_odd_index(cols[j]) ? Parity::Odd : Parity::Even;
    if (actual != labels[j]) wrong.push_back(j);
  }
  return SuperMatrix(u.matrix().row_parities(), std::move(labels), std::move(e), {},
                     std::move(wrong));
}

bool has_full_rank(const PlaneRep& u) {
  const auto& sh = u.shape();
  const Matrix& e = u.matrix().entries();
  auto block_ok = [&](std::size_t row0, std::size_t k, std::size_t col0, std::size_t width) {
    if (k == 0) return true;
    Tuple rows(k);
    std::iota(rows.begin(), rows.end(), row0);
    bool found = false;
    for_each_combination(width, k, [&](const Tuple& c) {
      if (found) return;
      Tuple cols = c;
      for (auto& x : cols) x += col0;
      if (is_invertible(det(e.submatrix(rows, cols)))) found = true;
    });
    return found;
  };
  return block_ok(0, sh.r, 0, sh.n) && block_ok(sh.r, sh.s, sh.n, sh.m);
}

PlaneRep sample_plane(Rng& rng, const PlaneShape& shape, unsigned generators,
                      const SampleProfile& profile,
                      const std::function<bool(const PlaneRep&)>& accept, unsigned max_retries) {
  const auto rows = standard_labels(shape.r, shape.s);
  const auto cols = standard_labels(shape.n, shape.m);
  for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
    GeneratorPool pool(generators);
    Matrix e(rows.size(), cols.size(), generators);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        e(i, j) = sample_homogeneous(rng, pool, profile, rows[i] + cols[j]);
      }
    }
    PlaneRep p(SuperMatrix(rows, cols, std::move(e)), shape);
    if (!has_full_rank(p)) continue;
    if (accept && !accept(p)) continue;
    return p;
  }
  throw DomainError("sample_plane: no generic plane after " + std::to_string(max_retries) +
                    " attempts");
}

// ---------------------------------------------------------------------------

Multivector::Multivector(std::size_t degree, std::size_t n, std::size_t m, unsigned generators)
    : degree_(degree), n_(n), m_(m), generators_(generators) {}

int canonical_sign(std::vector<std::size_t>& tuple, std::size_t n) {
  int sign = 1;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = 0; j + 1 < tuple.size() - i; ++j) {
      if (tuple[j] > tuple[j + 1]) {
        // Two odd indices commute past each other; anything else anticommutes.
        if (!(tuple[j] >= n && tuple[j + 1] >= n)) sign = -sign;
        std::swap(tuple[j], tuple[j + 1]);
      }
    }
  }
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    if (tuple[i] == tuple[i - 1] && tuple[i] < n) return 0;
  }
  return sign;
}

GrassmannElement Multivector::get(std::span<const std::size_t> tuple) const {
  if (tuple.size() != degree_) throw ShapeError("multivector: wrong number of indices");
  Tuple t(tuple.begin(), tuple.end());
  for (auto x : t) {
    if (x >= n_ + m_) throw ShapeError("multivector: index out of range");
  }
  const int sign = canonical_sign(t, n_);
  if (sign == 0) return GrassmannElement(generators_);
  auto it = comps_.find(t);
  if (it == comps_.end()) return GrassmannElement(generators_);
  return signed_value(sign, it->second);
}

void Multivector::set(std::span<const std::size_t> canonical, GrassmannElement value) {
  Tuple t(canonical.begin(), canonical.end());
  Tuple check = t;
  if (t.size() != degree_ || canonical_sign(check, n_) != 1 || check != t) {
    throw DomainError("multivector: tuple is not canonical");
  }
  if (value.is_zero()) {
    comps_.erase(t);
  } else {
    comps_.insert_or_assign(std::move(t), std::move(value));
  }
}

std::vector<std::vector<std::size_t>> canonical_tuples(std::size_t degree, std::size_t n,
                                                       std::size_t m) {
  std::vector<Tuple> out;
  for (std::size_t k = 0; k <= std::min(degree, n); ++k) {
    const std::size_t rest = degree - k;
    for_each_combination(n, k, [&](const Tuple& even) {
      // Weakly increasing odd part of length `rest`.
      if (rest > 0 && m == 0) return;
      Tuple odd(rest, 0);
      for (;;) {
        Tuple t = even;
        for (auto x : odd) t.push_back(n + x);
        out.push_back(std::move(t));
        std::size_t i = rest;
        while (i > 0 && odd[i - 1] == m - 1) --i;
        if (i == 0) break;
        ++odd[i - 1];
        for (std::size_t j = i; j < rest; ++j) odd[j] = odd[i - 1];
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

Multivector wedge(const Matrix& rows, std::size_t n, std::size_t m) {
  if (rows.cols() != n + m) throw ShapeError("wedge: vectors do not live in n|m-space");
  const std::size_t r = rows.rows();
  const unsigned g = rows.generator_count();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n + m; ++j) {
      if (!has_parity(rows(i, j), j < n ? Parity::Even : Parity::Odd)) {
        throw DomainError("wedge: input vectors must be even");
      }
    }
  }
  Multivector t(r, n, m, g);
  Tuple perm(r);
  for (const auto& a : canonical_tuples(r, n, m)) {
    std::size_t odd_pairs = 0, odd_seen = 0;
    for (auto x : a) {
      if (x >= n) odd_pairs += odd_seen++;
    }
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    GrassmannElement sum(g);
    do {
      GrassmannElement term(g, 1);
      for (std::size_t k = 0; k < r && !term.is_zero(); ++k) term *= rows(perm[k], a[k]);
      if (term.is_zero()) continue;
      if (permutation_sign(perm) < 0) term = -term;
      sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (odd_pairs % 2 == 1) sum = -sum;
    t.set(a, std::move(sum));
  }
  return t;
}

// ---------------------------------------------------------------------------

void RelationReport::merge(RelationReport other) {
  checked += other.checked;
  for (auto& v : other.violations) violations.push_back(std::move(v));
  for (auto& v : other.skips) skips.push_back(std::move(v));
}

void RelationReport::record(const char* id, std::vector<std::size_t> tuple, GrassmannElement lhs,
                            GrassmannElement rhs) {
  ++checked;
  if (lhs == rhs) return;
  violations.push_back({id, std::move(tuple), std::move(lhs), std::move(rhs), false});
}

void RelationReport::skip(const char* id, std::vector<std::size_t> tuple) {
  skips.push_back({id, std::move(tuple), GrassmannElement(0), GrassmannElement(0), true});
}

RelationReport check_simple(const Multivector& t) {
  const std::size_t n = t.n(), d = t.n() + t.m(), r = t.degree();
  if (r == 0) throw DomainError("check_simple: degree must be positive");
  bool nondegenerate = false;
  for (const auto& [key, value] : t.components()) {
    if (key.back() < n && is_invertible(value)) {
      nondegenerate = true;
      break;
    }
  }
  if (!nondegenerate) throw DomainError("check_simple: multivector is degenerate");

  const DenseTable tab(t);
  auto par = [n](std::size_t x) -> int { return x >= n ? 1 : 0; };
  RelationReport rep;
  Tuple ab(r), cj(r), swapped(r);
  for_each_tuple(d, r - 1, [&](const Tuple& a) {
    int pa = 0;
    for (auto x : a) pa += par(x);
    std::copy(a.begin(), a.end(), ab.begin());
    std::copy(a.begin(), a.end(), cj.begin());
    for (std::size_t b = 0; b < d; ++b) {
      ab[r - 1] = b;
      const int pb = par(b);
      for_each_tuple(d, r, [&](const Tuple& c) {
        int pc = 0;
        for (auto x : c) pc += par(x);
        GrassmannElement lhs = tab(ab) * tab(c);
        if ((pb * (pa + pc)) % 2) lhs = -lhs;
        GrassmannElement rhs(t.generator_count());
        int before = 0;  // parity sum of c_1..c_{j-1}
        for (std::size_t j = 0; j < r; ++j) {
          const int after = pc - before - par(c[j]);
          cj[r - 1] = c[j];
          swapped = c;
          swapped[j] = b;
          GrassmannElement term = tab(cj) * tab(swapped);
          if ((pb * before + par(c[j]) * (pa + after)) % 2) term = -term;
          rhs += term;
          before += par(c[j]);
        }
        Tuple idx = ab;
        idx.insert(idx.end(), c.begin(), c.end());
        rep.record("simple", std::move(idx), std::move(lhs), std::move(rhs));
      });
    }
  });
  return rep;
}

// ---------------------------------------------------------------------------

GrassmannElement Gr20Coords::T(std::size_t a, std::size_t b) const {
  if (a >= n || b >= n) throw ShapeError("Gr20Coords: index out of range");
  if (a == b) return GrassmannElement(generators);
  if (a < b) return t.at({a, b});
  return -t.at({b, a});
}

Gr20Coords coords_gr2_0_n1(const PlaneRep& u) {
  const auto& sh = u.shape();
  if (sh.r != 2 || sh.s != 0 || sh.m != 1) throw ShapeError("coords_gr2_0_n1: need a 2|0 x n|1 plane");
  if (!has_full_rank(u)) throw DomainError("coords_gr2_0_n1: rank below 2");
  const Multivector w = wedge(u.matrix().entries(), sh.n, sh.m);
  Gr20Coords c;
  c.n = sh.n;
  c.generators = u.generator_count();
  for (std::size_t a = 0; a < sh.n; ++a) {
    for (std::size_t b = a + 1; b < sh.n; ++b) c.t.emplace(std::pair{a, b}, w.get(Tuple{a, b}));
    c.theta.push_back(w.get(Tuple{a, sh.n}));
  }
  c.t_hat = w.get(Tuple{sh.n, sh.n});
  return c;
}

RelationReport check_gr2_0_relations(const Gr20Coords& c) {
  const std::size_t n = c.n;
  RelationReport rep;
  for_each_tuple(n, 4, [&](const Tuple& i) {
    const auto a = i[0], b = i[1], cc = i[2], d = i[3];
    rep.record("exchange_even", i, c.T(a, cc) * c.T(b, d),
               c.T(a, b) * c.T(cc, d) + c.T(a, d) * c.T(b, cc));
  });
  for_each_tuple(n, 3, [&](const Tuple& i) {
    const auto a = i[0], b = i[1], cc = i[2];
    rep.record("exchange_odd", i, c.T(a, b) * c.theta[cc],
               c.T(a, cc) * c.theta[b] + c.T(cc, b) * c.theta[a]);
  });
  for_each_tuple(n, 2, [&](const Tuple& i) {
    rep.record("t_hat_pair", i, c.T(i[0], i[1]) * c.t_hat,
               Rational(-2) * (c.theta[i[0]] * c.theta[i[1]]));
  });
  for (std::size_t a = 0; a < n; ++a) {
    rep.record("t_hat_theta", {a}, c.theta[a] * c.t_hat, GrassmannElement(c.generators));
  }
  rep.record("t_hat_square", {}, c.t_hat * c.t_hat, GrassmannElement(c.generators));
  return rep;
}

RelationReport check_ess_relations_r0(const Multivector& t) {
  const std::size_t n = t.n(), r = t.degree();
  if (r == 0) throw DomainError("ess relations: degree must be positive");
  const DenseTable tab(t);
  const unsigned g = t.generator_count();
  RelationReport rep;
  Tuple x(r), y(r);
  for_each_tuple(n, r, [&](const Tuple& a) {
    for_each_tuple(n, r, [&](const Tuple& b) {
      GrassmannElement rhs(g);
      for (std::size_t j = 0; j < r; ++j) {
        x = a;
        x[0] = b[j];
        y = b;
        y[j] = a[0];
        rhs += tab(x) * tab(y);
      }
      Tuple idx = a;
      idx.insert(idx.end(), b.begin(), b.end());
      rep.record("ess_even", std::move(idx), tab(a) * tab(b), std::move(rhs));
    });
  });
  for (std::size_t mu = n; mu < n + t.m(); ++mu) {
    for_each_tuple(n, r, [&](const Tuple& a) {
      for_each_tuple(n, r - 1, [&](const Tuple& b) {
        const Tuple bmu = concat(b, {mu});
        GrassmannElement rhs(g);
        for (std::size_t j = 0; j + 1 < r; ++j) {
          x = a;
          x[0] = b[j];
          y = bmu;
          y[j] = a[0];
          rhs += tab(x) * tab(y);
        }
        x = a;
        x[0] = mu;
        rhs += tab(x) * tab(concat(b, {a[0]}));
        Tuple idx = a;
        idx.insert(idx.end(), bmu.begin(), bmu.end());
        rep.record("ess_odd", std::move(idx), tab(a) * tab(bmu), std::move(rhs));
      });
    });
  }
  return rep;
}

RelationReport check_ess_relations_r0(const PlaneRep& u) {
  const auto& sh = u.shape();
  if (sh.s != 0) throw ShapeError("ess relations: plane must have s = 0");
  return check_ess_relations_r0(wedge(u.matrix().entries(), sh.n, sh.m));
}

// ---------------------------------------------------------------------------

GrassmannElement pl_eval(const PlaneRep& u, const SuperMatrix& p) {
  return ber(multiply(u.matrix(), p));
}

GrassmannElement pl_star_eval(const PlaneRep& u, const SuperMatrix& p) {
  return ber_star(multiply(u.matrix(), p));
}

SuperMatrix basis_covectors(const PlaneShape& shape, std::span<const std::size_t> cols,
                            unsigned generators) {
  if (cols.size() != shape.r + shape.s) throw ShapeError("basis_covectors: need r+s indices");
  const auto rows = standard_labels(shape.n, shape.m);
  auto labels = standard_labels(shape.r, shape.s);
  Matrix e(rows.size(), cols.size(), generators);
  std::vector<std::size_t> wrong;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= rows.size()) throw ShapeError("basis_covectors: index out of range");
    e(cols[j], j) = GrassmannElement(generators, 1);
    if (rows[cols[j]] != labels[j]) wrong.push_back(j);
  }
  return SuperMatrix(rows, std::move(labels), std::move(e), {}, std::move(wrong));
}

std::string CoordKey::label(std::size_t r, std::size_t n) const {
  std::string s = (kind == CoordKind::Star || kind == CoordKind::StarSub) ? "T*[" : "T[";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i == r) {
      s += '|';
    } else if (i) {
      s += ',';
    }
    s += index_label(cols[i], n);
  }
  if (cols.size() == r) s += '|';
  return s + "]";
}

std::size_t PlueckerCoordSet::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const auto& kv) { return kv.second.has_value(); }));
}

PlueckerCoordSet super_pluecker_coords(const PlaneRep& u) {
  const auto& sh = u.shape();
  if (!has_full_rank(u)) throw DomainError("super_pluecker_coords: rank condition fails");
  PlueckerCoordSet out;
  out.shape = sh;
  auto evaluate = [&](CoordKind kind, Tuple cols) {
    const bool star = kind == CoordKind::Star || kind == CoordKind::StarSub;
    const bool odd = kind == CoordKind::OddSub || kind == CoordKind::StarSub;
    std::optional<GrassmannElement> v;
    try {
      const SuperMatrix m = coordinate_matrix(u, cols);
      v = star ? ber_star(m) : ber(m);
    } catch (const NotInvertibleError&) {
    }
    CoordKey key{kind, std::move(cols)};
    if (v && !has_parity(*v, odd ? Parity::Odd : Parity::Even)) out.parity_failures.push_back(key);
    out.values.emplace(std::move(key), std::move(v));
  };
  for_each_combination(sh.n, sh.r, [&](const Tuple& a) {
    for_each_combination(sh.m, sh.s, [&](const Tuple& mu) {
      Tuple cols = a;
      for (auto x : mu) cols.push_back(sh.n + x);
      evaluate(CoordKind::Even, cols);
      evaluate(CoordKind::Star, cols);
    });
  });
  // One odd column in the first even slot.
  if (sh.r > 0) {
    for_each_combination(sh.n, sh.r - 1, [&](const Tuple& rest) {
      for_each_combination(sh.m, sh.s, [&](const Tuple& mu) {
        for (std::size_t nu = 0; nu < sh.m; ++nu) {
          Tuple cols{sh.n + nu};
          cols.insert(cols.end(), rest.begin(), rest.end());
          for (auto x : mu) cols.push_back(sh.n + x);
          evaluate(CoordKind::OddSub, std::move(cols));
        }
      });
    });
  }
  // One even column in the first odd slot.
  if (sh.s > 0) {
    for_each_combination(sh.n, sh.r, [&](const Tuple& a) {
      for_each_combination(sh.m, sh.s - 1, [&](const Tuple& mu) {
        for (std::size_t b = 0; b < sh.n; ++b) {
          if (std::find(a.begin(), a.end(), b) != a.end()) continue;
          Tuple cols = a;
          cols.push_back(b);
          for (auto x : mu) cols.push_back(sh.n + x);
          evaluate(CoordKind::StarSub, std::move(cols));
        }
      });
    });
  }
  return out;
}

// ---------------------------------------------------------------------------

GrassmannElement theta_from_berezinians(const PlaneRep& u, std::span<const std::size_t> tuple) {
  const auto& sh = u.shape();
  if (sh.s != 1 || sh.m != 1) throw ShapeError("theta: need an r|1 x n|1 plane");
  if (tuple.size() != sh.r + 1) throw ShapeError("theta: need r+1 indices");
  for (auto x : tuple) {
    if (x >= sh.n) throw ShapeError("theta: indices must be even columns");
  }
  const Tuple cols(tuple.begin(), tuple.end());
  Tuple pcols(tuple.begin(), tuple.end() - 1);
  pcols.push_back(sh.n);
  const GrassmannElement p = ber(coordinate_matrix(u, pcols));
  return ber_star(coordinate_matrix(u, cols)) * p * p;
}

GrassmannElement theta_from_determinants(const PlaneRep& u, std::span<const std::size_t> tuple) {
  const auto& sh = u.shape();
  if (sh.s != 1 || sh.m != 1) throw ShapeError("theta: need an r|1 x n|1 plane");
  if (tuple.size() != sh.r + 1) throw ShapeError("theta: need r+1 indices");
  const Matrix& e = u.matrix().entries();
  Tuple all_rows(sh.r + 1), even_rows(sh.r);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  std::iota(even_rows.begin(), even_rows.end(), std::size_t{0});
  const Tuple cols(tuple.begin(), tuple.end());
  const Tuple a(tuple.begin(), tuple.end() - 1);
  const Tuple a_hat = concat(a, {sh.n});
  const GrassmannElement wrong = det_leibniz(e.submatrix(all_rows, cols));
  const GrassmannElement even = det(e.submatrix(even_rows, a));
  const GrassmannElement inv = invert(det_leibniz(e.submatrix(all_rows, a_hat), FactorOrder::RowDescending));
  return wrong * even * even * inv * inv;
}

std::optional<GrassmannElement> ReducedCoordsR1::P(std::span<const std::size_t> a) const {
  if (a.size() != r) throw ShapeError("P: need r indices");
  Tuple t(a.begin(), a.end());
  const int sign = sort_sign(t);
  if (sign == 0) return GrassmannElement(generators);
  auto it = p.find(t);
  if (it == p.end()) return std::nullopt;
  return signed_value(sign, it->second);
}

std::optional<GrassmannElement> ReducedCoordsR1::Theta(std::span<const std::size_t> tuple) const {
  if (tuple.size() != r + 1) throw ShapeError("theta: need r+1 indices");
  Tuple t(tuple.begin(), tuple.end());
  const int sign = sort_sign(t);
  if (sign == 0) return GrassmannElement(generators);
  // Any split (a, c) of the sorted set will do; moving t[k] to the end costs (-1)^(r-k).
  for (std::size_t k = t.size(); k-- > 0;) {
    Tuple key;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i != k) key.push_back(t[i]);
    }
    key.push_back(t[k]);
    auto it = theta.find(key);
    if (it == theta.end()) continue;
    return signed_value((r - k) % 2 ? -sign : sign, it->second);
  }
  return std::nullopt;
}

ReducedCoordsR1 reduced_coords_r1_n1(const PlaneRep& u) {
  const auto& sh = u.shape();
  if (sh.s != 1 || sh.m != 1) throw ShapeError("reduced coordinates: need an r|1 x n|1 plane");
  ReducedCoordsR1 c;
  c.r = sh.r;
  c.n = sh.n;
  c.generators = u.generator_count();
  for_each_combination(sh.n, sh.r, [&](const Tuple& a) {
    const SuperMatrix m = coordinate_matrix(u, concat(a, {sh.n}));
    GrassmannElement p(c.generators), ps(c.generators);
    try {
      p = ber(m);
      ps = ber_star(m);
    } catch (const NotInvertibleError&) {
      c.undefined.push_back(a);
      return;
    }
    if (!is_invertible(p)) {
      c.undefined.push_back(a);
      return;
    }
    c.p.emplace(a, p);
    c.p_star.emplace(a, ps);
    for (std::size_t cc = 0; cc < sh.n; ++cc) {
      if (std::find(a.begin(), a.end(), cc) != a.end()) continue;
      const Tuple key = concat(a, {cc});
      GrassmannElement th = theta_from_berezinians(u, key);
      if (theta_from_determinants(u, key) != th) c.path_mismatches.push_back(key);
      c.theta.emplace(key, std::move(th));
    }
  });
  return c;
}

namespace {

// Reference to a stored reduced coordinate: sign 0 means the value is zero
// (repeated index); value == nullptr with a nonzero sign means undefined.
struct CoordRef {
  int sign = 0;
  const GrassmannElement* value = nullptr;
};

CoordRef p_ref(const ReducedCoordsR1& c, const Tuple& a) {
  Tuple t = a;
  const int sign = sort_sign(t);
  if (sign == 0) return {};
  auto it = c.p.find(t);
  return {sign, it == c.p.end() ? nullptr : &it->second};
}

CoordRef theta_ref(const ReducedCoordsR1& c, const Tuple& tuple) {
  Tuple t = tuple;
  const int sign = sort_sign(t);
  if (sign == 0) return {};
  for (std::size_t k = t.size(); k-- > 0;) {
    Tuple key;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i != k) key.push_back(t[i]);
    }
    key.push_back(t[k]);
    auto it = c.theta.find(key);
    if (it != c.theta.end()) return {(c.r - k) % 2 ? -sign : sign, &it->second};
  }
  return {sign, nullptr};
}

// Products of stored coordinates recur across index tuples; each distinct
// pair is multiplied once.
class ProductCache {
public:
  explicit ProductCache(unsigned generators) : g_(generators) {}

  // False if either factor is undefined.
  bool add(GrassmannElement& acc, CoordRef x, CoordRef y, int sign = 1) {
    if (x.sign == 0 || y.sign == 0) return true;
    if (!x.value || !y.value) return false;
    auto [it, fresh] = cache_.try_emplace({x.value, y.value}, g_);
    if (fresh) it->second = *x.value * *y.value;
    if (sign * x.sign * y.sign > 0) {
      acc += it->second;
    } else {
      acc -= it->second;
    }
    return true;
  }

private:
  unsigned g_;
  std::map<std::pair<const GrassmannElement*, const GrassmannElement*>, GrassmannElement> cache_;
};

}  // namespace

RelationReport check_relations_r1_n1(const ReducedCoordsR1& c, TupleRange range) {
  const std::size_t r = c.r, n = c.n;
  const unsigned g = c.generators;
  RelationReport rep;
  ProductCache cache(g);
  Tuple x(r), y(r);
  const bool all = range == TupleRange::All;
  auto antisymmetric_group = [&](auto&& f) {
    if (all) {
      for_each_tuple(n, r, f);
    } else {
      for_each_combination(n, r, f);
    }
  };

  for_each_tuple(n, r, [&](const Tuple& a) {
    antisymmetric_group([&](const Tuple& b) {
      Tuple idx = a;
      idx.insert(idx.end(), b.begin(), b.end());
      GrassmannElement lhs(g), rhs(g);
      bool ok = cache.add(rhs, p_ref(c, a), p_ref(c, b));
      for (std::size_t i = 0; i < r && ok; ++i) {
        x = a;
        x[0] = b[i];
        y = b;
        y[i] = a[0];
        ok = cache.add(lhs, p_ref(c, x), p_ref(c, y));
      }
      if (!ok) return rep.skip("r1_even", std::move(idx));
      rep.record("r1_even", std::move(idx), std::move(lhs), std::move(rhs));
    });
  });

  antisymmetric_group([&](const Tuple& a) {
    antisymmetric_group([&](const Tuple& b) {
      for (std::size_t cc = 0; cc < n; ++cc) {
        Tuple idx = a;
        idx.insert(idx.end(), b.begin(), b.end());
        idx.push_back(cc);
        GrassmannElement lhs(g), rhs(g);
        bool ok = cache.add(lhs, theta_ref(c, concat(a, {cc})), p_ref(c, b)) &&
                  cache.add(rhs, p_ref(c, a), theta_ref(c, concat(b, {cc})));
        for (std::size_t i = 0; i < r && ok; ++i) {
          y = b;
          y[i] = cc;
          ok = cache.add(lhs, theta_ref(c, concat(a, {b[i]})), p_ref(c, y), -1);
        }
        if (!ok) {
          rep.skip("r1_odd", std::move(idx));
          continue;
        }
        rep.record("r1_odd", std::move(idx), std::move(lhs), std::move(rhs));
      }
    });
  });

  if (r == 2) {
    auto P2 = [&](std::size_t i, std::size_t j) { return p_ref(c, Tuple{i, j}); };
    auto T3 = [&](std::size_t i, std::size_t j, std::size_t k) { return theta_ref(c, Tuple{i, j, k}); };
    for_each_tuple(n, 4, [&](const Tuple& t) {
      const auto a1 = t[0], a2 = t[1], b1 = t[2], b2 = t[3];
      GrassmannElement lhs(g), rhs(g);
      const bool ok = cache.add(lhs, P2(a1, b1), P2(a2, b2)) &&
                      cache.add(lhs, P2(a1, b2), P2(a2, b1), -1) &&
                      cache.add(rhs, P2(a1, a2), P2(b1, b2));
      if (!ok) return rep.skip("r2_det_even", t);
      rep.record("r2_det_even", t, std::move(lhs), std::move(rhs));
    });
    for_each_tuple(n, 5, [&](const Tuple& t) {
      const auto a1 = t[0], a2 = t[1], b1 = t[2], b2 = t[3], cc = t[4];
      GrassmannElement lhs(g), rhs(g);
      const bool ok = cache.add(lhs, T3(a1, a2, b1), P2(cc, b2), -1) &&
                      cache.add(lhs, T3(a1, a2, b2), P2(b1, cc), -1) &&
                      cache.add(lhs, T3(a1, a2, cc), P2(b1, b2)) &&
                      cache.add(rhs, T3(b1, b2, cc), P2(a1, a2));
      if (!ok) return rep.skip("r2_four_term_odd", t);
      rep.record("r2_four_term_odd", t, std::move(lhs), std::move(rhs));
    });
  }
  return rep;
}

RelationReport check_theta_antisymmetry(const PlaneRep& u, const ReducedCoordsR1& c) {
  RelationReport rep;
  for (const auto& [key, value] : c.theta) {
    for (std::size_t k = 0; k + 1 < key.size(); ++k) {
      Tuple swapped = key;
      std::swap(swapped[k], swapped[k + 1]);
      try {
        rep.record("theta_antisymmetry", swapped, theta_from_berezinians(u, swapped), -value);
      } catch (const NotInvertibleError&) {
        rep.skip("theta_antisymmetry", swapped);
      }
    }
  }
  return rep;
}

RelationReport scaling_covariance(const PlaneRep& u, const SuperMatrix& g) {
  const ReducedCoordsR1 before = reduced_coords_r1_n1(u);
  const ReducedCoordsR1 after = reduced_coords_r1_n1(u.transformed(g));
  const GrassmannElement bg = ber(g);
  RelationReport rep;
  for (const auto& [key, value] : before.p) {
    auto it = after.p.find(key);
    if (it == after.p.end()) {
      rep.skip("covariance_P", key);
      continue;
    }
    rep.record("covariance_P", key, it->second, bg * value);
  }
  for (const auto& [key, value] : before.theta) {
    auto it = after.theta.find(key);
    if (it == after.theta.end()) {
      rep.skip("covariance_theta", key);
      continue;
    }
    rep.record("covariance_theta", key, it->second, bg * value);
  }
  return rep;
}

}  // namespace superpluecker
