#include "superpluecker/supermatrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "superpluecker/error.hpp"

namespace superpluecker {

namespace {

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Matrix scaled(Matrix m, const GrassmannElement& x) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * x;
  }
  return m;
}

std::string pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

SuperMatrix::SuperMatrix(std::vector<Parity> row_parities, std::vector<Parity> col_parities,
                         Matrix entries, std::vector<std::size_t> wrong_rows,
                         std::vector<std::size_t> wrong_cols)
    : row_par_(std::move(row_parities)),
      col_par_(std::move(col_parities)),
      entries_(std::move(entries)),
      wrong_rows_(sorted_unique(std::move(wrong_rows))),
      wrong_cols_(sorted_unique(std::move(wrong_cols))) {
  validate();
}

SuperMatrix SuperMatrix::zero(std::vector<Parity> row_parities, std::vector<Parity> col_parities,
                              unsigned generators) {
  Matrix m(row_parities.size(), col_parities.size(), generators);
  return SuperMatrix(std::move(row_parities), std::move(col_parities), std::move(m));
}

SuperMatrix SuperMatrix::identity(std::size_t even, std::size_t odd, unsigned generators) {
  std::vector<Parity> labels(even, Parity::Even);
  labels.insert(labels.end(), odd, Parity::Odd);
  return SuperMatrix(labels, labels, Matrix::identity(even + odd, generators));
}

void SuperMatrix::validate() const {
  if (row_par_.size() != entries_.rows() || col_par_.size() != entries_.cols()) {
    throw ShapeError("parity labels do not match matrix shape");
  }
  for (auto i : wrong_rows_) {
    if (i >= rows()) throw ShapeError("wrong row index out of range");
  }
  for (auto j : wrong_cols_) {
    if (j >= cols()) throw ShapeError("wrong column index out of range");
  }
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      if (!has_parity(entries_(i, j), entry_parity(i, j))) {
        throw DomainError("entry " + pos(i, j) + " is not " + to_string(entry_parity(i, j)));
      }
    }
  }
}

bool SuperMatrix::is_wrong_row(std::size_t i) const { return contains(wrong_rows_, i); }
bool SuperMatrix::is_wrong_col(std::size_t j) const { return contains(wrong_cols_, j); }

Parity SuperMatrix::effective_row_parity(std::size_t i) const {
  return is_wrong_row(i) ? flip(row_par_[i]) : row_par_[i];
}

Parity SuperMatrix::effective_col_parity(std::size_t j) const {
  return is_wrong_col(j) ? flip(col_par_[j]) : col_par_[j];
}

Parity SuperMatrix::entry_parity(std::size_t i, std::size_t j) const {
  return effective_row_parity(i) + effective_col_parity(j);
}

SuperMatrix SuperMatrix::with_entry(std::size_t i, std::size_t j, GrassmannElement value) const {
  Matrix e = entries_;
  e(i, j) = std::move(value);
  return SuperMatrix(row_par_, col_par_, std::move(e), wrong_rows_, wrong_cols_);
}

std::size_t SuperMatrix::even_rows() const {
  return static_cast<std::size_t>(std::count(row_par_.begin(), row_par_.end(), Parity::Even));
}

std::size_t SuperMatrix::even_cols() const {
  return static_cast<std::size_t>(std::count(col_par_.begin(), col_par_.end(), Parity::Even));
}

bool SuperMatrix::is_standard_format() const {
  auto standard = [](const std::vector<Parity>& v) {
    return std::is_partitioned(v.begin(), v.end(), [](Parity p) { return p == Parity::Even; });
  };
  return standard(row_par_) && standard(col_par_);
}

bool SuperMatrix::is_super_square() const {
  return rows() == cols() && even_rows() == even_cols();
}

SuperMatrix multiply(const SuperMatrix& m, const SuperMatrix& n) {
  if (m.cols() != n.rows()) throw ShapeError("multiply: inner dimensions differ");
  for (std::size_t k = 0; k < m.cols(); ++k) {
    if (m.effective_col_parity(k) != n.effective_row_parity(k)) {
      throw ShapeError("multiply: inner parities differ at index " + std::to_string(k));
    }
  }
  return SuperMatrix(m.row_parities(), n.col_parities(), m.entries() * n.entries(), m.wrong_rows(),
                     n.wrong_cols());
}

SuperMatrix select(const SuperMatrix& m, std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols) {
  std::vector<Parity> rp, cp;
  std::vector<std::size_t> wr, wc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rp.push_back(m.row_parities().at(rows[i]));
    if (m.is_wrong_row(rows[i])) wr.push_back(i);
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    cp.push_back(m.col_parities().at(cols[j]));
    if (m.is_wrong_col(cols[j])) wc.push_back(j);
  }
  return SuperMatrix(std::move(rp), std::move(cp), m.entries().submatrix(rows, cols),
                     std::move(wr), std::move(wc));
}

namespace {

bool is_permutation_of_range(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

bool labels_standard(const std::vector<Parity>& v) {
  return std::is_partitioned(v.begin(), v.end(), [](Parity p) { return p == Parity::Even; });
}

template <bool Rows>
Permuted permute_impl(const SuperMatrix& m, std::span<const std::size_t> perm) {
  const std::size_t n = Rows ? m.rows() : m.cols();
  if (!is_permutation_of_range(perm, n)) throw ShapeError("permute: not a permutation");
  const auto& old_labels = Rows ? m.row_parities() : m.col_parities();
  std::vector<Parity> labels(n);
  std::vector<std::size_t> wrong;
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = old_labels[perm[i]];
    if (Rows ? m.is_wrong_row(perm[i]) : m.is_wrong_col(perm[i])) wrong.push_back(i);
  }
  if (labels != old_labels && !labels_standard(labels)) {
    throw DomainError("permute: permutation mixes parity groups without reaching standard format");
  }
  std::vector<std::size_t> all_rows(m.rows()), all_cols(m.cols());
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  Matrix e = Rows ? m.entries().submatrix(perm, all_cols) : m.entries().submatrix(all_rows, perm);
  const int sign = permutation_sign(perm);
  if constexpr (Rows) {
    return {SuperMatrix(std::move(labels), m.col_parities(), std::move(e), std::move(wrong),
                        m.wrong_cols()),
            sign};
  } else {
    return {SuperMatrix(m.row_parities(), std::move(labels), std::move(e), m.wrong_rows(),
                        std::move(wrong)),
            sign};
  }
}

std::vector<std::size_t> standard_order(const std::vector<Parity>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(),
                        [&](std::size_t i) { return labels[i] == Parity::Even; });
  return order;
}

}  // namespace

Permuted permute_rows(const SuperMatrix& m, std::span<const std::size_t> perm) {
  return permute_impl<true>(m, perm);
}

Permuted permute_cols(const SuperMatrix& m, std::span<const std::size_t> perm) {
  return permute_impl<false>(m, perm);
}

Permuted to_standard_format(const SuperMatrix& m) {
  const auto row_order = standard_order(m.row_parities());
  const auto col_order = standard_order(m.col_parities());
  auto by_rows = permute_rows(m, row_order);
  auto by_cols = permute_cols(by_rows.matrix, col_order);
  return {std::move(by_cols.matrix), by_rows.sign * by_cols.sign};
}

BlockDecomposition blocks(const SuperMatrix& m) {
  if (!m.is_standard_format()) throw DomainError("blocks: matrix is not in standard format");
  const std::size_t p = m.even_rows();
  const std::size_t q = m.even_cols();
  std::vector<std::size_t> r0(p), r1(m.rows() - p), c0(q), c1(m.cols() - q);
  std::iota(r0.begin(), r0.end(), 0);
  std::iota(r1.begin(), r1.end(), p);
  std::iota(c0.begin(), c0.end(), 0);
  std::iota(c1.begin(), c1.end(), q);
  const auto& e = m.entries();
  return {e.submatrix(r0, c0), e.submatrix(r0, c1), e.submatrix(r1, c0), e.submatrix(r1, c1)};
}

SuperMatrix inverse(const SuperMatrix& m) {
  if (!m.is_super_square()) throw ShapeError("inverse: matrix is not super-square");
  if (m.is_wrong()) throw DomainError("inverse: wrong matrices are not invertible");
  const std::size_t n = m.rows();
  const unsigned g = m.generator_count();
  Matrix a = m.entries();
  Matrix e = Matrix::identity(n, g);
  std::vector<std::size_t> pivot_of(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && m.row_parities()[i] == m.col_parities()[k] && is_invertible(a(i, k))) {
        p = i;
        break;
      }
    }
    if (p == n) throw NotInvertibleError("inverse: no body-invertible pivot in column " +
                                         std::to_string(k));
    used[p] = true;
    pivot_of[k] = p;
    const GrassmannElement inv = invert(a(p, k));
    for (std::size_t j = 0; j < n; ++j) {
      a(p, j) = inv * a(p, j);
      e(p, j) = inv * e(p, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || a(i, k).is_zero()) continue;
      const GrassmannElement f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(p, j).is_zero()) a(i, j) -= f * a(p, j);
        if (!e(p, j).is_zero()) e(i, j) -= f * e(p, j);
      }
    }
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  return SuperMatrix(m.col_parities(), m.row_parities(), e.submatrix(pivot_of, all));
}

namespace {

/// Label of the single wrong vector, if any; rejects more than one.
std::optional<Parity> wrong_label(const SuperMatrix& m, const char* op) {
  const std::size_t count = m.wrong_rows().size() + m.wrong_cols().size();
  if (count > 1) throw DomainError(std::string(op) + ": more than one wrong vector");
  if (count == 0) return std::nullopt;
  if (!m.wrong_rows().empty()) return m.row_parities()[m.wrong_rows().front()];
  return m.col_parities()[m.wrong_cols().front()];
}

}  // namespace

GrassmannElement ber(const SuperMatrix& m) {
  if (!m.is_super_square()) throw ShapeError("ber: matrix is not super-square");
  if (auto label = wrong_label(m, "ber"); label && *label != Parity::Even) {
    throw DomainError("ber: the wrong vector must sit in an even row or column");
  }
  const auto [standard, sign] = to_standard_format(m);
  const auto b = blocks(standard);
  const GrassmannElement d11 = det(b.a11);
  if (!is_invertible(d11)) throw NotInvertibleError("ber: block A11 is not invertible");
  const GrassmannElement inv = invert(d11);
  const GrassmannElement schur = det(b.a00 - scaled(b.a01 * adjugate(b.a11) * b.a10, inv));
  GrassmannElement result = schur * inv;
  return sign < 0 ? -result : result;
}

GrassmannElement ber_star(const SuperMatrix& m) {
  if (!m.is_super_square()) throw ShapeError("ber_star: matrix is not super-square");
  if (auto label = wrong_label(m, "ber_star"); label && *label != Parity::Odd) {
    throw DomainError("ber_star: the wrong vector must sit in an odd row or column");
  }
  const auto [standard, sign] = to_standard_format(m);
  const auto b = blocks(standard);
  const GrassmannElement d00 = det(b.a00);
  if (!is_invertible(d00)) throw NotInvertibleError("ber_star: block A00 is not invertible");
  const GrassmannElement inv = invert(d00);
  const GrassmannElement schur = det(b.a11 - scaled(b.a10 * adjugate(b.a00) * b.a01, inv));
  GrassmannElement result = schur * inv;
  return sign < 0 ? -result : result;
}

SuperMatrix parity_reverse(const SuperMatrix& m) {
  std::vector<Parity> rp = m.row_parities();
  std::vector<Parity> cp = m.col_parities();
  for (auto& p : rp) p = flip(p);
  for (auto& p : cp) p = flip(p);
  return SuperMatrix(std::move(rp), std::move(cp), m.entries(), m.wrong_rows(), m.wrong_cols());
}

GrassmannElement det_forgetful(const SuperMatrix& m, FactorOrder order) {
  if (m.rows() != m.cols()) throw ShapeError("det_forgetful: matrix is not square");
  return det_leibniz(m.entries(), order);
}

SuperMatrix add_row_multiple(const SuperMatrix& m, std::size_t target, std::size_t source,
                             const GrassmannElement& factor) {
  if (target >= m.rows() || source >= m.rows()) throw ShapeError("add_row_multiple: bad row");
  if (target == source) throw DomainError("add_row_multiple: target equals source");
  if (m.is_wrong_row(source)) {
    throw DomainError("add_row_multiple: adding a multiple of the wrong vector is prohibited");
  }
  const Parity need = m.effective_row_parity(target) + m.effective_row_parity(source);
  if (!has_parity(factor, need)) {
    throw DomainError(std::string("add_row_multiple: factor must be ") + to_string(need));
  }
  Matrix e = m.entries();
  for (std::size_t j = 0; j < m.cols(); ++j) e(target, j) += factor * m(source, j);
  return SuperMatrix(m.row_parities(), m.col_parities(), std::move(e), m.wrong_rows(),
                     m.wrong_cols());
}

SuperMatrix add_col_multiple(const SuperMatrix& m, std::size_t target, std::size_t source,
                             const GrassmannElement& factor) {
  if (target >= m.cols() || source >= m.cols()) throw ShapeError("add_col_multiple: bad column");
  if (target == source) throw DomainError("add_col_multiple: target equals source");
  if (m.is_wrong_col(source)) {
    throw DomainError("add_col_multiple: adding a multiple of the wrong vector is prohibited");
  }
  const Parity need = m.effective_col_parity(target) + m.effective_col_parity(source);
  if (!has_parity(factor, need)) {
    throw DomainError(std::string("add_col_multiple: factor must be ") + to_string(need));
  }
  Matrix e = m.entries();
  for (std::size_t i = 0; i < m.rows(); ++i) e(i, target) += m(i, source) * factor;
  return SuperMatrix(m.row_parities(), m.col_parities(), std::move(e), m.wrong_rows(),
                     m.wrong_cols());
}

SuperMatrix scale_row(const SuperMatrix& m, std::size_t i, const GrassmannElement& t) {
  if (!is_even(t)) throw DomainError("scale_row: factor must be even");
  Matrix e = m.entries();
  for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = t * e(i, j);
  return SuperMatrix(m.row_parities(), m.col_parities(), std::move(e), m.wrong_rows(),
                     m.wrong_cols());
}

SuperMatrix scale_col(const SuperMatrix& m, std::size_t j, const GrassmannElement& t) {
  if (!is_even(t)) throw DomainError("scale_col: factor must be even");
  Matrix e = m.entries();
  for (std::size_t i = 0; i < m.rows(); ++i) e(i, j) = e(i, j) * t;
  return SuperMatrix(m.row_parities(), m.col_parities(), std::move(e), m.wrong_rows(),
                     m.wrong_cols());
}

SuperMatrix sample_supermatrix(Rng& rng, GeneratorPool& pool, const SampleProfile& profile,
                               const std::vector<Parity>& row_parities,
                               const std::vector<Parity>& col_parities,
                               std::vector<std::size_t> wrong_rows,
                               std::vector<std::size_t> wrong_cols) {
  const unsigned n = pool.generator_count();
  Matrix e(row_parities.size(), col_parities.size(), n);
  for (std::size_t i = 0; i < e.rows(); ++i) {
    Parity rp = row_parities[i];
    if (contains(wrong_rows, i)) rp = flip(rp);
    for (std::size_t j = 0; j < e.cols(); ++j) {
      Parity cp = col_parities[j];
      if (contains(wrong_cols, j)) cp = flip(cp);
      e(i, j) = sample_homogeneous(rng, pool, profile, rp + cp);
    }
  }
  return SuperMatrix(row_parities, col_parities, std::move(e), std::move(wrong_rows),
                     std::move(wrong_cols));
}

WrongIdentityCheck check_wrong_identity_r1(const SuperMatrix& a) {
  if (!a.is_super_square() || !a.is_standard_format()) {
    throw ShapeError("check_wrong_identity_r1: need a super-square matrix in standard format");
  }
  if (!a.wrong_rows().empty() || a.wrong_cols().size() != 1) {
    throw DomainError("check_wrong_identity_r1: need exactly one wrong column");
  }
  const std::size_t n = a.rows();
  const std::size_t even = a.even_rows();
  const std::size_t wrong = a.wrong_cols().front();
  const auto b = blocks(a);
  if (n - even == 1 && wrong == n - 1) {
    const GrassmannElement d00 = det(b.a00);
    if (!is_invertible(d00)) throw NotInvertibleError("check_wrong_identity_r1: det A00 has zero body");
    GrassmannElement lhs = ber_star(a);
    const GrassmannElement inv = invert(d00);
    GrassmannElement rhs = det_forgetful(a) * inv * inv;
    const bool equal = lhs == rhs;
    return {WrongIdentity::BerStarOddColumn, std::move(lhs), std::move(rhs), equal};
  }
  if (even == 1 && wrong == 0) {
    const GrassmannElement d11 = det(b.a11);
    if (!is_invertible(d11)) throw NotInvertibleError("check_wrong_identity_r1: det B11 has zero body");
    GrassmannElement lhs = ber(a);
    const GrassmannElement inv = invert(d11);
    GrassmannElement rhs = det_forgetful(a) * inv * inv;
    const bool equal = lhs == rhs;
    return {WrongIdentity::BerEvenColumn, std::move(lhs), std::move(rhs), equal};
  }
  throw DomainError("check_wrong_identity_r1: expected an r|1 matrix with the odd column wrong "
                    "or a 1|r matrix with the even column wrong");
}

}  // namespace superpluecker
