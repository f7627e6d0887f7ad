#include "superpluecker/matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "superpluecker/error.hpp"

namespace superpluecker {

Matrix::Matrix(std::size_t rows, std::size_t cols, unsigned generators)
    : rows_(rows), cols_(cols), n_(generators), data_(rows * cols, GrassmannElement(generators)) {}

Matrix Matrix::identity(std::size_t n, unsigned generators) {
  Matrix m(n, n, generators);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GrassmannElement(generators, 1);
  return m;
}

Matrix Matrix::submatrix(std::span<const std::size_t> rows,
                         std::span<const std::size_t> cols) const {
  Matrix s(rows.size(), cols.size(), n_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] >= rows_ || cols[j] >= cols_) throw ShapeError("submatrix index out of range");
      s(i, j) = (*this)(rows[i], cols[j]);
    }
  }
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
  if (a.n_ != b.n_) throw ShapeError("matrix product: generator counts differ");
  Matrix c(a.rows_, b.cols_, a.n_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      GrassmannElement sum(a.n_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        sum += a(i, k) * b(k, j);
      }
      c(i, j) = std::move(sum);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum: shapes differ");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference: shapes differ");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

int permutation_sign(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      if (perm[j] >= perm.size()) throw ShapeError("not a permutation");
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

namespace {

GrassmannElement det_rec(Matrix m) {
  const std::size_t n = m.rows();
  const unsigned g = m.generator_count();
  GrassmannElement acc(g, 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i) {
      if (is_invertible(m(i, k)) && is_even(m(i, k))) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      // No invertible pivot: expand the trailing block along column k.
      std::vector<std::size_t> cols;
      for (std::size_t j = k + 1; j < n; ++j) cols.push_back(j);
      GrassmannElement sum(g);
      for (std::size_t i = k; i < n; ++i) {
        if (m(i, k).is_zero()) continue;
        std::vector<std::size_t> rows;
        for (std::size_t r = k; r < n; ++r) {
          if (r != i) rows.push_back(r);
        }
        GrassmannElement term = m(i, k) * det_rec(m.submatrix(rows, cols));
        if ((i - k) % 2 == 1) term = -term;
        sum += term;
      }
      return acc * sum;
    }
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(m(pivot, j), m(k, j));
      acc = -acc;
    }
    const GrassmannElement inv = invert(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      const GrassmannElement f = m(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
      }
      m(i, k) = GrassmannElement(g);
    }
    acc *= m(k, k);
  }
  return acc;
}

// Division-free expansion over column subsets: minor[S] is the determinant of
// the trailing |S| rows restricted to the columns in S. Every term has at most
// one odd factor, so factor order does not matter.
constexpr std::size_t kExpansionLimit = 8;

GrassmannElement det_expand(const Matrix& m) {
  const std::size_t n = m.rows();
  const unsigned g = m.generator_count();
  if (n == 0) return GrassmannElement(g, 1);
  std::vector<GrassmannElement> minor(std::size_t{1} << n, GrassmannElement(g));
  minor[0] = GrassmannElement(g, 1);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t size = n - k;
    for (std::size_t s = 1; s < minor.size(); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) != size) continue;
      GrassmannElement sum(g);
      int pos = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(s >> j & 1)) continue;
        const auto& rest = minor[s & ~(std::size_t{1} << j)];
        if (!m(k, j).is_zero() && !rest.is_zero()) {
          if (pos % 2 == 0) {
            sum += m(k, j) * rest;
          } else {
            sum -= m(k, j) * rest;
          }
        }
        ++pos;
      }
      minor[s] = std::move(sum);
    }
  }
  return minor.back();
}

}  // namespace

GrassmannElement det(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("det: matrix is not square");
  if (m.rows() <= kExpansionLimit) return det_expand(m);
  return det_rec(m);
}

GrassmannElement det_leibniz(const Matrix& m, FactorOrder order) {
  if (m.rows() != m.cols()) throw ShapeError("det_leibniz: matrix is not square");
  const std::size_t n = m.rows();
  const unsigned g = m.generator_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GrassmannElement sum(g);
  do {
    GrassmannElement term(g, 1);
    bool zero = false;
    for (std::size_t step = 0; step < n && !zero; ++step) {
      const std::size_t row = order == FactorOrder::RowAscending ? step : n - 1 - step;
      const auto& e = m(row, perm[row]);
      if (e.is_zero()) {
        zero = true;
      } else {
        term *= e;
      }
    }
    if (zero) continue;
    if (permutation_sign(perm) < 0) term = -term;
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Matrix adjugate(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("adjugate: matrix is not square");
  const std::size_t n = m.rows();
  Matrix adj(n, n, m.generator_count());
  if (n == 1) {
    adj(0, 0) = GrassmannElement(m.generator_count(), 1);
    return adj;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows.clear();
      cols.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      GrassmannElement c = det(m.submatrix(rows, cols));
      adj(i, j) = (i + j) % 2 == 1 ? -c : std::move(c);
    }
  }
  return adj;
}

Matrix inverse_even(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse_even: matrix is not square");
  const GrassmannElement d = det(m);
  if (!is_invertible(d)) throw NotInvertibleError("inverse_even: singular body matrix");
  // Adjugate over a single inversion: intermediate elements stay polynomial.
  const GrassmannElement dinv = invert(d);
  Matrix inv = adjugate(m);
  for (std::size_t i = 0; i < inv.rows(); ++i) {
    for (std::size_t j = 0; j < inv.cols(); ++j) inv(i, j) = inv(i, j) * dinv;
  }
  return inv;
}

}  // namespace superpluecker
