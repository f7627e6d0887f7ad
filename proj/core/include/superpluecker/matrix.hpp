#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "superpluecker/grassmann.hpp"

namespace superpluecker {

/// Dense row-major matrix over Lambda_N with no parity labels attached.
///
/// Products are formed left to right, (AB)_ij = sum_k A_ik B_kj, which is the
/// correct order for supermatrices whose entries do not all commute.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, unsigned generators);

  static Matrix identity(std::size_t n, unsigned generators);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned generator_count() const { return n_; }

  GrassmannElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GrassmannElement& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned n_ = 0;
  std::vector<GrassmannElement> data_;
};

/// Sign of a permutation given as the image list perm[i].
int permutation_sign(std::span<const std::size_t> perm);

/// Determinant of a square matrix whose expansion monomials never contain two
/// odd factors (all-even matrices, or one odd row or one odd column).
///
/// Gaussian elimination on body-invertible pivots; a column with no such pivot
/// falls back to cofactor expansion along that column.
GrassmannElement det(const Matrix& m);

/// Order in which the factors of a Leibniz monomial are multiplied.
enum class FactorOrder {
  RowAscending,   ///< m(1,s1) m(2,s2) ... m(n,sn)
  RowDescending,  ///< m(n,sn) ... m(1,s1)
};

/// Plain Leibniz expansion, ignoring parity labels. The factor order only
/// matters when a monomial has two or more odd factors.
GrassmannElement det_leibniz(const Matrix& m, FactorOrder order = FactorOrder::RowAscending);

/// Transposed cofactor matrix, adj(M) M = M adj(M) = det(M) for even entries.
Matrix adjugate(const Matrix& m);

/// Inverse of a square matrix with even (mutually commuting) entries.
/// Throws NotInvertibleError if the body matrix is singular.
Matrix inverse_even(const Matrix& m);

}  // namespace superpluecker
