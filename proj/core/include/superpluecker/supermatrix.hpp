#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "superpluecker/grassmann.hpp"
#include "superpluecker/matrix.hpp"
#include "superpluecker/sampling.hpp"

namespace superpluecker {

/// Parity-labeled matrix over Lambda_N.
///
/// Entry (i, j) is homogeneous of parity row(i) + col(j), plus one for every
/// "wrong" row or column it lies in. A wrong row/column holds a vector of the
/// opposite parity to its label. Construction validates this invariant.
class SuperMatrix {
public:
  SuperMatrix() = default;
  SuperMatrix(std::vector<Parity> row_parities, std::vector<Parity> col_parities, Matrix entries,
              std::vector<std::size_t> wrong_rows = {}, std::vector<std::size_t> wrong_cols = {});

  /// Zero matrix with the given labels (no wrong vectors).
  static SuperMatrix zero(std::vector<Parity> row_parities, std::vector<Parity> col_parities,
                          unsigned generators);
  /// Identity in standard format p|q.
  static SuperMatrix identity(std::size_t even, std::size_t odd, unsigned generators);

  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }
  unsigned generator_count() const { return entries_.generator_count(); }

  const std::vector<Parity>& row_parities() const { return row_par_; }
  const std::vector<Parity>& col_parities() const { return col_par_; }
  const std::vector<std::size_t>& wrong_rows() const { return wrong_rows_; }
  const std::vector<std::size_t>& wrong_cols() const { return wrong_cols_; }
  bool is_wrong() const { return !wrong_rows_.empty() || !wrong_cols_.empty(); }
  bool is_wrong_row(std::size_t i) const;
  bool is_wrong_col(std::size_t j) const;

  /// Parity the entries of row i actually carry (label flipped if wrong).
  Parity effective_row_parity(std::size_t i) const;
  Parity effective_col_parity(std::size_t j) const;
  /// Required parity of entry (i, j).
  Parity entry_parity(std::size_t i, std::size_t j) const;

  const Matrix& entries() const { return entries_; }
  const GrassmannElement& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// Copy with entry (i, j) replaced; the parity invariant is re-checked.
  SuperMatrix with_entry(std::size_t i, std::size_t j, GrassmannElement value) const;

  std::size_t even_rows() const;
  std::size_t even_cols() const;
  bool is_standard_format() const;
  /// Same number of even rows as even columns and of odd rows as odd columns.
  bool is_super_square() const;

  bool operator==(const SuperMatrix& other) const = default;

private:
  void validate() const;

  std::vector<Parity> row_par_;
  std::vector<Parity> col_par_;
  Matrix entries_;
  std::vector<std::size_t> wrong_rows_;
  std::vector<std::size_t> wrong_cols_;
};

/// Label-respecting product; M's wrong rows and N's wrong columns carry over.
SuperMatrix multiply(const SuperMatrix& m, const SuperMatrix& n);

/// Columns/rows of a supermatrix selected in the given order, labels and wrong
/// flags carried along.
SuperMatrix select(const SuperMatrix& m, std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols);

struct Permuted {
  SuperMatrix matrix;
  int sign;  ///< sign of the permutation, to be applied to Ber / Ber*
};

/// Row i of the result is row perm[i] of M. Allowed: permutations within parity
/// groups (label sequence unchanged) and permutations producing standard format.
Permuted permute_rows(const SuperMatrix& m, std::span<const std::size_t> perm);
Permuted permute_cols(const SuperMatrix& m, std::span<const std::size_t> perm);

/// Stable move of even rows/cols to the front; sign = product of both permutation signs.
Permuted to_standard_format(const SuperMatrix& m);

struct BlockDecomposition {
  Matrix a00, a01, a10, a11;
};
/// Blocks of a matrix already in standard format.
BlockDecomposition blocks(const SuperMatrix& m);

/// Inverse of an even invertible supermatrix, by Gauss-Jordan with left
/// multiplication and body-invertible pivots.
SuperMatrix inverse(const SuperMatrix& m);

/// Berezinian det(A00 - A01 A11^{-1} A10) / det(A11), after standardizing with
/// sign tracking. Accepts even matrices and wrong matrices whose single flipped
/// vector sits in an even row or column.
GrassmannElement ber(const SuperMatrix& m);

/// Inverse Berezinian det(A11 - A10 A00^{-1} A01) / det(A00). Accepts even
/// matrices and wrong matrices whose flipped vector sits in an odd row or column.
GrassmannElement ber_star(const SuperMatrix& m);

/// All labels flipped, entries untouched.
SuperMatrix parity_reverse(const SuperMatrix& m);

/// Determinant ignoring parity labels, Leibniz expansion.
GrassmannElement det_forgetful(const SuperMatrix& m,
                               FactorOrder order = FactorOrder::RowAscending);

/// row(target) += factor * row(source). For wrong matrices the source row must
/// be a correct one; adding a multiple of the wrong vector is rejected.
SuperMatrix add_row_multiple(const SuperMatrix& m, std::size_t target, std::size_t source,
                             const GrassmannElement& factor);
/// col(target) += col(source) * factor, with the same direction rule.
SuperMatrix add_col_multiple(const SuperMatrix& m, std::size_t target, std::size_t source,
                             const GrassmannElement& factor);

/// Left-multiplies row i by an even element.
SuperMatrix scale_row(const SuperMatrix& m, std::size_t i, const GrassmannElement& t);
/// Right-multiplies column j by an even element.
SuperMatrix scale_col(const SuperMatrix& m, std::size_t j, const GrassmannElement& t);

/// Random supermatrix with the given labels and wrong vectors; every entry is
/// drawn with the parity the labels require. No invertibility is enforced.
SuperMatrix sample_supermatrix(Rng& rng, GeneratorPool& pool, const SampleProfile& profile,
                               const std::vector<Parity>& row_parities,
                               const std::vector<Parity>& col_parities,
                               std::vector<std::size_t> wrong_rows = {},
                               std::vector<std::size_t> wrong_cols = {});

/// Which identity a wrong-matrix check exercised.
enum class WrongIdentity {
  BerStarOddColumn,  ///< r|1, even vector in the odd column: Ber* A = det A / det^2 A00
  BerEvenColumn,     ///< 1|r, odd vector in the even column: Ber B = det B / det^2 B11
};

struct WrongIdentityCheck {
  WrongIdentity identity;
  GrassmannElement lhs;
  GrassmannElement rhs;
  bool equal;
};

/// Evaluates both sides of the r|1 (or 1|r) wrong-matrix determinant identity.
WrongIdentityCheck check_wrong_identity_r1(const SuperMatrix& a);

}  // namespace superpluecker
