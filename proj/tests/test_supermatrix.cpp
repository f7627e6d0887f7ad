#include <gtest/gtest.h>

#include <numeric>

#include "superpluecker/error.hpp"
#include "superpluecker/supermatrix.hpp"

using namespace superpluecker;

namespace {

constexpr unsigned N = 6;
const Parity E = Parity::Even;
const Parity O = Parity::Odd;

GrassmannElement th(unsigned k) { return GrassmannElement::generator(N, k); }
GrassmannElement c(const Rational& q) { return GrassmannElement(N, q); }

Matrix mat(std::size_t r, std::size_t cl, std::vector<GrassmannElement> v) {
  Matrix m(r, cl, N);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cl; ++j) m(i, j) = v[i * cl + j];
  }
  return m;
}

std::vector<Parity> standard(std::size_t p, std::size_t q) {
  std::vector<Parity> v(p, E);
  v.insert(v.end(), q, O);
  return v;
}

SuperMatrix random_even(Rng& rng, std::size_t p, std::size_t q) {
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  for (;;) {
    GeneratorPool pool(N);
    auto m = sample_supermatrix(rng, pool, profile, standard(p, q), standard(p, q));
    const auto b = blocks(m);
    if (is_invertible(det(b.a00)) && is_invertible(det(b.a11))) return m;
  }
}

}  // namespace

TEST(SuperMatrix, ParityInvariantEnforced) {
  EXPECT_NO_THROW(SuperMatrix({E, O}, {E, O}, mat(2, 2, {c(1), th(1), th(2), c(1)})));
  EXPECT_THROW(SuperMatrix({E, O}, {E, O}, mat(2, 2, {th(1), th(1), th(2), c(1)})), Error);
  // Wrong even row: holds an odd vector.
  EXPECT_NO_THROW(SuperMatrix({E, O}, {E, O}, mat(2, 2, {th(1), c(2), th(1), c(2)}), {0}, {}));
}

TEST(SuperMatrix, PermutationSigns) {
  const SuperMatrix m({E, E, O, O}, {E, E, O, O},
                      mat(4, 4, {c(1), c(2), th(1), th(2), c(3), c(4), th(3), th(4), th(5), th(6),
                                 c(5), c(6), th(1), th(3), c(7), c(8)}));
  std::vector<std::size_t> id{0, 1, 2, 3}, swap_even{1, 0, 2, 3}, swap_odd{0, 1, 3, 2};
  EXPECT_EQ(permute_rows(m, id).sign, 1);
  EXPECT_EQ(permute_rows(m, swap_even).sign, -1);
  EXPECT_EQ(permute_cols(m, swap_odd).sign, -1);
  EXPECT_EQ(ber(permute_rows(m, swap_even).matrix), -ber(m));
  EXPECT_EQ(ber(permute_cols(m, swap_odd).matrix), -ber(m));
}

TEST(SuperMatrix, ToStandardFormat) {
  const SuperMatrix s({E, O}, {E, O}, mat(2, 2, {c(2), th(1), th(2), c(3)}));
  const auto same = to_standard_format(s);
  EXPECT_EQ(same.sign, 1);
  EXPECT_EQ(same.matrix, s);
  const SuperMatrix odd_first({O, E}, {E, O}, mat(2, 2, {th(2), c(3), c(2), th(1)}));
  const auto fixed = to_standard_format(odd_first);
  EXPECT_EQ(fixed.sign, -1);
  EXPECT_EQ(fixed.matrix, s);
}

TEST(SuperMatrix, ShuffledBerAfterSignCorrection) {
  Rng rng(3);
  const auto m = random_even(rng, 2, 1);
  // Rows and columns in the order (odd, even, even).
  const std::vector<std::size_t> order{2, 0, 1};
  std::vector<Parity> labels;
  for (auto k : order) labels.push_back(m.row_parities()[k]);
  Matrix e(3, 3, N);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) e(i, j) = m(order[i], order[j]);
  }
  const SuperMatrix shuffled(labels, labels, e);
  const auto st = to_standard_format(shuffled);
  EXPECT_EQ(st.matrix, m);
  EXPECT_EQ(st.sign, 1);  // the same permutation on rows and columns
  EXPECT_EQ(ber(shuffled), ber(m));
  // Rows only: one sign.
  Matrix r(3, 3, N);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(order[i], j);
  }
  const SuperMatrix rows_only(labels, m.col_parities(), r);
  const auto rs = to_standard_format(rows_only);
  EXPECT_EQ(rs.sign, 1);  // a 3-cycle is even
  EXPECT_EQ(ber(rows_only), ber(m) * Rational(rs.sign));
}

TEST(SuperMatrix, Inverse) {
  EXPECT_EQ(inverse(SuperMatrix::identity(2, 1, N)), SuperMatrix::identity(2, 1, N));
  const SuperMatrix d({E, E}, {E, E}, mat(2, 2, {c(2), c(0), c(0), c(3)}));
  EXPECT_EQ(inverse(d).entries(), mat(2, 2, {c(Rational(1, 2)), c(0), c(0), c(Rational(1, 3))}));
  const auto n = th(1) * th(2);
  const SuperMatrix u({E, E}, {E, E}, mat(2, 2, {c(1), n, c(0), c(1)}));
  EXPECT_EQ(inverse(u).entries(), mat(2, 2, {c(1), -n, c(0), c(1)}));
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_even(rng, 2, 2);
    EXPECT_EQ(multiply(m, inverse(m)), SuperMatrix::identity(2, 2, N));
  }
}

TEST(SuperMatrix, BerExamples) {
  for (std::size_t p = 0; p <= 3; ++p) {
    for (std::size_t q = 0; q <= 2; ++q) EXPECT_EQ(ber(SuperMatrix::identity(p, q, N)), c(1));
  }
  const auto a = c(2) + th(1) * th(2);
  const auto d = c(3) + th(3) * th(4);
  const auto beta = th(5) + th(1) * Rational(2);
  const auto gamma = th(6);
  const SuperMatrix m({E, O}, {E, O}, mat(2, 2, {a, beta, gamma, d}));
  const auto di = invert(d);
  EXPECT_EQ(ber(m), a * di - beta * gamma * di * di);
  EXPECT_EQ(ber_star(m), invert(ber(m)));
}

TEST(SuperMatrix, WrongOneOneExampleVanishes) {
  const auto xi = th(1) + th(2) * Rational(3);
  const auto x = c(2) + th(3) * th(4);
  const SuperMatrix a({E, O}, {E, O}, mat(2, 2, {xi, x, xi, x}), {0}, {});
  EXPECT_TRUE(ber(a).is_zero());
}

TEST(SuperMatrix, ParityReverse) {
  Rng rng(4);
  const auto m = random_even(rng, 2, 1);
  const auto r = parity_reverse(m);
  EXPECT_EQ(r.row_parities(), (std::vector<Parity>{O, O, E}));
  EXPECT_EQ(r.entries(), m.entries());
  EXPECT_EQ(parity_reverse(r), m);
  EXPECT_EQ(ber(r), ber_star(m));
  EXPECT_EQ(ber_star(SuperMatrix::identity(2, 2, N)), c(1));
}

TEST(SuperMatrix, DetForgetful) {
  EXPECT_EQ(det_forgetful(SuperMatrix::identity(2, 1, N)), c(1));
  EXPECT_EQ(det_forgetful(SuperMatrix({E, E}, {E, E}, mat(2, 2, {c(1), c(2), c(3), c(4)}))), c(-2));
  const auto a = c(2) + th(5) * th(6);
  const auto u = th(1);
  const auto lambda = th(2) + th(3);
  const auto v = c(5);
  const SuperMatrix m({E, O}, {E, O}, mat(2, 2, {a, u, lambda, v}));
  EXPECT_EQ(det_forgetful(m), a * v - u * lambda);
  EXPECT_EQ(det_forgetful(m, FactorOrder::RowDescending), v * a - lambda * u);
}

TEST(SuperMatrix, WrongIdentityOnRandomSamples) {
  SampleProfile profile;
  for (std::size_t r : {2, 3}) {
    int tested = 0;
    for (std::uint64_t s = 0; tested < 20; ++s) {
      Rng rng(derive_seed(r, s));
      GeneratorPool pool(r + 5);
      const auto a = sample_supermatrix(rng, pool, profile, standard(r, 1), standard(r, 1), {}, {r});
      if (!is_invertible(det(blocks(a).a00))) continue;
      ++tested;
      const auto chk = check_wrong_identity_r1(a);
      EXPECT_EQ(chk.identity, WrongIdentity::BerStarOddColumn);
      EXPECT_TRUE(chk.equal) << chk.lhs.to_string() << " vs " << chk.rhs.to_string();
    }
  }
}

TEST(SuperMatrix, WrongIdentityNeedsInvertibleBlock) {
  // 1|1 with an even vector in the odd column and A00 = theta1 theta2 (zero body).
  const SuperMatrix a({E, O}, {E, O}, mat(2, 2, {th(1) * th(2), c(1), th(3), th(4)}), {}, {1});
  EXPECT_THROW(check_wrong_identity_r1(a), NotInvertibleError);
}

TEST(SuperMatrix, ElementaryOperations) {
  Rng rng(12);
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  for (int t = 0; t < 20; ++t) {
    const auto m = random_even(rng, 2, 2);
    GeneratorPool pool(N);
    const auto even = sample_even(rng, pool, profile);
    const auto odd = sample_odd(rng, pool, profile);
    EXPECT_EQ(ber(add_row_multiple(m, 0, 1, even)), ber(m));
    EXPECT_EQ(ber(add_row_multiple(m, 0, 2, odd)), ber(m));
    EXPECT_EQ(ber(add_row_multiple(m, 3, 1, odd)), ber(m));
    EXPECT_EQ(ber(add_col_multiple(m, 2, 0, odd)), ber(m));
    EXPECT_EQ(ber(add_col_multiple(m, 3, 2, even)), ber(m));
  }
}

TEST(SuperMatrix, ElementaryOperationsOnWrongMatrix) {
  // 2|1 with an odd vector in even row 0; Ber is defined.
  const auto x = c(3) + th(5) * th(6);
  const SuperMatrix a({E, E, O}, {E, E, O},
                      mat(3, 3, {th(1), th(2), c(2), c(1), c(4), th(3), th(4), th(1), x}), {0}, {});
  const auto b0 = ber(a);
  EXPECT_EQ(ber(add_row_multiple(a, 0, 1, th(6))), b0);
  EXPECT_EQ(ber(add_row_multiple(a, 0, 2, c(7))), b0);
  EXPECT_THROW(add_row_multiple(a, 1, 0, th(6)), DomainError);
}

TEST(SuperMatrix, Homogeneity) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_even(rng, 2, 1);
    const auto s = c(Rational(3, 2)) + th(1) * th(4);
    EXPECT_EQ(ber(scale_row(m, 0, s)), s * ber(m));
    EXPECT_EQ(ber(scale_row(m, 2, s)), invert(s) * ber(m));
    EXPECT_EQ(ber(scale_col(m, 1, s)), s * ber(m));
    EXPECT_EQ(ber(scale_col(m, 2, s)), invert(s) * ber(m));
  }
}

TEST(SuperMatrix, Multiplicativity) {
  Rng rng(6);
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      const auto m = random_even(rng, p, q);
      const auto n = random_even(rng, p, q);
      EXPECT_EQ(ber(multiply(m, n)), ber(m) * ber(n));
    }
  }
}
