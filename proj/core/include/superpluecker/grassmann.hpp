#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "superpluecker/rational.hpp"

namespace superpluecker {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline Parity flip(Parity p) { return p + Parity::Odd; }
inline int bit(Parity p) { return static_cast<int>(p); }

/// Result of classifying an element by the cardinalities of its monomials.
enum class ParityClass : std::uint8_t { Even, Odd, Mixed, Zero };

const char* to_string(Parity p);
const char* to_string(ParityClass p);

/// Bitmask of generator indices; bit k stands for generator theta_{k+1}.
using Monomial = std::uint64_t;

/// Upper bound on the number of generators of a Grassmann algebra.
inline constexpr unsigned kMaxGenerators = 63;

/// Sign of theta_S * theta_T for disjoint S, T: (-1)^{#{(s,t) : s > t}}.
int merge_sign(Monomial s, Monomial t);

/// Element of the Grassmann algebra Lambda_N over the rationals.
///
/// Terms are kept sorted by monomial bitmask with no zero coefficients, so two
/// elements are equal iff their term lists are equal. Generators are numbered
/// 1..N in the public interface and stored as bits 0..N-1.
class GrassmannElement {
public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  GrassmannElement() = default;
  /// Zero of Lambda_N.
  explicit GrassmannElement(unsigned generators);
  /// Scalar c in Lambda_N.
  GrassmannElement(unsigned generators, const Rational& c);

  /// theta_k, 1 <= k <= N.
  static GrassmannElement generator(unsigned generators, unsigned k);
  /// coeff * theta_{i1} theta_{i2} ... in the given order (sign normalized).
  static GrassmannElement monomial(unsigned generators, std::initializer_list<unsigned> indices,
                                   const Rational& coeff = 1);
  static GrassmannElement monomial(unsigned generators, const std::vector<unsigned>& indices,
                                   const Rational& coeff = 1);
  /// Builds from raw terms; merges duplicates and drops zeros.
  static GrassmannElement from_terms(unsigned generators, std::vector<Term> terms);

  unsigned generator_count() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(Monomial m) const;

  GrassmannElement& operator+=(const GrassmannElement& other);
  GrassmannElement& operator-=(const GrassmannElement& other);
  GrassmannElement& operator*=(const GrassmannElement& other);
  GrassmannElement& operator*=(const Rational& c);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator*(GrassmannElement a, const Rational& c) { return a *= c; }
  friend GrassmannElement operator*(const Rational& c, GrassmannElement a) { return a *= c; }
  GrassmannElement operator-() const;

  bool operator==(const GrassmannElement& other) const;

  std::string to_string() const;

private:
  void check_compatible(const GrassmannElement& other) const;

  unsigned n_ = 0;
  std::vector<Term> terms_;
};

GrassmannElement add(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement mul(const GrassmannElement& x, const GrassmannElement& y);

ParityClass parity_of(const GrassmannElement& x);
inline bool is_even(const GrassmannElement& x) {
  auto p = parity_of(x);
  return p == ParityClass::Even || p == ParityClass::Zero;
}
inline bool is_odd(const GrassmannElement& x) {
  auto p = parity_of(x);
  return p == ParityClass::Odd || p == ParityClass::Zero;
}
/// True when x is zero or homogeneous of parity p.
bool has_parity(const GrassmannElement& x, Parity p);

Rational body(const GrassmannElement& x);
GrassmannElement soul(const GrassmannElement& x);
bool is_invertible(const GrassmannElement& x);

/// x^k by repeated multiplication; x^0 = 1.
GrassmannElement power(const GrassmannElement& x, unsigned k);

/// Inverse of an even element with nonzero body: b^{-1} sum_k (-soul/b)^k.
GrassmannElement invert(const GrassmannElement& x);

/// Square root with positive rational body of an even element whose body is
/// the square of a positive rational.
GrassmannElement sqrt(const GrassmannElement& x);

}  // namespace superpluecker
