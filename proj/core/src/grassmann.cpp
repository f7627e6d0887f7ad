#include "superpluecker/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include "superpluecker/error.hpp"

namespace superpluecker {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

const char* to_string(ParityClass p) {
  switch (p) {
    case ParityClass::Even: return "even";
    case ParityClass::Odd: return "odd";
    case ParityClass::Mixed: return "mixed";
    case ParityClass::Zero: return "zero";
  }
  return "?";
}

int merge_sign(Monomial s, Monomial t) {
  // Count pairs (s_i, t_j) with s_i > t_j: each t_j has to hop over those s_i.
  unsigned inversions = 0;
  while (t != 0) {
    const int j = std::countr_zero(t);
    t &= t - 1;
    inversions += static_cast<unsigned>(std::popcount(s >> j >> 1));
  }
  return (inversions & 1U) ? -1 : 1;
}

namespace {

void normalize(std::vector<GrassmannElement::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.monomial < b.monomial; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Monomial m = terms[i].monomial;
    Rational c = std::move(terms[i].coeff);
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].monomial == m; ++j) c += terms[j].coeff;
    if (sgn(c) != 0) {
      terms[out].monomial = m;
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Bit gather / scatter relative to a mask (portable pext / pdep). Compression
// is monotone, so sorted compressed keys map back to sorted masks.
Monomial gather_bits(Monomial x, Monomial mask) {
  Monomial out = 0;
  int bit = 0;
  while (mask != 0) {
    const Monomial low = mask & (~mask + 1);
    if (x & low) out |= Monomial{1} << bit;
    ++bit;
    mask &= mask - 1;
  }
  return out;
}

Monomial scatter_bits(Monomial x, Monomial mask) {
  Monomial out = 0;
  while (mask != 0) {
    const Monomial low = mask & (~mask + 1);
    if (x & 1) out |= low;
    x >>= 1;
    mask &= mask - 1;
  }
  return out;
}

Monomial mask_of(unsigned n, const std::vector<unsigned>& indices, int& sign) {
  Monomial m = 0;
  sign = 1;
  for (unsigned k : indices) {
    if (k < 1 || k > n) throw DomainError("generator index out of range: " + std::to_string(k));
    const Monomial b = Monomial{1} << (k - 1);
    if (m & b) {
      sign = 0;
      return 0;
    }
    sign *= merge_sign(m, b);
    m |= b;
  }
  return m;
}

}  // namespace

GrassmannElement::GrassmannElement(unsigned generators) : n_(generators) {
  if (generators > kMaxGenerators) {
    throw ShapeError("at most " + std::to_string(kMaxGenerators) + " generators supported");
  }
}

GrassmannElement::GrassmannElement(unsigned generators, const Rational& c)
    : GrassmannElement(generators) {
  if (sgn(c) != 0) terms_.push_back({0, c});
}

GrassmannElement GrassmannElement::generator(unsigned generators, unsigned k) {
  return monomial(generators, {k});
}

GrassmannElement GrassmannElement::monomial(unsigned generators,
                                            std::initializer_list<unsigned> indices,
                                            const Rational& coeff) {
  return monomial(generators, std::vector<unsigned>(indices), coeff);
}

GrassmannElement GrassmannElement::monomial(unsigned generators,
                                            const std::vector<unsigned>& indices,
                                            const Rational& coeff) {
  GrassmannElement x(generators);
  int sign = 0;
  const Monomial m = mask_of(generators, indices, sign);
  if (sign != 0 && sgn(coeff) != 0) x.terms_.push_back({m, sign * coeff});
  return x;
}

GrassmannElement GrassmannElement::from_terms(unsigned generators, std::vector<Term> terms) {
  GrassmannElement x(generators);
  const Monomial limit = generators >= 64 ? ~Monomial{0} : (Monomial{1} << generators) - 1;
  for (const auto& t : terms) {
    if ((t.monomial & ~limit) != 0) throw DomainError("monomial uses a generator beyond N");
  }
  normalize(terms);
  x.terms_ = std::move(terms);
  return x;
}

Rational GrassmannElement::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial v) { return t.monomial < v; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

void GrassmannElement::check_compatible(const GrassmannElement& other) const {
  if (n_ != other.n_) {
    throw ShapeError("generator count mismatch: " + std::to_string(n_) + " vs " +
                     std::to_string(other.n_));
  }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->monomial < a->monomial) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (sgn(c) != 0) merged.push_back({a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
  return *this += -other;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

GrassmannElement& GrassmannElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(const GrassmannElement& other) {
  *this = *this * other;
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  a.check_compatible(b);
  GrassmannElement r(a.n_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  // Product masks are bounded by the union of both supports, so a dense
  // accumulator over that sub-cube avoids sorting thousands of temporaries.
  Monomial support = 0;
  for (const auto& s : a.terms_) support |= s.monomial;
  for (const auto& t : b.terms_) support |= t.monomial;
  const int width = std::popcount(support);
  const std::size_t pairs = a.terms_.size() * b.terms_.size();
  if (width <= 16 && pairs > 64) {
    // Scale both factors to integer coefficients so the inner loop is a
    // gcd-free mpz_addmul; one division per output term at the end.
    auto integer_form = [](const std::vector<GrassmannElement::Term>& terms, mpz_class& den,
                           std::vector<mpz_class>& nums) {
      den = 1;
      for (const auto& t : terms) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      nums.resize(terms.size());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        mpz_divexact(nums[i].get_mpz_t(), den.get_mpz_t(), terms[i].coeff.get_den_mpz_t());
        nums[i] *= terms[i].coeff.get_num();
      }
    };
    thread_local std::vector<mpz_class> acc, nums_a, nums_b;
    thread_local std::vector<unsigned char> used;
    thread_local std::vector<std::uint32_t> touched, keys_b;
    mpz_class den_a, den_b;
    integer_form(a.terms_, den_a, nums_a);
    integer_form(b.terms_, den_b, nums_b);
    const std::size_t cube = std::size_t{1} << width;
    if (acc.size() < cube) {
      acc.resize(cube);
      used.resize(cube, 0);
    }
    touched.clear();
    keys_b.clear();
    for (const auto& t : b.terms_) {
      keys_b.push_back(static_cast<std::uint32_t>(gather_bits(t.monomial, support)));
    }
    for (std::size_t ia = 0; ia < a.terms_.size(); ++ia) {
      const Monomial sm = a.terms_[ia].monomial;
      const auto cs = static_cast<std::uint32_t>(gather_bits(sm, support));
      for (std::size_t jb = 0; jb < b.terms_.size(); ++jb) {
        const Monomial tm = b.terms_[jb].monomial;
        if (sm & tm) continue;
        const auto k = cs | keys_b[jb];
        if (!used[k]) {
          used[k] = 1;
          touched.push_back(k);
          acc[k] = 0;
        }
        if (merge_sign(sm, tm) < 0) {
          mpz_submul(acc[k].get_mpz_t(), nums_a[ia].get_mpz_t(), nums_b[jb].get_mpz_t());
        } else {
          mpz_addmul(acc[k].get_mpz_t(), nums_a[ia].get_mpz_t(), nums_b[jb].get_mpz_t());
        }
      }
    }
    const mpz_class den = den_a * den_b;
    std::sort(touched.begin(), touched.end());
    r.terms_.reserve(touched.size());
    for (auto k : touched) {
      used[k] = 0;
      if (sgn(acc[k]) == 0) continue;
      Rational q(acc[k], den);
      q.canonicalize();
      r.terms_.push_back({scatter_bits(k, support), std::move(q)});
    }
    return r;
  }
  std::vector<GrassmannElement::Term> products;
  products.reserve(pairs);
  Rational c;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      if (s.monomial & t.monomial) continue;
      c = s.coeff * t.coeff;
      if (merge_sign(s.monomial, t.monomial) < 0) c = -c;
      products.push_back({s.monomial | t.monomial, c});
    }
  }
  normalize(products);
  r.terms_ = std::move(products);
  return r;
}

bool GrassmannElement::operator==(const GrassmannElement& other) const {
  return n_ == other.n_ && terms_ == other.terms_;
}

std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str();
    Monomial m = t.monomial;
    while (m != 0) {
      os << "*t" << (std::countr_zero(m) + 1);
      m &= m - 1;
    }
  }
  return os.str();
}

GrassmannElement add(const GrassmannElement& x, const GrassmannElement& y) { return x + y; }
GrassmannElement mul(const GrassmannElement& x, const GrassmannElement& y) { return x * y; }

ParityClass parity_of(const GrassmannElement& x) {
  if (x.is_zero()) return ParityClass::Zero;
  bool even = false;
  bool odd = false;
  for (const auto& t : x.terms()) {
    (std::popcount(t.monomial) % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return ParityClass::Mixed;
  return even ? ParityClass::Even : ParityClass::Odd;
}

bool has_parity(const GrassmannElement& x, Parity p) {
  const auto c = parity_of(x);
  if (c == ParityClass::Zero) return true;
  return p == Parity::Even ? c == ParityClass::Even : c == ParityClass::Odd;
}

Rational body(const GrassmannElement& x) { return x.coefficient(0); }

GrassmannElement soul(const GrassmannElement& x) {
  return x - GrassmannElement(x.generator_count(), body(x));
}

bool is_invertible(const GrassmannElement& x) { return sgn(body(x)) != 0; }

GrassmannElement power(const GrassmannElement& x, unsigned k) {
  GrassmannElement r(x.generator_count(), 1);
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

namespace {

void require_even(const GrassmannElement& x, const char* op) {
  const auto p = parity_of(x);
  if (p == ParityClass::Odd || p == ParityClass::Mixed) {
    throw DomainError(std::string(op) + " requires an even element, got " + to_string(p));
  }
}

}  // namespace

GrassmannElement invert(const GrassmannElement& x) {
  require_even(x, "invert");
  const Rational b = body(x);
  if (sgn(b) == 0) throw NotInvertibleError("invert: element has zero body");
  const unsigned n = x.generator_count();
  // y = -soul/b is nilpotent of even degree >= 2, so y^{floor(N/2)+1} = 0.
  GrassmannElement y = soul(x) * Rational(-1 / b);
  GrassmannElement sum(n, 1);
  GrassmannElement term(n, 1);
  for (unsigned k = 1; k <= n / 2; ++k) {
    term *= y;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * Rational(1 / b);
}

GrassmannElement sqrt(const GrassmannElement& x) {
  require_even(x, "sqrt");
  const Rational b = body(x);
  if (sgn(b) <= 0) throw DomainError("sqrt: body must be positive");
  auto root = rational_sqrt(b);
  if (!root) throw DomainError("sqrt: body " + to_pq_string(b) + " is not a rational square");
  const unsigned n = x.generator_count();
  // sqrt(b (1 + y)) = sqrt(b) * sum_k binom(1/2, k) y^k with y = soul/b nilpotent.
  GrassmannElement y = soul(x) * Rational(1 / b);
  GrassmannElement sum(n, 1);
  GrassmannElement term(n, 1);
  Rational binom = 1;
  for (unsigned k = 1; k <= n / 2; ++k) {
    term *= y;
    if (term.is_zero()) break;
    binom *= Rational(1, 2) - Rational(k - 1);
    binom /= k;
    sum += term * binom;
  }
  return sum * *root;
}

}  // namespace superpluecker
