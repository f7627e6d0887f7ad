#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superpluecker/grassmann.hpp"
#include "superpluecker/sampling.hpp"
#include "superpluecker/supermatrix.hpp"

namespace superpluecker {

/// Dimensions of Gr_{r|s}(n|m).
struct PlaneShape {
  std::size_t r = 0, s = 0, n = 0, m = 0;
  std::size_t odd_entries() const { return r * m + s * n; }
};

/// Column indices 0..n-1 are even, n..n+m-1 are odd. Labels are 1-based, odd
/// ones hatted: "3", "^1".
std::string index_label(std::size_t index, std::size_t n);
std::string tuple_label(std::span<const std::size_t> tuple, std::size_t n);

/// Even (r+s) x (n+m) matrix of homogeneous coordinates of an r|s-plane,
/// rows and columns in standard format.
class PlaneRep {
public:
  PlaneRep(SuperMatrix u, PlaneShape shape);

  const SuperMatrix& matrix() const { return u_; }
  const PlaneShape& shape() const { return shape_; }
  unsigned generator_count() const { return u_.generator_count(); }
  bool is_odd_index(std::size_t col) const { return col >= shape_.n; }

  /// g U for an even (r+s)-square g.
  PlaneRep transformed(const SuperMatrix& g) const;

private:
  SuperMatrix u_;
  PlaneShape shape_;
};

/// Columns of U placed at positions with parity labels r even then s odd;
/// a column whose parity differs from its slot label is flagged wrong.
SuperMatrix coordinate_matrix(const PlaneRep& u, std::span<const std::size_t> cols);

/// Samples a plane with sample_even / sample_odd entries. Retries (fresh pool
/// each time) until `accept` holds; throws DomainError after `max_retries`.
PlaneRep sample_plane(Rng& rng, const PlaneShape& shape, unsigned generators,
                      const SampleProfile& profile,
                      const std::function<bool(const PlaneRep&)>& accept = {},
                      unsigned max_retries = 64);

/// True if some selection of r even and s odd columns has an invertible body.
bool has_full_rank(const PlaneRep& u);

// ---------------------------------------------------------------------------
// Even multivectors (s = 0).

/// Components T^{a1..ak} of an element of Lambda^k(V), V of dimension n|m.
///
/// Stored on canonical tuples (nondecreasing; even indices strictly increasing,
/// and even indices precede odd ones because of the numbering). Other orders are
/// reached through the super-antisymmetry T^{..ab..} = -(-1)^{|a||b|} T^{..ba..}.
class Multivector {
public:
  Multivector(std::size_t degree, std::size_t n, std::size_t m, unsigned generators);

  std::size_t degree() const { return degree_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  unsigned generator_count() const { return generators_; }

  /// Component for any index order; zero for a repeated even index.
  GrassmannElement get(std::span<const std::size_t> tuple) const;
  /// Sets a canonical component.
  void set(std::span<const std::size_t> canonical, GrassmannElement value);
  const std::map<std::vector<std::size_t>, GrassmannElement>& components() const { return comps_; }

  bool is_odd(std::size_t index) const { return index >= n_; }

private:
  std::size_t degree_, n_, m_;
  unsigned generators_;
  std::map<std::vector<std::size_t>, GrassmannElement> comps_;
};

/// All canonical index tuples of the given degree.
std::vector<std::vector<std::size_t>> canonical_tuples(std::size_t degree, std::size_t n,
                                                       std::size_t m);

/// Sorts `tuple` into canonical order and returns the Koszul sign, or 0 if a
/// repeated even index makes the component vanish.
int canonical_sign(std::vector<std::size_t>& tuple, std::size_t n);

/// u_1 ^ ... ^ u_r for the rows of an r x (n+m) matrix of even vectors.
Multivector wedge(const Matrix& rows, std::size_t n, std::size_t m);

// ---------------------------------------------------------------------------
// Relation reports.

struct Violation {
  std::string relation_id;
  std::vector<std::size_t> index_tuple;
  GrassmannElement lhs;
  GrassmannElement rhs;
  bool skipped = false;
};

struct RelationReport {
  std::vector<Violation> violations;  ///< failing instances (skipped = false)
  std::vector<Violation> skips;       ///< instances not evaluated (skipped = true)
  std::size_t checked = 0;

  bool ok() const { return violations.empty(); }
  void merge(RelationReport other);
  /// Records one instance; violations and checks are tallied here.
  void record(const char* id, std::vector<std::size_t> tuple, GrassmannElement lhs,
              GrassmannElement rhs);
  void skip(const char* id, std::vector<std::size_t> tuple);
};

/// Simplicity relations for an even multivector over all index combinations
/// (a_1..a_{r-1}, b, c_1..c_r), each index even or odd, repeats allowed.
/// Throws DomainError if no all-even component is invertible.
RelationReport check_simple(const Multivector& t);

/// Plane coordinates of Gr_{2|0}(n|1) read off wedge(U).
struct Gr20Coords {
  std::size_t n = 0;
  unsigned generators = 0;
  std::map<std::pair<std::size_t, std::size_t>, GrassmannElement> t;  ///< a < b
  std::vector<GrassmannElement> theta;                                 ///< theta^a = T^{a 1^}
  GrassmannElement t_hat;                                              ///< T^{1^ 1^}

  /// Antisymmetric accessor T^{ab} for 0 <= a, b < n.
  GrassmannElement T(std::size_t a, std::size_t b) const;
};

Gr20Coords coords_gr2_0_n1(const PlaneRep& u);

/// The five relations of Gr_{2|0}(n|1): the two exchange relations and the
/// three identities involving T^{1^1^}, over all even index tuples.
RelationReport check_gr2_0_relations(const Gr20Coords& c);

/// Even and odd essential relations for s = 0 on the coordinates of wedge(U).
RelationReport check_ess_relations_r0(const PlaneRep& u);
RelationReport check_ess_relations_r0(const Multivector& t);

// ---------------------------------------------------------------------------
// Ber / Ber* coordinates.

/// pl(U)(P) = Ber(U P) and pl*(U)(P) = Ber*(U P).
GrassmannElement pl_eval(const PlaneRep& u, const SuperMatrix& p);
GrassmannElement pl_star_eval(const PlaneRep& u, const SuperMatrix& p);

/// (n+m) x (r+s) matrix of basis covectors e^{cols[0]}, ..., with slot labels
/// r even then s odd (a slot holding a covector of the other parity is wrong).
SuperMatrix basis_covectors(const PlaneShape& shape, std::span<const std::size_t> cols,
                            unsigned generators);

enum class CoordKind { Even, Star, OddSub, StarSub };

struct CoordKey {
  CoordKind kind;
  std::vector<std::size_t> cols;  ///< column per slot: r even slots, then s odd slots
  auto operator<=>(const CoordKey&) const = default;
  /// "T[1,3|^1]", "T*[1,3|2]", ...
  std::string label(std::size_t r, std::size_t n) const;
};

struct PlueckerCoordSet {
  PlaneShape shape;
  /// nullopt marks a coordinate whose Ber / Ber* is undefined (block not invertible).
  std::map<CoordKey, std::optional<GrassmannElement>> values;
  /// Keys whose value has the wrong parity (even expected for Even/Star,
  /// odd for OddSub/StarSub). Empty for a correct implementation.
  std::vector<CoordKey> parity_failures;

  std::size_t defined_count() const;
};

/// All four coordinate families of Gr_{r|s}(n|m).
PlueckerCoordSet super_pluecker_coords(const PlaneRep& u);

// ---------------------------------------------------------------------------
// Gr_{r|1}(n|1).

/// theta^{t_0..t_r} = T^{*t_0..t_{r-1}|t_r} (T^{t_0..t_{r-1}|1^})^2, from Ber* and Ber.
GrassmannElement theta_from_berezinians(const PlaneRep& u, std::span<const std::size_t> tuple);
/// The same quantity from plain determinants:
/// det U^{a c} (det U^a_{1..r})^2 / (det U^{a 1^})^2, odd-row factors first.
GrassmannElement theta_from_determinants(const PlaneRep& u, std::span<const std::size_t> tuple);

struct ReducedCoordsR1 {
  std::size_t r = 0, n = 0;
  unsigned generators = 0;
  std::map<std::vector<std::size_t>, GrassmannElement> p;       ///< sorted a
  std::map<std::vector<std::size_t>, GrassmannElement> p_star;  ///< sorted a
  /// key = sorted a followed by c (c not in a)
  std::map<std::vector<std::size_t>, GrassmannElement> theta;
  std::vector<std::vector<std::size_t>> undefined;  ///< a with P^a not invertible
  /// theta keys where the determinant formula disagreed with the Berezinian one
  std::vector<std::vector<std::size_t>> path_mismatches;

  /// P for any order of r indices (antisymmetric); nullopt if undefined.
  std::optional<GrassmannElement> P(std::span<const std::size_t> a) const;
  /// theta for any order of r+1 indices (antisymmetric); nullopt if undefined.
  std::optional<GrassmannElement> Theta(std::span<const std::size_t> tuple) const;
};

ReducedCoordsR1 reduced_coords_r1_n1(const PlaneRep& u);

/// Which index tuples a relation check visits.
enum class TupleRange {
  /// Every tuple in [n]^k.
  All,
  /// Index groups in which both sides are antisymmetric (b in the even
  /// relation; a and b in the odd one) are restricted to increasing tuples.
  /// Other orders follow from the antisymmetry of P and theta.
  Representatives,
};

/// Even and odd relations in the reduced coordinates; for r = 2 also the
/// determinant form of the even relation and the four-term odd relation
/// (always over all tuples).
RelationReport check_relations_r1_n1(const ReducedCoordsR1& c,
                                     TupleRange range = TupleRange::All);

/// Each stored theta against a direct evaluation with two adjacent indices
/// swapped (sign must flip).
RelationReport check_theta_antisymmetry(const PlaneRep& u, const ReducedCoordsR1& c);

/// Recomputes reduced coordinates on g U and checks theta' = Ber(g) theta and
/// P' = Ber(g) P for every key.
RelationReport scaling_covariance(const PlaneRep& u, const SuperMatrix& g);

}  // namespace superpluecker
