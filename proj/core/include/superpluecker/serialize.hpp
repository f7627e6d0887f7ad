#pragma once

#include <cstddef>
#include <string>

#include "superpluecker/cluster.hpp"
#include "superpluecker/grassmann.hpp"
#include "superpluecker/pluecker.hpp"
#include "superpluecker/supermatrix.hpp"

namespace superpluecker {

// JSON text for the library's value types. Rationals are always "p/q";
// elements are lists of {subset, coeff} with 1-based ascending subsets.

std::string to_json(const GrassmannElement& x);
GrassmannElement element_from_json(const std::string& text, unsigned generators);

/// {row_parities, col_parities, wrong_rows, wrong_cols, entries}
std::string to_json(const SuperMatrix& m);
SuperMatrix supermatrix_from_json(const std::string& text, unsigned generators);

/// List of {relation_id, index_tuple, lhs, rhs, skipped}; index labels use
/// the 1-based / hatted convention with n even columns.
std::string to_json(const RelationReport& r, std::size_t n);

/// Object keyed by coordinate labels such as "T[1,3|^1]"; undefined -> null.
std::string to_json(const PlueckerCoordSet& c);

/// {n, vertices: [{diagonals, marked}], edges: [{from, to, kind}]}
std::string to_json(const ExchangeGraph& g);

}  // namespace superpluecker
