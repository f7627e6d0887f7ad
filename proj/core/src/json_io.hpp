#pragma once

// nlohmann-based conversions shared by serialize.cpp and harness.cpp; not installed.

#include <json.hpp>

#include "superpluecker/cluster.hpp"
#include "superpluecker/grassmann.hpp"
#include "superpluecker/pluecker.hpp"
#include "superpluecker/supermatrix.hpp"

namespace superpluecker::json_io {

using nlohmann::ordered_json;

ordered_json element(const GrassmannElement& x);
GrassmannElement element(const ordered_json& j, unsigned generators);
ordered_json supermatrix(const SuperMatrix& m);
ordered_json violation(const Violation& v, std::size_t n);
ordered_json report(const RelationReport& r, std::size_t n);
ordered_json coords(const PlueckerCoordSet& c);
ordered_json graph(const ExchangeGraph& g);

}  // namespace superpluecker::json_io
