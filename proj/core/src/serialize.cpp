#include "superpluecker/serialize.hpp"

#include <bit>

#include "json_io.hpp"
#include "superpluecker/error.hpp"
#include "superpluecker/rational.hpp"

namespace superpluecker {

namespace json_io {

ordered_json element(const GrassmannElement& x) {
  ordered_json out = ordered_json::array();
  for (const auto& t : x.terms()) {
    ordered_json subset = ordered_json::array();
    for (Monomial m = t.monomial; m != 0; m &= m - 1) subset.push_back(std::countr_zero(m) + 1);
    out.push_back({{"subset", std::move(subset)}, {"coeff", to_pq_string(t.coeff)}});
  }
  return out;
}

GrassmannElement element(const ordered_json& j, unsigned generators) {
  if (!j.is_array()) throw DomainError("element JSON: expected a list of terms");
  GrassmannElement x(generators);
  for (const auto& term : j) {
    std::vector<unsigned> idx = term.at("subset").get<std::vector<unsigned>>();
    x += GrassmannElement::monomial(generators, idx, parse_rational(term.at("coeff").get<std::string>()));
  }
  return x;
}

ordered_json supermatrix(const SuperMatrix& m) {
  auto labels = [](const std::vector<Parity>& ps) {
    ordered_json a = ordered_json::array();
    for (auto p : ps) a.push_back(to_string(p));
    return a;
  };
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"row_parities", labels(m.row_parities())},
          {"col_parities", labels(m.col_parities())},
          {"wrong_rows", m.wrong_rows()},
          {"wrong_cols", m.wrong_cols()},
          {"entries", std::move(entries)}};
}

ordered_json violation(const Violation& v, std::size_t n) {
  ordered_json idx = ordered_json::array();
  for (auto x : v.index_tuple) idx.push_back(index_label(x, n));
  return {{"relation_id", v.relation_id},
          {"index_tuple", std::move(idx)},
          {"lhs", element(v.lhs)},
          {"rhs", element(v.rhs)},
          {"skipped", v.skipped}};
}

ordered_json report(const RelationReport& r, std::size_t n) {
  ordered_json out = ordered_json::array();
  for (const auto& v : r.violations) out.push_back(violation(v, n));
  for (const auto& v : r.skips) out.push_back(violation(v, n));
  return out;
}

ordered_json coords(const PlueckerCoordSet& c) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : c.values) {
    out[key.label(c.shape.r, c.shape.n)] = value ? element(*value) : ordered_json(nullptr);
  }
  return out;
}

ordered_json graph(const ExchangeGraph& g) {
  auto pair = [](Diagonal d) { return ordered_json::array({d.i, d.j}); };
  ordered_json vs = ordered_json::array();
  for (const auto& v : g.vertices) {
    ordered_json ds = ordered_json::array();
    for (const auto& d : v.triangulation.diagonals) ds.push_back(pair(d));
    vs.push_back({{"diagonals", std::move(ds)}, {"marked", pair(v.marked)}});
  }
  ordered_json es = ordered_json::array();
  for (const auto& e : g.edges) es.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  return {{"n", g.n}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

}  // namespace json_io

std::string to_json(const GrassmannElement& x) { return json_io::element(x).dump(); }

GrassmannElement element_from_json(const std::string& text, unsigned generators) {
  try {
    return json_io::element(json_io::ordered_json::parse(text), generators);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("element JSON: ") + e.what());
  }
}

std::string to_json(const SuperMatrix& m) { return json_io::supermatrix(m).dump(); }

SuperMatrix supermatrix_from_json(const std::string& text, unsigned generators) {
  try {
    const auto j = json_io::ordered_json::parse(text);
    auto labels = [](const json_io::ordered_json& a) {
      std::vector<Parity> ps;
      for (const auto& s : a) {
        const auto str = s.get<std::string>();
        if (str != "even" && str != "odd") throw DomainError("supermatrix JSON: bad parity " + str);
        ps.push_back(str == "even" ? Parity::Even : Parity::Odd);
      }
      return ps;
    };
    auto rows = labels(j.at("row_parities"));
    auto cols = labels(j.at("col_parities"));
    Matrix e(rows.size(), cols.size(), generators);
    const auto& entries = j.at("entries");
    if (entries.size() != rows.size()) throw ShapeError("supermatrix JSON: row count mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (entries[i].size() != cols.size()) throw ShapeError("supermatrix JSON: column count mismatch");
      for (std::size_t k = 0; k < cols.size(); ++k) e(i, k) = json_io::element(entries[i][k], generators);
    }
    return SuperMatrix(std::move(rows), std::move(cols), std::move(e),
                       j.at("wrong_rows").get<std::vector<std::size_t>>(),
                       j.at("wrong_cols").get<std::vector<std::size_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("supermatrix JSON: ") + e.what());
  }
}

std::string to_json(const RelationReport& r, std::size_t n) { return json_io::report(r, n).dump(); }

std::string to_json(const PlueckerCoordSet& c) { return json_io::coords(c).dump(); }

std::string to_json(const ExchangeGraph& g) { return json_io::graph(g).dump(); }

}  // namespace superpluecker
