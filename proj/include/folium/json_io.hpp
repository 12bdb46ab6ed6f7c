#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "folium/errors.hpp"
#include "folium/family.hpp"
#include "folium/involution.hpp"
#include "folium/one_form.hpp"
#include "folium/polynomial.hpp"
#include "folium/rational.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"
#include "folium/series2.hpp"

namespace folium {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Complex numbers: [re, im]
// ---------------------------------------------------------------------------

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw domain_error(where + ": a complex number must be a [re, im] pair");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

// ---------------------------------------------------------------------------
// Series in one variable: {"var":"t", "order":N, "coeffs":[[re,im], ...]}
// ---------------------------------------------------------------------------

inline json to_json(const Series1& s) {
  json coeffs = json::array();
  for (int j = 0; j <= s.order(); ++j) coeffs.push_back(to_json(s.coeff(j)));
  return json{{"var", "t"}, {"order", s.order()}, {"coeffs", coeffs}};
}

inline Series1 series1_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw domain_error(where + ": expected a series object");
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw domain_error(where + ": series needs a 'coeffs' array");
  if (j.contains("var") && j["var"] != "t")
    throw domain_error(where + ": series variable must be 't'");
  const json& coeffs = j["coeffs"];
  int order = static_cast<int>(coeffs.size()) - 1;
  if (j.contains("order")) {
    if (!j["order"].is_number_integer()) throw domain_error(where + ": 'order' must be an integer");
    order = j["order"].get<int>();
    if (order + 1 != static_cast<int>(coeffs.size()))
      throw domain_error(where + ": 'order' disagrees with the number of coefficients");
  }
  if (order < 0) throw domain_error(where + ": series needs at least one coefficient");
  Series1 s(order);
  for (int i = 0; i <= order; ++i)
    s.set(i, complex_from_json(coeffs[static_cast<std::size_t>(i)],
                               where + ".coeffs[" + std::to_string(i) + "]"));
  return s;
}

// ---------------------------------------------------------------------------
// Series in two variables:
// {"vars":["x","t"], "order_x":J, "order_t":K, "coeffs":[row_0, ..., row_J]}
// where row_j lists the coefficients of x^j t^k for k = 0..K.
// ---------------------------------------------------------------------------

inline json to_json(const Series2& s) {
  json rows = json::array();
  for (int j = 0; j <= s.order_x(); ++j) {
    json row = json::array();
    for (int k = 0; k <= s.order_t(); ++k) row.push_back(to_json(s.coeff(j, k)));
    rows.push_back(row);
  }
  return json{{"vars", json::array({"x", "t"})},
              {"order_x", s.order_x()},
              {"order_t", s.order_t()},
              {"coeffs", rows}};
}

inline Series2 series2_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw domain_error(where + ": expected a two-variable series object");
  if (j.contains("vars")) {
    const json want = json::array({"x", "t"});
    if (j["vars"] != want) throw domain_error(where + ": variables must be [\"x\", \"t\"]");
  }
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    throw domain_error(where + ": series needs a non-empty 'coeffs' array of rows");
  const json& rows = j["coeffs"];
  const int jmax = static_cast<int>(rows.size()) - 1;
  if (!rows[0].is_array() || rows[0].empty())
    throw domain_error(where + ": each row must be a non-empty array");
  const int kmax = static_cast<int>(rows[0].size()) - 1;
  if (j.contains("order_x") && j["order_x"].get<int>() != jmax)
    throw domain_error(where + ": 'order_x' disagrees with the number of rows");
  if (j.contains("order_t") && j["order_t"].get<int>() != kmax)
    throw domain_error(where + ": 'order_t' disagrees with the row length");
  Series2 s(jmax, kmax);
  for (int r = 0; r <= jmax; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != kmax + 1)
      throw domain_error(where + ": row " + std::to_string(r) + " has inconsistent length");
    for (int k = 0; k <= kmax; ++k)
      s.set(r, k, complex_from_json(row[static_cast<std::size_t>(k)],
                                    where + ".coeffs[" + std::to_string(r) + "][" +
                                        std::to_string(k) + "]"));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Involutions, Moebius maps
// ---------------------------------------------------------------------------

inline json to_json(const Involution& i) {
  json j = to_json(i.series);
  j["verified_order"] = i.verified_order;
  return j;
}

inline Involution involution_from_json(const json& j, const std::string& where,
                                       double eps = kCoeffTol) {
  const Series1 s = series1_from_json(j, where);
  return make_involution(s, eps);
}

inline json to_json(const Moebius& g) {
  return json{{"a", to_json(g.a)}, {"b", to_json(g.b)}};
}

inline Moebius moebius_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    throw domain_error(where + ": a Moebius map needs 'a' and 'b'");
  return Moebius{complex_from_json(j["a"], where + ".a"), complex_from_json(j["b"], where + ".b")};
}

// ---------------------------------------------------------------------------
// 1-forms: {"frame":"xy", "p": series2, "q": series2}
// ---------------------------------------------------------------------------

inline json to_json(const OneForm& w) {
  return json{{"frame", w.frame}, {"p", to_json(w.p)}, {"q", to_json(w.q)}};
}

inline OneForm one_form_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q"))
    throw domain_error(where + ": a 1-form needs 'p' and 'q' series");
  OneForm w;
  w.p = series2_from_json(j["p"], where + ".p");
  w.q = series2_from_json(j["q"], where + ".q");
  w.frame = j.value("frame", std::string("xy"));
  if (w.frame != "xy" && w.frame != "xt")
    throw domain_error(where + ": frame must be 'xy' or 'xt'");
  return w;
}

// ---------------------------------------------------------------------------
// Rational maps and families
// ---------------------------------------------------------------------------

inline json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const cplx c : p) out.push_back(to_json(c));
  return out;
}

inline Poly poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw domain_error(where + ": a polynomial must be a non-empty coefficient array");
  Poly p;
  for (std::size_t i = 0; i < j.size(); ++i)
    p.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return p;
}

inline json to_json(const RationalMap& r) {
  return json{{"num", poly_to_json(r.num)}, {"den", poly_to_json(r.den)}};
}

inline RationalMap rational_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw domain_error(where + ": a rational map needs 'num' and 'den'");
  return make_rational(poly_from_json(j["num"], where + ".num"),
                       poly_from_json(j["den"], where + ".den"));
}

inline json to_json(const RationalFamily& f) {
  return json{{"num", to_json(f.num)}, {"den", to_json(f.den)}};
}

inline RationalFamily family_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw domain_error(where + ": a family needs 'num' and 'den' series");
  return RationalFamily{series2_from_json(j["num"], where + ".num"),
                        series2_from_json(j["den"], where + ".den")};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw domain_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace folium
