#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "folium/errors.hpp"
#include "folium/polynomial.hpp"
#include "folium/scalar.hpp"

namespace folium {

/// A rational self-map of the Riemann sphere, num/den in one variable,
/// stored with numerator and denominator coprime and the denominator monic
/// (or the numerator monic when the map is polynomial).
struct RationalMap {
  Poly num{cplx{}};
  Poly den{cplx{1.0}};
};

inline int rational_degree(const RationalMap& r) {
  return std::max(poly_degree(r.num), poly_degree(r.den));
}

/// num'·den - num·den': its roots are the finite critical points.
inline Poly wronskian(const RationalMap& r) {
  return poly_sub(poly_mul(poly_derivative(r.num), r.den),
                  poly_mul(r.num, poly_derivative(r.den)));
}

/// Build a map from raw coefficient lists: trims, cancels common roots, and
/// normalizes the leading denominator coefficient to 1.
inline RationalMap make_rational(Poly num, Poly den, double eps_root = 1e-8) {
  num = poly_trim(num);
  den = poly_trim(den);
  if (poly_is_zero(den)) throw domain_error("denominator is identically zero");
  if (poly_is_zero(num)) return RationalMap{Poly{cplx{}}, Poly{cplx{1.0}}};
  // Cancel common roots (numerical gcd by root matching).
  bool changed = true;
  while (changed && poly_degree(den) >= 1 && poly_degree(num) >= 1) {
    changed = false;
    for (const cplx root : poly_roots(den)) {
      const double ns = std::max(1.0, poly_scale(num));
      if (std::abs(poly_eval(num, root)) <= eps_root * ns * std::max(1.0, std::abs(root))) {
        num = poly_trim(poly_deflate(num, root));
        den = poly_trim(poly_deflate(den, root));
        changed = true;
        break;
      }
    }
  }
  const cplx lead = den.back();
  for (cplx& c : num) c /= lead;
  for (cplx& c : den) c /= lead;
  den.back() = cplx{1.0};
  return RationalMap{num, den};
}

/// Evaluate; returns (value, is_infinite).
inline std::pair<cplx, bool> rational_eval(const RationalMap& r, cplx t, double eps = 1e-12) {
  const cplx dv = poly_eval(r.den, t);
  const cplx nv = poly_eval(r.num, t);
  const double scale = std::max(1.0, std::abs(t));
  if (std::abs(dv) <= eps * std::max(1.0, poly_scale(r.den)) * std::pow(scale, poly_degree(r.den)))
    return {cplx{}, true};
  return {nv / dv, false};
}

/// One critical point with its local data: the point (finite or the point at
/// infinity), the branching order e-1 (local mapping degree e >= 2), and the
/// critical value it maps to.
struct CriticalPoint {
  cplx z{};
  bool at_infinity = false;
  int order = 0;  // local mapping degree minus one
  cplx value{};
  bool value_is_inf = false;
};

/// A critical value with the total branching order of its fiber.
struct CriticalValue {
  cplx value{};
  bool is_inf = false;
  int total_order = 0;
};

struct CriticalData {
  int degree = 0;
  std::vector<CriticalPoint> points;
  std::vector<CriticalValue> values;
};

namespace detail {

inline int order_at_zero(const Poly& p, double tol) {
  const double scale = std::max(1.0, poly_scale(p));
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (std::abs(p[static_cast<std::size_t>(i)]) > tol * scale) return i;
  return static_cast<int>(p.size());
}

}  // namespace detail

/// Critical points and values of the map, with the point at infinity handled
/// in the reciprocal chart.  The total branching order is checked against the
/// sphere's Euler count 2·degree - 2; a mismatch signals that root clustering
/// failed and raises a numerical error.
inline CriticalData critical_data(const RationalMap& r_in, double eps_root = 1e-8,
                                  double eps = kCoeffTol) {
  const RationalMap r = make_rational(r_in.num, r_in.den, eps_root);
  const int d = rational_degree(r);
  if (d == 0) throw domain_error("the map is constant");
  const Poly w = wronskian(r);
  if (poly_is_zero(w, 1e-12 * std::max(1.0, poly_scale(r.num) * poly_scale(r.den))))
    throw domain_error("the map is constant");
  CriticalData out;
  out.degree = d;
  for (const ClusteredRoot& cl : clustered_roots(poly_trim(w))) {
    if (cl.multiplicity < 1) continue;
    CriticalPoint p;
    p.z = cl.center;
    p.order = cl.multiplicity;
    const auto [v, vinf] = rational_eval(r, cl.center);
    p.value = v;
    p.value_is_inf = vinf;
    out.points.push_back(p);
  }
  // Behavior at infinity via R(1/s) = N(s)/D(s).
  const Poly n_rev = poly_reversed(r.num, d);
  const Poly d_rev = poly_reversed(r.den, d);
  const int ord_n = detail::order_at_zero(n_rev, eps);
  const int ord_d = detail::order_at_zero(d_rev, eps);
  int e_inf = 0;
  cplx v_inf{};
  bool v_inf_is_inf = false;
  if (ord_d > ord_n) {
    v_inf_is_inf = true;
    e_inf = ord_d - ord_n;
  } else if (ord_n > ord_d) {
    v_inf = cplx{};
    e_inf = ord_n - ord_d;
  } else {
    v_inf = n_rev[static_cast<std::size_t>(ord_n)] / d_rev[static_cast<std::size_t>(ord_d)];
    Poly diff = poly_sub(n_rev, poly_scalar_mul(v_inf, d_rev));
    e_inf = detail::order_at_zero(diff, eps) - ord_d;
  }
  if (e_inf >= 2) {
    CriticalPoint p;
    p.at_infinity = true;
    p.order = e_inf - 1;
    p.value = v_inf;
    p.value_is_inf = v_inf_is_inf;
    out.points.push_back(p);
  }
  int total = 0;
  for (const CriticalPoint& p : out.points) total += p.order;
  if (total != 2 * d - 2)
    throw numerical_error("branching orders sum to " + std::to_string(total) +
                          " instead of " + std::to_string(2 * d - 2) +
                          ": root clustering is unreliable for this map");
  // Group critical values.
  for (const CriticalPoint& p : out.points) {
    bool found = false;
    for (CriticalValue& v : out.values) {
      if (v.is_inf != p.value_is_inf) continue;
      if (v.is_inf || std::abs(v.value - p.value) <= eps_root * std::max(1.0, std::abs(v.value))) {
        v.total_order += p.order;
        found = true;
        break;
      }
    }
    if (!found) out.values.push_back(CriticalValue{p.value, p.value_is_inf, p.order});
  }
  std::sort(out.values.begin(), out.values.end(), [](const CriticalValue& a, const CriticalValue& b) {
    if (a.is_inf != b.is_inf) return !a.is_inf;  // infinity sorts last
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  std::sort(out.points.begin(), out.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.at_infinity != b.at_infinity) return !a.at_infinity;
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace folium
