#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "folium/errors.hpp"
#include "folium/involution.hpp"
#include "folium/polynomial.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"
#include "folium/series2.hpp"

namespace folium {

/// A family of rational functions R(x, t) = num/den: for each small x a
/// rational map in the fiber variable t, deforming the map at x = 0.
struct RationalFamily {
  Series2 num;
  Series2 den;
};

enum class BranchKind { level, non_invariant, divisor_tangent };

/// One critical curve of the family through the fiber x = 0.
struct CriticalBranch {
  BranchKind kind = BranchKind::non_invariant;
  bool vertical = false;   // curve is x = curve(t - center) instead of t = curve(x)
  Series1 curve;           // horizontal: t = curve(x), curve(0) = center;
                           // vertical: x = curve(s) with s = t - center, curve(0) = 0
  cplx center{};           // t-coordinate of the crossing with x = 0
  int multiplicity = 1;    // power of the curve inside the t-derivative determinant
  bool value_constant = false;
  bool value_is_inf = false;
  cplx value{};            // constant value when value_constant
  Series1 value_series;    // value along the branch (parameter x, or s when vertical)
  int contact = 0;         // divisor contact order: vertical curve = s^(contact+1)·unit
};

struct CriticalCurves {
  int divisor_multiplicity = 0;  // power of x dividing the t-derivative determinant
  std::vector<CriticalBranch> branches;
  std::vector<std::string> unresolved;
};

/// d/dt applied to num/den, cleared of the denominator square:
/// num_t·den - num·den_t.
inline Series2 family_wronskian_t(const RationalFamily& f) {
  return f.num.derivative_t() * f.den - f.num * f.den.derivative_t();
}

/// d/dx analogue: num_x·den - num·den_x.
inline Series2 family_wronskian_x(const RationalFamily& f) {
  return f.num.derivative_x() * f.den - f.num * f.den.derivative_x();
}

namespace detail {

inline int series1_valuation(const Series1& f, double eps) {
  for (int j = 0; j <= f.order(); ++j)
    if (magnitude(f.coeff(j)) > eps) return j;
  return f.order() + 1;
}

inline Series1 series1_shift_down(const Series1& f, int v) {
  Series1 out(std::max(0, f.order() - v));
  for (int j = v; j <= f.order(); ++j) out.set(j - v, f.coeff(j));
  return out;
}

/// Substitute s = x^q (c + w) into P(x, s) and divide by x^V (the edge
/// value).  The x-window shrinks by V: a table exact through x^J only
/// determines the substituted table through x^(J-V), because a monomial
/// just beyond the window (x-degree J+1, s-degree 0) would land at
/// x-degree J+1-V.  Keeping the full window would present those unknown
/// entries as exact zeros and corrupt later polygon steps.
inline Series2 substitute_edge(const Series2& p, int q, cplx c, int V) {
  const int J = p.order_x(), K = p.order_t();
  const int Jout = std::max(0, J - V);
  Series2 out(Jout, K);
  std::vector<std::vector<double>> ch(static_cast<std::size_t>(K) + 1,
                                      std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0));
  for (int n = 0; n <= K; ++n) {
    ch[static_cast<std::size_t>(n)][0] = 1.0;
    for (int i = 1; i <= n; ++i)
      ch[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
          ch[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)] +
          (i <= n - 1 ? ch[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] : 0.0);
  }
  std::vector<cplx> cpow(static_cast<std::size_t>(K) + 1, cplx{1.0});
  for (int i = 1; i <= K; ++i) cpow[static_cast<std::size_t>(i)] = cpow[static_cast<std::size_t>(i - 1)] * c;
  for (int j = 0; j <= J; ++j)
    for (int k = 0; k <= K; ++k) {
      const cplx v = p.coeff(j, k);
      if (v == cplx{}) continue;
      const int xe = j + q * k - V;
      if (xe < 0 || xe > Jout) continue;
      for (int i = 0; i <= k; ++i)
        out.add(xe, i,
                v * ch[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                    cpow[static_cast<std::size_t>(k - i)]);
    }
  return out;
}

/// All power-series branches s = sigma(x), sigma(0) = 0, of P(x, s) = 0,
/// by the polygon of lowest exponents with integer-slope edges; fractional
/// slopes are either left to the transposed pass (exponent 1/r) or reported.
inline void expand_branches(const Series2& p_in, int depth, int max_depth, double eps,
                            bool report_fractional, std::vector<Series1>& out,
                            std::vector<std::string>& unresolved) {
  const int J = p_in.order_x(), K = p_in.order_t();
  Series2 p = p_in;
  const double scale = std::max(1.0, p.max_abs());
  const double tol = eps * scale;
  if (p.max_abs() <= tol) {
    unresolved.push_back("expansion met an identically vanishing table");
    return;
  }
  const int jdiv = p.t_valuation(tol);
  if (jdiv >= 1) {
    out.push_back(Series1(J));  // the branch s = 0
    if (jdiv > K) return;
    p = p.divide_t_power(jdiv, scale);  // discard sub-tolerance dust rows
  }
  if (std::abs(p.coeff(0, 0)) > tol) return;  // no further branch through the origin
  if (depth >= max_depth) {
    unresolved.push_back("expansion depth cap reached");
    return;
  }
  // p(0, s): multiplicity of the s = 0 root.
  int mu = -1;
  for (int k = 0; k <= p.order_t(); ++k)
    if (std::abs(p.coeff(0, k)) > tol) {
      mu = k;
      break;
    }
  if (mu < 0) {
    const int xv = p.x_valuation(tol);
    if (xv >= 1 && xv <= p.order_x()) {
      expand_branches(p.divide_x_power(xv, scale), depth + 1, max_depth, eps,
                      report_fractional, out, unresolved);
      return;
    }
    unresolved.push_back("could not normalize the expansion table");
    return;
  }
  if (mu == 1) {
    // Simple root: order-by-order lift of the implicit function.
    const cplx ps = p.coeff(0, 1);
    Series1 sigma(p.order_x());
    for (int k = 1; k <= p.order_x(); ++k) {
      const Series1 r = p.eval_t(sigma, tol);
      sigma.set(k, -r.coeff(k) / ps);
    }
    out.push_back(sigma.resized(J));
    return;
  }
  // Polygon of lowest exponents: points (k, min x-exponent of the s^k row).
  std::vector<std::pair<int, int>> pts;
  for (int k = 0; k <= p.order_t(); ++k) {
    int jk = -1;
    for (int j = 0; j <= p.order_x(); ++j)
      if (std::abs(p.coeff(j, k)) > tol) {
        jk = j;
        break;
      }
    if (jk >= 0) pts.emplace_back(k, jk);
  }
  int curk = pts.front().first;
  int curj = pts.front().second;
  while (curj > 0) {
    double bestq = -1.0;
    int bk = -1, bj = -1;
    for (const auto& [k, jk] : pts) {
      if (k <= curk || jk >= curj) continue;
      const double q = static_cast<double>(curj - jk) / (k - curk);
      if (q > bestq + 1e-12 || (std::abs(q - bestq) <= 1e-12 && k > bk)) {
        bestq = q;
        bk = k;
        bj = jk;
      }
    }
    if (bk < 0) break;
    const int dj = curj - bj, dk = bk - curk;
    if (dj % dk != 0) {
      const int g = std::gcd(dj, dk);
      const int pn = dj / g, pd = dk / g;
      if (report_fractional && depth == 0) {
        if (pn > 1)
          unresolved.push_back("branch with fractional exponent " + std::to_string(pn) + "/" +
                               std::to_string(pd) +
                               " (not a power series in either variable)");
        // pn == 1: the transposed pass recovers it as x = gamma(s).
      } else if (depth > 0) {
        unresolved.push_back("fractional exponent " + std::to_string(pn) + "/" +
                             std::to_string(pd) + " inside a nested expansion");
      }
    } else {
      const int q = dj / dk;
      const int V = curj + q * curk;
      Poly edge;
      for (int k = curk; k <= bk; ++k) {
        const int j = V - q * k;
        edge.push_back(j >= 0 && j <= p.order_x() ? p.coeff(j, k) : cplx{});
      }
      for (const ClusteredRoot& root : clustered_roots(poly_trim(edge))) {
        const cplx c = root.center;
        if (std::abs(c) < 1e-12) continue;
        std::vector<Series1> subs;
        expand_branches(substitute_edge(p, q, c, V), depth + 1, max_depth, eps,
                        report_fractional, subs, unresolved);
        for (const Series1& sw : subs) {
          Series1 f(J);
          if (q <= J) f.set(q, c);
          for (int j = 0; j + q <= J; ++j) f.set(j + q, f.coeff(j + q) + sw.coeff(j));
          out.push_back(f);
        }
      }
    }
    curk = bk;
    curj = bj;
  }
}

/// Largest m such that (t - center - f0)^m divides s (f0(0) = 0).
inline int curve_multiplicity(const Series2& s, const Series1& f0, cplx center, double eps) {
  const Series2 shifted = center == cplx{} ? s : s.shift_t_const(center);
  int m = 0;
  while (m < s.order_t() && divide_by_curve(shifted, f0, m + 1, eps).ok) ++m;
  return m;
}

}  // namespace detail

/// The critical curves of the family through the central fiber: zeros of the
/// t-derivative determinant, expanded as power-series branches t = f(x)
/// (plus vertical branches x = g(t) tangent to the divisor), classified by
/// the behavior of the value of the family along them.
inline CriticalCurves classify_critical_curves(const RationalFamily& fam, double eps = kCoeffTol,
                                               int max_depth = 12) {
  Series2 w = family_wronskian_t(fam);
  const double wscale = std::max(1.0, w.max_abs());
  if (w.max_abs() <= eps * wscale)
    throw domain_error("the family is constant in the fiber variable");
  CriticalCurves out;
  const int idiv = w.x_valuation(eps * wscale);
  if (idiv >= 1) {
    out.divisor_multiplicity = idiv;
    w = w.divide_x_power(idiv, wscale);
  }
  const int J = w.order_x();
  // Fiber centers: roots of the determinant restricted to x = 0.
  const Series1 w0 = w.at_x0();
  Poly p0(w0.coeffs().begin(), w0.coeffs().end());
  p0 = poly_trim(p0, 1e-12);
  if (poly_degree(p0) < 0) throw numerical_error("determinant restriction vanished unexpectedly");

  const auto classify_value = [&](const Series1& vn_in, const Series1& vd_in, CriticalBranch& br) {
    const double vscale =
        std::max(1.0, std::max(vn_in.max_abs(), vd_in.max_abs()));
    const double vtol = eps * vscale;
    if (vd_in.max_abs() <= vtol) {
      if (vn_in.max_abs() <= vtol)
        throw numerical_error("family restricted to a branch is 0/0 beyond tolerance");
      br.value_constant = true;
      br.value_is_inf = true;
      return;
    }
    const int v0 = std::min(detail::series1_valuation(vn_in, vtol),
                            detail::series1_valuation(vd_in, vtol));
    const Series1 vn = detail::series1_shift_down(vn_in, v0);
    const Series1 vd = detail::series1_shift_down(vd_in, v0);
    const cplx n0 = vn.coeff(0), d0 = vd.coeff(0);
    const Series1 cross = cplx(d0) * vn - cplx(n0) * vd;
    const bool constant = cross.max_abs() <= vtol * std::max(1.0, std::abs(d0));
    if (std::abs(d0) <= vtol) {
      br.value_constant = false;  // pole at the center but varying along the branch
      br.value_is_inf = true;
      return;
    }
    br.value_series = divide(vn, vd, vtol);
    br.value_constant = constant;
    if (constant) br.value = n0 / d0;
  };

  for (const ClusteredRoot& cl : clustered_roots(p0)) {
    const cplx t0 = cl.center;
    const Series2 shifted = w.shift_t_const(t0);
    // Horizontal branches t = t0 + sigma(x).
    std::vector<Series1> sigmas;
    detail::expand_branches(shifted, 0, max_depth, eps, true, sigmas, out.unresolved);
    for (const Series1& sg : sigmas) {
      CriticalBranch br;
      br.vertical = false;
      br.center = t0;
      br.curve = sg.resized(J);
      br.curve.set(0, t0);
      br.multiplicity = std::max(1, detail::curve_multiplicity(w, sg.resized(J), t0, eps));
      const Series1 f0 = [&] {
        Series1 f = sg.resized(J);
        f.set(0, 0.0);
        return f;
      }();
      const Series1 vn = fam.num.shift_t_const(t0).eval_t(f0, eps);
      const Series1 vd = fam.den.shift_t_const(t0).eval_t(f0, eps);
      classify_value(vn, vd, br);
      br.kind = br.value_constant ? BranchKind::level : BranchKind::non_invariant;
      out.branches.push_back(std::move(br));
    }
    // Vertical branches x = gamma(s), s = t - t0, tangent to the divisor.
    std::vector<Series1> gammas;
    std::vector<std::string> vertical_notes;
    detail::expand_branches(shifted.transposed(), 0, max_depth, eps, false, gammas,
                            vertical_notes);
    for (const Series1& gm : gammas) {
      const int val = detail::series1_valuation(gm, eps);
      if (val <= 1) continue;  // transversal: already found as a horizontal branch
      if (val > gm.order()) continue;  // gamma = 0 is the divisor itself
      CriticalBranch br;
      br.vertical = true;
      br.center = t0;
      br.curve = gm;
      br.contact = val - 1;
      br.multiplicity =
          std::max(1, detail::curve_multiplicity(w.transposed(), gm, cplx{}, eps));
      const Series1 vn = fam.num.shift_t_const(t0).transposed().eval_t(gm, eps);
      const Series1 vd = fam.den.shift_t_const(t0).transposed().eval_t(gm, eps);
      classify_value(vn, vd, br);
      br.kind = BranchKind::divisor_tangent;
      out.branches.push_back(std::move(br));
    }
    for (std::string& note : vertical_notes)
      if (note.find("fractional") == std::string::npos)  // slope-1 duplicates carry no news
        out.unresolved.push_back(std::move(note));
  }
  return out;
}

/// Check that (t - f)^m divides BOTH partial-derivative determinants of the
/// family (in x and in t); the defining property of an m-fold critical curve
/// of every member map simultaneously.
inline bool verify_dR_factor(const RationalFamily& fam, const CriticalBranch& br, int m,
                             double eps = kCoeffTol) {
  const Series2 a = family_wronskian_x(fam);
  const Series2 b = family_wronskian_t(fam);
  if (!br.vertical) {
    Series1 f0 = br.curve;
    f0.set(0, 0.0);
    const Series2 as = br.center == cplx{} ? a : a.shift_t_const(br.center);
    const Series2 bs = br.center == cplx{} ? b : b.shift_t_const(br.center);
    return divide_by_curve(as, f0, m, eps).ok && divide_by_curve(bs, f0, m, eps).ok;
  }
  const Series2 as = (br.center == cplx{} ? a : a.shift_t_const(br.center)).transposed();
  const Series2 bs = (br.center == cplx{} ? b : b.shift_t_const(br.center)).transposed();
  return divide_by_curve(as, br.curve, m, eps).ok && divide_by_curve(bs, br.curve, m, eps).ok;
}

/// Post-compose the family with a polynomial Q of the value:
/// (Q∘R) = sum_j Q_j num^j den^(D-j) / den^D.
inline RationalFamily post_compose(const RationalFamily& fam, const Poly& q) {
  const int D = poly_degree(q);
  if (D < 1) throw domain_error("post-composition needs a non-constant polynomial");
  const int J = std::min(fam.num.order_x(), fam.den.order_x());
  const int K = std::min(fam.num.order_t(), fam.den.order_t());
  std::vector<Series2> num_pow{Series2::constant(1.0, J, K)};
  std::vector<Series2> den_pow{Series2::constant(1.0, J, K)};
  for (int i = 1; i <= D; ++i) {
    num_pow.push_back(num_pow.back() * fam.num);
    den_pow.push_back(den_pow.back() * fam.den);
  }
  Series2 num(J, K);
  for (int j = 0; j <= D; ++j)
    num = num + q[static_cast<std::size_t>(j)] *
                    (num_pow[static_cast<std::size_t>(j)] *
                     den_pow[static_cast<std::size_t>(D - j)]);
  return RationalFamily{num, den_pow.back()};
}

/// Deck involution of the family's value restricted to the central fiber
/// around a double point t = center of the restriction: the level function
/// g(s) = R(0, center + s) - R(0, center) must vanish to order exactly 2.
inline Involution family_level_involution(const RationalFamily& fam, cplx center,
                                          double eps = kCoeffTol) {
  Series1 n0 = fam.num.shift_t_const(center).at_x0();
  Series1 d0 = fam.den.shift_t_const(center).at_x0();
  const double scale = std::max(1.0, std::max(n0.max_abs(), d0.max_abs()));
  if (d0.max_abs() <= eps * scale) {
    if (n0.max_abs() <= eps * scale)
      throw domain_error("family restricts to 0/0 on the central fiber");
    std::swap(n0, d0);  // value is identically infinite: use the reciprocal chart
  }
  if (magnitude(d0.coeff(0)) <= eps * scale)
    throw domain_error("central fiber value has a pole at the chosen center");
  const cplx a = n0.coeff(0) / d0.coeff(0);
  Series1 g = divide(n0 - cplx(a) * d0, d0, eps);
  g.set(0, 0.0);
  return involution_from_level(g, eps);
}

}  // namespace folium
