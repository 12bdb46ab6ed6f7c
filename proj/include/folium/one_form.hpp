#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "folium/errors.hpp"
#include "folium/involution.hpp"
#include "folium/polynomial.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"
#include "folium/series2.hpp"

namespace folium {

/// A 1-form p·dx + q·d(second variable).  In frame "xy" the second variable
/// is y (germ at the origin); in frame "xt" it is the divisor coordinate t
/// after the substitution y = t·x.
struct OneForm {
  Series2 p;
  Series2 q;
  std::string frame = "xy";
};

struct BlowUpResult {
  OneForm form;  // frame "xt"
  int k = 0;     // power of x divided out of both coefficients
};

/// Substitute y = t·x, dy = t·dx + x·dt, and strip the largest common power
/// of x from both coefficients.
inline BlowUpResult blow_up(const OneForm& w, double eps = kCoeffTol) {
  if (w.frame != "xy") throw domain_error("blow-up expects a form in the (x, y) frame");
  const int K = std::max(w.p.order_t(), w.q.order_t());
  const int J = std::max(w.p.order_x(), w.q.order_x());
  const Series2 ps = w.p.resized(J, K).blow_up_substitute();              // window (J+K, K)
  const Series2 qs = w.q.resized(J, K).blow_up_substitute();
  const int JX = J + K + 1, KT = K + 1;
  Series2 a = ps.resized(JX, KT) + qs.resized(JX, KT).times_t_power(1).resized(JX, KT);
  Series2 b = qs.resized(JX - 1, KT).times_x_power(1);
  a = a.resized(JX, KT);
  b = b.resized(JX, KT);
  if (a.is_zero(eps) && b.is_zero(eps)) throw domain_error("the form is identically zero");
  const int ka = a.is_zero(eps) ? JX + 1 : a.x_valuation(eps);
  const int kb = b.is_zero(eps) ? JX + 1 : b.x_valuation(eps);
  const int k = std::min(ka, kb);
  BlowUpResult out;
  out.k = k;
  out.form.frame = "xt";
  out.form.p = a.divide_x_power(k, eps);
  out.form.q = b.divide_x_power(k, eps);
  return out;
}

/// Verdict of the blow-up normal-form test.
struct T1Report {
  bool ok = false;
  cplx beta{};
  cplx scale{1.0};  // common unit scalar of the normalized jets
  std::string reason;
};

/// Test the normal-form jet conditions, tolerating one overall scalar c:
/// degree-0 and 1 parts of both coefficients vanish, the dy-coefficient's
/// quadratic part is -c·xy, the dx-coefficient's quadratic part is c·y², and
/// x·(cubic of dx-coeff) + y·(cubic of dy-coeff) = c·β·x⁴ with β ≠ 0.
inline T1Report is_T1(const OneForm& w, double eps = kCoeffTol) {
  T1Report r;
  if (w.frame != "xy") throw domain_error("normal-form test expects the (x, y) frame");
  const Series2& P = w.p;
  const Series2& Q = w.q;
  for (int d = 0; d <= 1; ++d)
    for (int j = 0; j <= d; ++j) {
      if (std::abs(P.coeff(j, d - j)) > eps) {
        r.reason = "dx-coefficient has nonzero jet below degree 2";
        return r;
      }
      if (std::abs(Q.coeff(j, d - j)) > eps) {
        r.reason = "dy-coefficient has nonzero jet below degree 2";
        return r;
      }
    }
  const cplx c = -Q.coeff(1, 1);
  if (std::abs(c) <= eps) {
    r.reason = "quadratic part of the dy-coefficient is not a multiple of xy";
    return r;
  }
  const double tol = eps * (1.0 + std::abs(c));
  if (std::abs(Q.coeff(2, 0)) > tol || std::abs(Q.coeff(0, 2)) > tol) {
    r.reason = "quadratic part of the dy-coefficient is not a multiple of xy";
    return r;
  }
  if (std::abs(P.coeff(0, 2) - c) > tol || std::abs(P.coeff(2, 0)) > tol ||
      std::abs(P.coeff(1, 1)) > tol) {
    r.reason = "quadratic part of the dx-coefficient does not match y² times the xy-scale";
    return r;
  }
  // T = x·P3 + y·Q3 must be beta·c·x^4: within each degree-4 monomial the
  // two contributions may cancel, so test the combined coefficient.
  cplx t4{};
  for (int a = 0; a <= 4; ++a) {
    const int b = 4 - a;
    const cplx combo = (a >= 1 ? P.coeff(a - 1, b) : cplx{}) +
                       (b >= 1 ? Q.coeff(a, b - 1) : cplx{});
    if (a == 4) {
      t4 = combo;
    } else if (std::abs(combo) > tol) {
      r.reason = "cubic tangency combination has a monomial besides x⁴";
      return r;
    }
  }
  const cplx beta = t4 / c;
  if (std::abs(beta) <= eps) {
    r.reason = "tangency coefficient β vanishes";
    return r;
  }
  r.ok = true;
  r.beta = beta;
  r.scale = c;
  return r;
}

/// Point of tangency of the foliation with the exceptional divisor x = 0.
struct TangencyDatum {
  cplx t0{};
  int order = 1;
};

namespace detail {

inline int local_order(const Poly& p, cplx t0, double tol) {
  Poly d = p;
  const double scale = std::max(1.0, poly_scale(p));
  for (int r = 0; r <= poly_degree(p); ++r) {
    if (std::abs(poly_eval(d, t0)) > tol * scale) return r;
    d = poly_derivative(d);
  }
  return poly_degree(p) + 1;
}

}  // namespace detail

/// Tangency points of the foliation with the divisor x=0: roots of the
/// dt-coefficient restricted to x=0, with orders counted after common curve
/// factors of the two coefficients are removed.
inline std::vector<TangencyDatum> tangencies(const OneForm& w, double eps = kCoeffTol) {
  if (w.frame != "xt") throw domain_error("tangency extraction expects the (x, t) frame");
  const Series1 a0 = w.p.at_x0();
  const Series1 b0 = w.q.at_x0();
  Poly A(a0.coeffs().begin(), a0.coeffs().end());
  Poly B(b0.coeffs().begin(), b0.coeffs().end());
  const bool a_zero = poly_is_zero(A, eps);
  const bool b_zero = poly_is_zero(B, eps);
  if (a_zero && b_zero)
    throw domain_error("both coefficients vanish on the divisor: the form is singular along x=0");
  if (b_zero) {
    const Poly At = poly_trim(A, 1e-12);
    if (poly_degree(At) >= 1) {
      const auto rts = clustered_roots(At);
      throw domain_error("the exceptional divisor is invariant and carries a singular point near t=" +
                         std::to_string(rts.front().center.real()));
    }
    throw domain_error("the exceptional divisor is invariant (dt-coefficient vanishes on x=0)");
  }
  std::vector<TangencyDatum> out;
  const Poly Bt = poly_trim(B, 1e-12);
  if (poly_degree(Bt) < 1) return out;  // nowhere tangent
  for (const ClusteredRoot& root : clustered_roots(Bt)) {
    const cplx t0 = root.center;
    const int ord_b = root.multiplicity;
    if (a_zero)
      throw domain_error("singular point on the divisor: both coefficients vanish at t=" +
                         std::to_string(t0.real()));
    const int ord_a = detail::local_order(A, t0, eps);
    const int common = std::min(ord_a, ord_b);
    if (common > 0) {
      // A common zero is only acceptable when it comes from a curve factor of
      // the whole form, i.e. (t - t0)^common divides both coefficients.
      if (w.p.shift_t_const(t0).t_valuation(eps) < common ||
          w.q.shift_t_const(t0).t_valuation(eps) < common)
        throw domain_error("singular point on the divisor at t=" + std::to_string(t0.real()));
    }
    const int net = ord_b - ord_a;
    if (net >= 1) out.push_back(TangencyDatum{t0, net});
  }
  std::sort(out.begin(), out.end(), [](const TangencyDatum& l, const TangencyDatum& r) {
    return l.t0.real() != r.t0.real() ? l.t0.real() < r.t0.real() : l.t0.imag() < r.t0.imag();
  });
  return out;
}

/// Local first integral F of a form regular at the origin with the divisor
/// fibration adapted: F(x,0) = x and dF ∧ ω = 0 mod truncation.  Solved by
/// the coefficient recursion of F_t = (q/p)·F_x.
inline Series2 first_integral(const OneForm& w, double eps = kCoeffTol) {
  if (w.frame != "xt") throw domain_error("first integral expects the (x, t) frame");
  const int J = std::min(w.p.order_x(), w.q.order_x());
  const int K = std::min(w.p.order_t(), w.q.order_t());
  const Series2 A = w.p.resized(J, K);
  const Series2 B = w.q.resized(J, K);
  if (std::abs(A.coeff(0, 0)) <= eps)
    throw domain_error("dx-coefficient vanishes at the origin: frame not adapted, recentre first");
  const Series2 C = divide(B, A, eps);
  std::vector<Series1> phi;  // F = sum_k phi_k(x) t^k
  phi.reserve(static_cast<std::size_t>(K) + 1);
  phi.push_back(Series1::var(J));
  std::vector<Series1> cslice;
  cslice.reserve(static_cast<std::size_t>(K) + 1);
  for (int i = 0; i <= K; ++i) cslice.push_back(C.t_slice(i));
  for (int k = 0; k < K; ++k) {
    Series1 acc(J);
    for (int i = 0; i <= k; ++i)
      acc = acc + (cslice[static_cast<std::size_t>(i)] *
                   phi[static_cast<std::size_t>(k - i)].derivative().resized(J));
    phi.push_back(cplx(1.0 / (k + 1)) * acc);
  }
  return Series2::from_t_slices(phi, J);
}

/// Everything computed along the way from a germ to its divisor involution.
struct InvolutionPipeline {
  cplx beta{};
  int k = 0;                 // x-power stripped during blow-up
  OneForm reduced;           // the blown-up form, frame "xt"
  TangencyDatum tangency;    // the unique simple tangency
  Series2 first_int;         // F with F(x,0)=x
  Series1 level;             // g(t) = F(0,t) - F(0,0)
  Involution involution;
};

/// Full pipeline: normal-form test, blow-up, tangency extraction (expecting
/// exactly one simple tangency), first integral, and the deck involution of
/// the level function on the divisor.
inline InvolutionPipeline involution_of(const OneForm& w, int order = -1,
                                        double eps = kCoeffTol) {
  InvolutionPipeline out;
  const T1Report t1 = is_T1(w, eps);
  if (!t1.ok) throw domain_error("germ fails the blow-up normal-form test: " + t1.reason);
  out.beta = t1.beta;
  const int n = order > 0 ? order
                          : std::max(std::max(w.p.order_x(), w.p.order_t()),
                                     std::max(w.q.order_x(), w.q.order_t()));
  OneForm padded{w.p.resized(n, n), w.q.resized(n, n), "xy"};
  BlowUpResult bu = blow_up(padded, eps);
  // The x-window stays one step ahead of the t-window so that every
  // coefficient of the restriction F(0, ·) is exact.
  const int KT = bu.form.p.order_t();
  bu.form.p = bu.form.p.resized(KT + 1, KT);
  bu.form.q = bu.form.q.resized(KT + 1, KT);
  out.k = bu.k;
  const std::vector<TangencyDatum> tang = tangencies(bu.form, eps);
  if (tang.size() != 1 || tang.front().order != 1)
    throw domain_error("not a single simple tangency after blow-up: found " +
                       std::to_string(tang.size()) + " tangency point(s)");
  out.tangency = tang.front();
  if (std::abs(out.tangency.t0) > 1e-8) {
    bu.form.p = bu.form.p.shift_t_const(out.tangency.t0);
    bu.form.q = bu.form.q.shift_t_const(out.tangency.t0);
  }
  out.reduced = bu.form;
  out.first_int = first_integral(bu.form, eps);
  Series1 g = out.first_int.x_slice(0);
  g.set(0, 0.0);
  out.level = g;
  out.involution = involution_from_level(g, eps);
  return out;
}

/// Construct a normal-form germ (y² + βx³ + …)dx − (xy + …)dy.  The cubic
/// part of the dy-perturbation is compensated in the dx-coefficient so the
/// degree-3 tangency combination stays β·x⁴; a pure y³ perturbation admits no
/// such compensation and is rejected.
inline OneForm model_from_beta(cplx beta, const Series2& higher_a, const Series2& higher_b,
                               int order_x = 8, int order_y = 8, double eps = kCoeffTol) {
  if (std::abs(beta) <= eps) throw domain_error("the tangency coefficient β must be nonzero");
  const int low_a = higher_a.lowest_total_degree(eps);
  if (low_a >= 0 && low_a < 3)
    throw domain_error("dy-perturbation must start at total degree 3");
  const int low_b = higher_b.lowest_total_degree(eps);
  if (low_b >= 0 && low_b < 4)
    throw domain_error("dx-perturbation must start at total degree 4");
  if (std::abs(higher_a.coeff(0, 3)) > eps)
    throw domain_error("a y³ term in the dy-perturbation cannot keep the tangency combination "
                       "proportional to x⁴");
  OneForm w;
  w.frame = "xy";
  w.p = Series2(order_x, order_y);
  w.q = Series2(order_x, order_y);
  w.p.set(0, 2, 1.0);         // y²
  if (order_x >= 3) w.p.add(3, 0, beta);
  w.q.set(1, 1, -1.0);        // -xy
  for (int j = 0; j <= std::min(order_x, higher_a.order_x()); ++j)
    for (int k = 0; k <= std::min(order_y, higher_a.order_t()); ++k) {
      const cplx v = higher_a.coeff(j, k);
      if (v == cplx{}) continue;
      w.q.add(j, k, -v);
      if (j + k == 3) w.p.add(j - 1, k + 1, v);  // y·(monomial/x) compensation
    }
  for (int j = 0; j <= std::min(order_x, higher_b.order_x()); ++j)
    for (int k = 0; k <= std::min(order_y, higher_b.order_t()); ++k)
      if (higher_b.coeff(j, k) != cplx{}) w.p.add(j, k, higher_b.coeff(j, k));
  return w;
}

/// The coordinate scaling y -> λ·y applied to a form in the (x, y) frame:
/// P(x,y)dx + Q(x,y)dy becomes P(x,λy)dx + λ·Q(x,λy)dy.
inline OneForm scale_y(const OneForm& w, cplx lambda) {
  if (w.frame != "xy") throw domain_error("the y-scaling acts on the (x, y) frame");
  if (lambda == cplx{}) throw domain_error("scaling factor must be nonzero");
  OneForm out;
  out.frame = "xy";
  out.p = Series2(w.p.order_x(), w.p.order_t());
  out.q = Series2(w.q.order_x(), w.q.order_t());
  for (int j = 0; j <= w.p.order_x(); ++j) {
    cplx pw{1.0};
    for (int k = 0; k <= w.p.order_t(); ++k) {
      out.p.set(j, k, w.p.coeff(j, k) * pw);
      pw *= lambda;
    }
  }
  for (int j = 0; j <= w.q.order_x(); ++j) {
    cplx pw = lambda;
    for (int k = 0; k <= w.q.order_t(); ++k) {
      out.q.set(j, k, w.q.coeff(j, k) * pw);
      pw *= lambda;
    }
  }
  return out;
}

}  // namespace folium
