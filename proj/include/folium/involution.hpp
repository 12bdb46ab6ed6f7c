#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folium/errors.hpp"
#include "folium/polynomial.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"

namespace folium {

/// Result of testing i∘i = t order by order.
struct InvolutionCheck {
  int verified_order = 0;      // largest k' with all residual coeffs <= eps up to t^{k'}
  int first_failure = -1;      // index of the first offending coefficient, -1 if none up to k
  double failure_size = 0.0;   // its magnitude
};

/// Largest k' <= k with compose(f,f) = t mod t^{k'+1} within eps, plus the
/// first failing coefficient when k' < k.
inline InvolutionCheck check_involution(const Series1& f, int k, double eps = kCoeffTol) {
  if (k > f.order()) throw domain_error("check order exceeds series truncation order");
  if (k < 0) throw domain_error("check order must be nonnegative");
  if (magnitude(f.coeff(0)) > eps) {
    InvolutionCheck out;
    out.verified_order = -1;
    out.first_failure = 0;
    out.failure_size = magnitude(f.coeff(0));
    return out;
  }
  Series1 r = compose(f, f, eps);
  r.set(1, r.coeff(1) - 1.0);  // residual i(i(t)) - t
  InvolutionCheck out;
  out.verified_order = k;
  for (int j = 0; j <= k; ++j) {
    const double a = std::abs(r.coeff(j));
    if (a > eps) {
      out.verified_order = j - 1;
      out.first_failure = j;
      out.failure_size = a;
      break;
    }
  }
  return out;
}

/// A series certified to be involutive to some order: i(0)=0, i'(0)=-1, and
/// i∘i = t mod t^{verified_order+1}.  verified_order is always recomputed.
struct Involution {
  Series1 series;
  int verified_order = 0;
};

inline Involution make_involution(const Series1& s, double eps = kCoeffTol) {
  if (magnitude(s.coeff(0)) > eps) throw domain_error("involution must fix 0");
  if (magnitude(s.coeff(1) + 1.0) > eps)
    throw domain_error("involution must have linear coefficient -1");
  Involution inv;
  inv.series = s;
  inv.verified_order = check_involution(s, s.order(), eps).verified_order;
  if (inv.verified_order < 1) throw domain_error("series is not involutive even at order 1");
  return inv;
}

/// phi ∘ (-id) ∘ phi^{-1} for any phi with phi(0)=0, phi'(0) != 0: an
/// involution to full truncation order.
inline Involution involution_from_conjugator(const Series1& phi, double eps = kCoeffTol) {
  if (magnitude(phi.coeff(0)) > eps) throw domain_error("conjugator must fix 0");
  if (magnitude(phi.coeff(1)) <= eps)
    throw domain_error("conjugator must have nonzero linear coefficient");
  Series1 i = compose(phi, -comp_inverse(phi, eps), eps);  // phi ∘ (-id) ∘ phi^{-1}
  return make_involution(i, eps);
}

/// The deck transformation of a simple critical level g (g(0)=0, g'(0)=0,
/// g''(0) != 0): the unique i != id with g∘i = g mod t^{N+1} and i'(0) = -1,
/// solved coefficient by coefficient.  The topmost coefficient uses the
/// canonical zero extension of g one order past its window.
inline Involution involution_from_level(const Series1& g, double eps = kCoeffTol) {
  if (magnitude(g.coeff(0)) > eps) throw domain_error("level function must vanish at 0");
  if (magnitude(g.coeff(1)) > eps)
    throw domain_error("level function must have a critical point at 0");
  const cplx g2 = g.coeff(2);
  if (magnitude(g2) <= eps)
    throw domain_error("level function must have a simple (nondegenerate) critical point at 0");
  const int n = g.order();
  Series1 gx = g.resized(n + 1);  // zero extension fixes the topmost coefficient
  gx.set(0, 0.0);
  gx.set(1, 0.0);
  Series1 i(n);
  i.set(1, -1.0);
  for (int m = 2; m <= n; ++m) {
    // residual uses i known through order m-1; the t^{m+1} coefficient of
    // g∘i - g is (known part) - 2 g2 a_m.
    Series1 res = compose(gx, i.resized(n + 1), eps) - gx;
    i.set(m, res.coeff(m + 1) / (2.0 * g2));
  }
  return make_involution(i, eps);
}

/// Moebius transformation fixing 0: g(t) = a t / (1 + b t), a != 0.
struct Moebius {
  cplx a{1.0};
  cplx b{0.0};
};

inline Moebius moebius_compose(const Moebius& g1, const Moebius& g2) {
  // (g1 ∘ g2)(t) = a1 (a2 t/(1+b2 t)) / (1 + b1 a2 t/(1+b2 t))
  return Moebius{g1.a * g2.a, g2.b + g2.a * g1.b};
}

inline Moebius moebius_inverse(const Moebius& g) {
  if (magnitude(g.a) == 0.0) throw domain_error("Moebius map requires a != 0");
  return Moebius{1.0 / g.a, -g.b / g.a};
}

inline cplx moebius_eval(const Moebius& g, cplx t) { return g.a * t / (1.0 + g.b * t); }

/// Taylor coefficients: a t/(1+bt) = sum_{j>=1} a(-b)^{j-1} t^j.
inline Series1 moebius_series(const Moebius& g, int order) {
  if (magnitude(g.a) == 0.0) throw domain_error("Moebius map requires a != 0");
  Series1 s(order);
  cplx c = g.a;
  for (int j = 1; j <= order; ++j) {
    s.set(j, c);
    c *= -g.b;
  }
  return s;
}

/// g^{-1} ∘ i ∘ g truncated to the involution's order (a right action:
/// conjugating by g then h equals conjugating by g∘h).
inline Involution moebius_conjugate(const Moebius& g, const Involution& i,
                                    double eps = kCoeffTol) {
  const int n = i.series.order();
  Series1 gs = moebius_series(g, n);
  Series1 gsinv = moebius_series(moebius_inverse(g), n);
  Series1 conj = compose(gsinv, compose(i.series, gs, eps), eps);
  return make_involution(conj, eps);
}

/// Same conjugation on a bare series (no involution validation).
inline Series1 moebius_conjugate_series(const Moebius& g, const Series1& f,
                                        double eps = kCoeffTol) {
  const int n = f.order();
  return compose(moebius_series(moebius_inverse(g), n), compose(f, moebius_series(g, n), eps),
                 eps);
}

/// Outcome of the G-orbit matching problem.
struct OrbitResult {
  bool witness_found = false;
  bool definitive = true;      // false only for the least-squares fallback path
  Moebius witness;             // valid when witness_found
  double residual = 0.0;       // max coefficient mismatch of the verified conjugation
  int obstruction_order = -1;  // first order whose matching equation is unsolvable
  std::string detail;
};

namespace detail {

/// Interpolate the polynomial (degree <= nodes-1) taking value samples[s] at
/// nodes[s], by solving the Vandermonde system with partial pivoting.
inline Poly interpolate(const std::vector<cplx>& nodes, const std::vector<cplx>& samples) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<cplx>> m(static_cast<std::size_t>(n),
                                   std::vector<cplx>(static_cast<std::size_t>(n) + 1));
  for (int r = 0; r < n; ++r) {
    cplx p = 1.0;
    for (int c = 0; c < n; ++c) {
      m[r][c] = p;
      p *= nodes[static_cast<std::size_t>(r)];
    }
    m[r][static_cast<std::size_t>(n)] = samples[static_cast<std::size_t>(r)];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    for (int r = c + 1; r < n; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Poly coef(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = m[r][static_cast<std::size_t>(n)];
    for (int c = r + 1; c < n; ++c) acc -= m[r][c] * coef[static_cast<std::size_t>(c)];
    coef[static_cast<std::size_t>(r)] = acc / m[r][r];
  }
  return coef;
}

}  // namespace detail

/// Search for g in the Moebius stabilizer with g^{-1}∘i1∘g = i2 mod t^{k+1}.
///
/// The t^2 equation is linear in b with unit coefficient, so b is eliminated:
/// b(a) = (q2 - a p2)/2.  Each residual coefficient of the conjugation is then
/// a polynomial in a alone; the first order whose polynomial is non-constant
/// yields finitely many candidate values of a (every witness must be among
/// them), each verified by full re-conjugation.  Orders whose polynomial is
/// constant are either vacuous (consistent) or an outright obstruction.
inline OrbitResult g_orbit_equivalent(const Involution& i1, const Involution& i2, int k,
                                      double eps_match = 1e-8) {
  if (i1.verified_order < 1 || i2.verified_order < 1)
    throw domain_error("orbit matching requires involutions verified at least to order 1");
  const int n = std::min(i1.series.order(), i2.series.order());
  if (k > n) throw domain_error("matching order exceeds series truncation order");
  if (k < 2) k = 2;
  const Series1 f1 = i1.series.resized(n);
  const Series1 f2 = i2.series.resized(n);
  const cplx p2 = f1.coeff(2), q2 = f2.coeff(2);

  const auto conj_with = [&](cplx a) {
    Moebius m{a, (q2 - a * p2) / 2.0};
    return moebius_conjugate_series(m, f1);
  };
  const auto verify = [&](cplx a) {
    double r = 0;
    Series1 c = conj_with(a);
    for (int j = 0; j <= k; ++j) r = std::max(r, std::abs(c.coeff(j) - f2.coeff(j)));
    return r;
  };

  OrbitResult out;
  // Trivially matched up to order 2 by the choice of b; scan upward for the
  // first coefficient that actually constrains a.
  for (int j = 3; j <= k; ++j) {
    // coeff_j(conjugation) is a polynomial of degree <= j-1 in a.
    const int deg = j - 1;
    std::vector<cplx> nodes, samples;
    for (int s = 0; s <= deg; ++s) {
      const double ang = 2.0 * 3.14159265358979323846 * s / (deg + 1);
      const cplx a = (1.0 + 0.25 * s) * std::polar(1.0, ang + 0.37);
      nodes.push_back(a);
      samples.push_back(conj_with(a).coeff(j) - f2.coeff(j));
    }
    Poly r = detail::interpolate(nodes, samples);
    double hi = 0;
    for (std::size_t c = 1; c < r.size(); ++c) hi = std::max(hi, std::abs(r[c]));
    const double scale = std::max(1.0, poly_scale(r));
    if (hi <= 1e-11 * scale) {
      // a-independent at this order: either vacuous or an obstruction.
      if (std::abs(r[0]) > eps_match) {
        out.witness_found = false;
        out.obstruction_order = j;
        out.residual = std::abs(r[0]);
        out.detail = "matching equation at order " + std::to_string(j) +
                     " is independent of the remaining parameter and unsatisfiable";
        return out;
      }
      continue;
    }
    // Finitely many candidates; every witness must satisfy this equation.
    std::vector<cplx> cand = poly_roots(r);
    double best = 1e300;
    cplx besta{};
    for (cplx a : cand) {
      if (std::abs(a) < 1e-8) continue;  // not a Moebius map
      const double res = verify(a);
      if (res < best) {
        best = res;
        besta = a;
      }
    }
    if (best <= eps_match) {
      out.witness_found = true;
      out.witness = Moebius{besta, (q2 - besta * p2) / 2.0};
      out.residual = best;
      out.detail = "parameter fixed by the order-" + std::to_string(j) + " matching equation";
      return out;
    }
    out.witness_found = false;
    out.obstruction_order = j;
    out.residual = best;
    out.detail = "no root of the order-" + std::to_string(j) +
                 " matching equation extends to a full conjugation within tolerance";
    return out;
  }
  // Every order up to k is a-independent and consistent: any a works.
  const double res = verify(1.0);
  if (res <= eps_match) {
    out.witness_found = true;
    out.witness = Moebius{1.0, (q2 - p2) / 2.0};
    out.residual = res;
    out.detail = "every matching equation is vacuous; unit scaling witness";
    return out;
  }
  // Numerically ambiguous corner: fall back to a sampled least-squares search.
  out.definitive = false;
  double best = res;
  cplx besta = 1.0;
  for (int s = 0; s < 64; ++s) {
    const double ang = 2.0 * 3.14159265358979323846 * s / 64.0;
    for (double rad : {0.5, 1.0, 2.0}) {
      const cplx a = std::polar(rad, ang);
      const double r = verify(a);
      if (r < best) {
        best = r;
        besta = a;
      }
    }
  }
  out.residual = best;
  out.witness_found = best <= eps_match;
  out.witness = Moebius{besta, (q2 - besta * p2) / 2.0};
  out.detail = "least-squares fallback (heuristic)";
  return out;
}

}  // namespace folium
