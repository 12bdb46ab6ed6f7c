#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "folium/errors.hpp"
#include "folium/scalar.hpp"

namespace folium {

/// Dense univariate polynomial, coefficients ascending: p[j] multiplies t^j.
using Poly = std::vector<cplx>;

inline double poly_scale(const Poly& p) {
  double s = 0;
  for (const auto& c : p) s = std::max(s, std::abs(c));
  return s;
}

/// Drop trailing coefficients that are negligible relative to the largest one.
inline Poly poly_trim(const Poly& p, double rel_tol = 1e-13) {
  const double cut = poly_scale(p) * rel_tol;
  Poly q = p;
  while (q.size() > 1 && std::abs(q.back()) <= cut) q.pop_back();
  if (q.empty()) q.push_back(cplx{});
  return q;
}

inline int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline bool poly_is_zero(const Poly& p, double tol = 1e-14) { return poly_scale(p) <= tol; }

inline cplx poly_eval(const Poly& p, cplx t) {
  cplx r{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
  return r;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{cplx{}};
  Poly d(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = static_cast<double>(j) * p[j];
  return d;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), cplx{});
  for (std::size_t j = 0; j < a.size(); ++j) r[j] += a[j];
  for (std::size_t j = 0; j < b.size(); ++j) r[j] += b[j];
  return r;
}

inline Poly poly_scalar_mul(cplx s, const Poly& a) {
  Poly r = a;
  for (auto& c : r) c *= s;
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scalar_mul(-1.0, b)); }

/// Monic product of (t - r) over the given roots.
inline Poly poly_from_roots(const std::vector<cplx>& roots) {
  Poly p{1.0};
  for (cplx r : roots) p = poly_mul(p, Poly{-r, 1.0});
  return p;
}

/// Synthetic division by (t - r); the remainder (= p(r)) is discarded.
inline Poly poly_deflate(const Poly& p, cplx r) {
  if (p.size() <= 1) return Poly{cplx{}};
  Poly q(p.size() - 1);
  cplx carry = p.back();
  for (int j = static_cast<int>(p.size()) - 2; j >= 0; --j) {
    q[static_cast<std::size_t>(j)] = carry;
    carry = p[static_cast<std::size_t>(j)] + carry * r;
  }
  return q;
}

/// Coefficient reversal padded to the given degree: returns s^deg · p(1/s).
inline Poly poly_reversed(const Poly& p, int deg) {
  if (deg < poly_degree(p)) throw domain_error("reversal degree below polynomial degree");
  Poly r(static_cast<std::size_t>(deg) + 1, cplx{});
  for (std::size_t j = 0; j < p.size(); ++j) r[static_cast<std::size_t>(deg) - j] = p[j];
  return r;
}

/// All roots of p via balanced companion-matrix eigenvalues, each refined by a
/// few Newton steps (which helps simple roots; multiple roots are left to the
/// clustering pass).
inline std::vector<cplx> poly_roots(const Poly& p_in) {
  Poly p = poly_trim(p_in);
  const int n = poly_degree(p);
  if (n < 1) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = p.back();
  for (int j = 0; j < n; ++j) C(j, n - 1) = -p[static_cast<std::size_t>(j)] / lead;
  for (int j = 1; j < n; ++j) C(j, j - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw numerical_error("companion-matrix eigenvalue iteration did not converge");
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  const Poly dp = poly_derivative(p);
  for (int j = 0; j < n; ++j) {
    // Monotone-descent Newton: accept a step only if it shrinks |p|.  At a
    // multiple root the eigenvalue already sits at the residual floor while
    // p' is cancellation noise, so an unguarded step f/p' can be huge; the
    // descent test rejects it and keeps the eigenvalue.
    cplx z = solver.eigenvalues()(j);
    double fz = std::abs(poly_eval(p, z));
    for (int it = 0; it < 12 && fz > 0.0; ++it) {
      const cplx df = poly_eval(dp, z);
      if (std::abs(df) < 1e-300) break;
      const cplx step = poly_eval(p, z) / df;
      const cplx znew = z - step;
      const double fnew = std::abs(poly_eval(p, znew));
      if (fnew >= fz) break;  // not improving; keep the better iterate
      z = znew;
      fz = fnew;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    roots[static_cast<std::size_t>(j)] = z;
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// A root cluster: center, multiplicity, and the residual |p^{(mult-1)}(center)|
/// left after center refinement (diagnostic only).
struct ClusteredRoot {
  cplx center;
  int multiplicity = 1;
  double residual = 0.0;
};

/// Group nearby roots into multiple roots.  A numerical m-fold root of a
/// perturbed polynomial splays into an m-star of radius ~eps^(1/m), so the
/// merge radius must sit above that spray; centers are then re-polished as
/// roots of the (m-1)-th derivative, which sees them as simple.
inline std::vector<ClusteredRoot> cluster_roots(const std::vector<cplx>& roots, const Poly& p,
                                                double merge_radius = -1.0) {
  const std::size_t n = roots.size();
  if (n == 0) return {};
  double scale = 1.0;
  for (cplx r : roots) scale = std::max(scale, std::abs(r));
  const double radius = merge_radius > 0 ? merge_radius : 3e-5 * scale;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);

  std::vector<ClusteredRoot> out;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (done[r]) continue;
    done[r] = true;
    cplx sum{};
    int mult = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == r) {
        sum += roots[j];
        ++mult;
      }
    ClusteredRoot c;
    c.multiplicity = mult;
    c.center = sum / static_cast<double>(mult);
    if (mult > 1) {
      Poly d = p;
      for (int k = 1; k < mult; ++k) d = poly_derivative(d);
      const Poly dd = poly_derivative(d);
      cplx z = c.center;
      for (int it = 0; it < 40; ++it) {
        const cplx f = poly_eval(d, z);
        const cplx df = poly_eval(dd, z);
        if (std::abs(df) < 1e-300) break;
        const cplx step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
      }
      if (std::abs(z - c.center) <= 3 * radius) c.center = z;  // reject runaway refinement
      c.residual = std::abs(poly_eval(d, c.center));
    } else {
      c.residual = std::abs(poly_eval(p, c.center));
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
    return a.center.real() != b.center.real() ? a.center.real() < b.center.real()
                                              : a.center.imag() < b.center.imag();
  });
  return out;
}

inline std::vector<ClusteredRoot> clustered_roots(const Poly& p, double merge_radius = -1.0) {
  return cluster_roots(poly_roots(p), p, merge_radius);
}

}  // namespace folium
