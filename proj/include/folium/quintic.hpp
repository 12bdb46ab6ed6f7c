#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "folium/errors.hpp"
#include "folium/polynomial.hpp"
#include "folium/rng.hpp"
#include "folium/scalar.hpp"

namespace folium {

/// Certificate that a real quintic has the interlaced critical-value pattern:
/// four distinct real critical points c1 < c2 < c3 < c4 whose values satisfy
/// v2 < v1 < v4 < v3, with every critical level meeting the curve in a double
/// point, one further simple real point, and one conjugate pair.
struct QuinticCertificate {
  bool ok = false;
  std::string reason;
  Poly q;
  std::array<double, 4> critical_points{};
  std::array<double, 4> values{};
};

/// The monic quintic with q(0) = 0 whose derivative is 5·prod(z - c_i).
inline Poly quintic_from_critical_points(const std::array<double, 4>& c) {
  const double e1 = c[0] + c[1] + c[2] + c[3];
  const double e2 = c[0] * c[1] + c[0] * c[2] + c[0] * c[3] + c[1] * c[2] + c[1] * c[3] + c[2] * c[3];
  const double e3 = c[0] * c[1] * c[2] + c[0] * c[1] * c[3] + c[0] * c[2] * c[3] + c[1] * c[2] * c[3];
  const double e4 = c[0] * c[1] * c[2] * c[3];
  return Poly{cplx{0.0},
              cplx{5.0 * e4},
              cplx{-2.5 * e3},
              cplx{(5.0 / 3.0) * e2},
              cplx{-1.25 * e1},
              cplx{1.0}};
}

/// Verify the critical-value pattern of a real quintic from scratch.
inline QuinticCertificate quintic_verify(const Poly& q_in, double gap_tol = 1e-3,
                                         double imag_tol = 1e-6) {
  QuinticCertificate cert;
  cert.q = poly_trim(q_in);
  if (poly_degree(cert.q) != 5) {
    cert.reason = "not a degree-5 polynomial";
    return cert;
  }
  const double scale = poly_scale(cert.q);
  for (const cplx c : cert.q)
    if (std::abs(c.imag()) > 1e-12 * scale) {
      cert.reason = "coefficients are not real";
      return cert;
    }
  // Critical points: the four roots of q'.
  const Poly dq = poly_derivative(cert.q);
  const std::vector<cplx> croots = poly_roots(dq);
  if (croots.size() != 4) {
    cert.reason = "derivative does not have four roots";
    return cert;
  }
  std::vector<double> cs;
  for (const cplx r : croots) {
    if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r.real()))) {
      cert.reason = "a critical point is not real";
      return cert;
    }
    cs.push_back(r.real());
  }
  std::sort(cs.begin(), cs.end());
  for (int i = 0; i + 1 < 4; ++i)
    if (cs[static_cast<std::size_t>(i + 1)] - cs[static_cast<std::size_t>(i)] < gap_tol) {
      cert.reason = "critical points are not separated";
      return cert;
    }
  for (int i = 0; i < 4; ++i) {
    cert.critical_points[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i)];
    cert.values[static_cast<std::size_t>(i)] =
        poly_eval(cert.q, cplx{cs[static_cast<std::size_t>(i)]}).real();
  }
  const auto& v = cert.values;
  // Interlacing: v2 < v1 < v4 < v3 (1-based), strictly.
  if (!(v[1] < v[0] && v[0] < v[3] && v[3] < v[2])) {
    cert.reason = "critical values are not interlaced (need v2 < v1 < v4 < v3)";
    return cert;
  }
  // Level profile at each critical value: one double point at c_i, one other
  // simple real point, and one conjugate pair off the real axis.
  for (int i = 0; i < 4; ++i) {
    Poly level = cert.q;
    level[0] -= cplx{v[static_cast<std::size_t>(i)]};
    const std::vector<cplx> roots = poly_roots(level);
    int near_ci = 0, real_simple = 0;
    std::vector<cplx> complex_roots;
    for (const cplx r : roots) {
      if (std::abs(r - cplx{cs[static_cast<std::size_t>(i)]}) < 1e-4 *
              (1.0 + std::abs(cs[static_cast<std::size_t>(i)]))) {
        ++near_ci;
      } else if (std::abs(r.imag()) < imag_tol) {
        ++real_simple;
      } else {
        complex_roots.push_back(r);
      }
    }
    if (near_ci != 2 || real_simple != 1 || complex_roots.size() != 2) {
      cert.reason = "level through critical point " + std::to_string(i + 1) +
                    " does not split as double point + simple real point + conjugate pair";
      return cert;
    }
    if (std::abs(complex_roots[0] - std::conj(complex_roots[1])) >
        1e-6 * (1.0 + std::abs(complex_roots[0]))) {
      cert.reason = "off-axis roots of a critical level are not conjugate";
      return cert;
    }
  }
  cert.ok = true;
  cert.reason = "interlaced critical-value pattern verified";
  return cert;
}

struct QuinticSearchResult {
  bool found = false;
  long long attempts = 0;
  QuinticCertificate certificate;
};

/// Random search for a quintic with the interlaced pattern: critical points
/// drawn uniformly in [-1.5, 1.5], cheap interlacing precheck, then the full
/// verification.
inline QuinticSearchResult quintic_search(std::uint64_t seed, long long budget = 100000,
                                          double gap_tol = 1e-3) {
  QuinticSearchResult out;
  Rng rng(seed);
  for (long long attempt = 1; attempt <= budget; ++attempt) {
    out.attempts = attempt;
    std::array<double, 4> c{};
    for (double& x : c) x = rng.uniform(-1.5, 1.5);
    std::sort(c.begin(), c.end());
    bool separated = true;
    for (int i = 0; i + 1 < 4; ++i)
      if (c[static_cast<std::size_t>(i + 1)] - c[static_cast<std::size_t>(i)] < gap_tol)
        separated = false;
    if (!separated) continue;
    const Poly q = quintic_from_critical_points(c);
    std::array<double, 4> v{};
    for (int i = 0; i < 4; ++i)
      v[static_cast<std::size_t>(i)] = poly_eval(q, cplx{c[static_cast<std::size_t>(i)]}).real();
    if (!(v[1] < v[0] && v[0] < v[3] && v[3] < v[2])) continue;
    const QuinticCertificate cert = quintic_verify(q, gap_tol);
    if (cert.ok) {
      out.found = true;
      out.certificate = cert;
      return out;
    }
  }
  return out;
}

}  // namespace folium
