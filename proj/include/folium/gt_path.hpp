#pragma once

#include <utility>
#include <vector>

#include "folium/errors.hpp"
#include "folium/involution.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"

namespace folium {

/// Conjugation path step: alpha(u) = h_u^{-1} ∘ f ∘ h_u with h_u(t) = t + u t^m.
/// Generic over the coefficient ring so the same code runs on dual numbers.
template <class K>
Series1T<K> gt_path_generic(const Series1T<K>& f, int m, K u, double tol = kCoeffTol) {
  if (m < 2) throw domain_error("perturbation order must be at least 2");
  const int n = f.order();
  Series1T<K> h = Series1T<K>::var(n);
  if (m <= n) h.set(m, u);
  return compose(comp_inverse(h, tol), compose(f, h, tol), tol);
}

/// alpha(u) for a verified involution; the output is again an involution to
/// full truncation order (conjugation preserves involutivity).
inline Series1 gt_path(const Involution& f, int m, cplx u, double eps = kCoeffTol) {
  if (f.verified_order < m)
    throw domain_error("involution must be verified at least to the perturbation order");
  return gt_path_generic<cplx>(f.series, m, u, eps);
}

/// alpha'(0), computed exactly with degree-1 nilpotent parameter arithmetic:
/// coefficients are carried as a + b*eps with eps^2 = 0 and u = eps.
inline Series1 gt_path_derivative(const Involution& f, int m, double eps = kCoeffTol) {
  if (f.verified_order < m)
    throw domain_error("involution must be verified at least to the perturbation order");
  const int n = f.series.order();
  Series1T<dcplx> fd(n);
  for (int j = 0; j <= n; ++j) fd.set(j, dcplx{f.series.coeff(j), cplx{}});
  Series1T<dcplx> alpha = gt_path_generic<dcplx>(fd, m, dcplx{cplx{}, cplx{1.0}}, eps);
  Series1 d(n);
  for (int j = 0; j <= n; ++j) d.set(j, alpha.coeff(j).b);
  return d;
}

/// One evaluated path step plus its exact u-derivative data.
struct PathReport {
  int m = 2;
  cplx u{};
  Series1 alpha;        // alpha(u)
  Series1 alpha_prime;  // alpha'(0)
  cplx slope{};         // t^m coefficient of alpha'(0)
  int jet_zero_through = 1;
  double jet_max = 0.0;  // largest |coefficient| of alpha'(0) below order m
};

inline PathReport gt_path_report(const Involution& f, int m, cplx u, double eps = kCoeffTol) {
  PathReport r;
  r.m = m;
  r.u = u;
  r.alpha = gt_path(f, m, u, eps);
  r.alpha_prime = gt_path_derivative(f, m, eps);
  r.slope = r.alpha_prime.coeff(m);
  r.jet_zero_through = m - 1;
  for (int j = 0; j < m && j <= r.alpha_prime.order(); ++j)
    r.jet_max = std::max(r.jet_max, std::abs(r.alpha_prime.coeff(j)));
  return r;
}

/// Distances d1(f_lambda, f) for scaling factors approaching 1 from below.
inline std::vector<std::pair<double, double>> rescale_toward_radius(
    const Series1& f, const std::vector<double>& lambdas) {
  std::vector<std::pair<double, double>> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas) {
    if (!(lam > 0.0 && lam < 1.0))
      throw domain_error("scaling factors must lie strictly between 0 and 1");
    out.emplace_back(lam, norm_l1(rescale(f, cplx{lam}) - f));
  }
  return out;
}

}  // namespace folium
