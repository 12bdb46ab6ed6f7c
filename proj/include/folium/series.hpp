#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "folium/errors.hpp"
#include "folium/scalar.hpp"

namespace folium {

/// Truncated power series in one variable over the scalar ring K.
/// A value of order N stores coefficients c_0..c_N and represents a germ
/// modulo t^{N+1}.  Binary operations on mixed orders truncate to the
/// smaller order.
template <class K = cplx>
class Series1T {
 public:
  Series1T() : c_(1, K{}) {}
  explicit Series1T(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1, K{}) {}

  static Series1T from_coeffs(std::vector<K> coeffs) {
    if (coeffs.empty()) throw domain_error("series needs at least the constant coefficient");
    Series1T s;
    s.c_ = std::move(coeffs);
    return s;
  }

  /// The identity germ t, truncated at `order`.
  static Series1T var(int order) {
    Series1T s(order);
    if (order >= 1) s.c_[1] = K{1.0};
    return s;
  }

  static Series1T constant(K v, int order) {
    Series1T s(order);
    s.c_[0] = v;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }

  K coeff(int j) const {
    if (j < 0) throw domain_error("negative coefficient index");
    return j <= order() ? c_[static_cast<std::size_t>(j)] : K{};
  }

  void set(int j, K v) {
    if (j < 0 || j > order()) throw domain_error("coefficient index out of range");
    c_[static_cast<std::size_t>(j)] = v;
  }

  const std::vector<K>& coeffs() const { return c_; }

  /// Copy truncated (or zero-padded, which asserts polynomial semantics) to
  /// the given order.
  Series1T resized(int new_order) const {
    Series1T s(new_order);
    const int m = std::min(new_order, order());
    for (int j = 0; j <= m; ++j) s.c_[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j)];
    return s;
  }

  Series1T operator-() const {
    Series1T s = *this;
    for (auto& v : s.c_) v = -v;
    return s;
  }

  friend Series1T operator+(const Series1T& f, const Series1T& g) {
    const int n = std::min(f.order(), g.order());
    Series1T s(n);
    for (int j = 0; j <= n; ++j) s.c_[j] = f.c_[j] + g.c_[j];
    return s;
  }

  friend Series1T operator-(const Series1T& f, const Series1T& g) {
    const int n = std::min(f.order(), g.order());
    Series1T s(n);
    for (int j = 0; j <= n; ++j) s.c_[j] = f.c_[j] - g.c_[j];
    return s;
  }

  friend Series1T operator*(const Series1T& f, const Series1T& g) {
    const int n = std::min(f.order(), g.order());
    Series1T s(n);
    for (int i = 0; i <= n; ++i) {
      if (magnitude(f.c_[i]) == 0.0) continue;
      for (int j = 0; i + j <= n; ++j) s.c_[i + j] += f.c_[i] * g.c_[j];
    }
    return s;
  }

  friend Series1T operator*(K a, const Series1T& f) {
    Series1T s = f;
    for (auto& v : s.c_) v = a * v;
    return s;
  }

  /// Termwise derivative; the result is one order shorter.
  Series1T derivative() const {
    const int n = std::max(order() - 1, 0);
    Series1T s(n);
    for (int j = 1; j <= order(); ++j)
      s.c_[j - 1] = K{static_cast<double>(j)} * c_[static_cast<std::size_t>(j)];
    if (order() == 0) s.c_[0] = K{};
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : c_) m = std::max(m, magnitude(v));
    return m;
  }

  K eval(K x) const {  // Horner
    K r{};
    for (int j = order(); j >= 0; --j) r = r * x + c_[static_cast<std::size_t>(j)];
    return r;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw domain_error("series order must be nonnegative");
    return order;
  }

  std::vector<K> c_;
};

using Series1 = Series1T<cplx>;

/// f(g) for g with g(0)=0; the result keeps the smaller truncation order.
template <class K>
Series1T<K> compose(const Series1T<K>& f, const Series1T<K>& g, double tol = kCoeffTol) {
  if (magnitude(g.coeff(0)) > tol)
    throw domain_error("composition requires the inner series to vanish at 0");
  const int n = std::min(f.order(), g.order());
  Series1T<K> g0 = g.resized(n);
  g0.set(0, K{});  // remove numerical dust so powers stay triangular
  Series1T<K> res(n);
  for (int j = f.order() < n ? f.order() : n; j >= 0; --j) {
    res = res * g0;
    res.set(0, res.coeff(0) + f.coeff(j));
  }
  return res;
}

/// 1/f for f with f(0) != 0.
template <class K>
Series1T<K> reciprocal(const Series1T<K>& f, double tol = kCoeffTol) {
  if (magnitude(f.coeff(0)) <= tol)
    throw domain_error("reciprocal of a series vanishing at 0");
  const int n = f.order();
  Series1T<K> r(n);
  const K inv0 = K{1.0} / f.coeff(0);
  r.set(0, inv0);
  for (int m = 1; m <= n; ++m) {
    K acc{};
    for (int j = 1; j <= m; ++j) acc += f.coeff(j) * r.coeff(m - j);
    r.set(m, -inv0 * acc);
  }
  return r;
}

template <class K>
Series1T<K> divide(const Series1T<K>& f, const Series1T<K>& g, double tol = kCoeffTol) {
  return f * reciprocal(g.resized(std::min(f.order(), g.order())), tol);
}

/// Compositional inverse of f with f(0)=0, f'(0) != 0, by Newton iteration
/// whose accuracy order doubles per step.
template <class K>
Series1T<K> comp_inverse(const Series1T<K>& f, double tol = kCoeffTol) {
  if (magnitude(f.coeff(0)) > tol) throw domain_error("compositional inverse requires f(0)=0");
  if (magnitude(f.coeff(1)) <= tol)
    throw domain_error("compositional inverse requires f'(0) != 0");
  const int n = f.order();
  Series1T<K> fp = f.derivative().resized(n);
  Series1T<K> g(n);
  if (n >= 1) g.set(1, K{1.0} / f.coeff(1));
  int steps = 1;
  for (int reach = 2; reach < n + 1; reach *= 2) ++steps;
  for (int s = 0; s <= steps; ++s) {
    Series1T<K> err = compose(f, g, tol);          // f(g) - t
    err.set(1, err.coeff(1) - K{1.0});
    Series1T<K> slope = compose(fp, g, tol);       // f'(g), unit
    g = g - err * reciprocal(slope, tol);
  }
  return g;
}

/// Square root of a unit series, branch fixed by the principal root of the
/// constant term.
inline Series1 sqrt_unit(const Series1& f, double tol = kCoeffTol) {
  if (magnitude(f.coeff(0)) <= tol) throw domain_error("series square root requires f(0) != 0");
  const int n = f.order();
  Series1 s = Series1::constant(std::sqrt(f.coeff(0)), n);
  int steps = 1;
  for (int reach = 1; reach < n + 1; reach *= 2) ++steps;
  for (int k = 0; k <= steps; ++k) s = cplx(0.5) * (s + f * reciprocal(s, tol));
  return s;
}

/// Factorial-weighted norm: sum |c_j| / j!.
inline double norm_d(const Series1& f) {
  double acc = 0, fact = 1;
  for (int j = 0; j <= f.order(); ++j) {
    if (j > 0) fact *= j;
    acc += std::abs(f.coeff(j)) / fact;
  }
  return acc;
}

/// Plain l1 norm of the coefficient vector.
inline double norm_l1(const Series1& f) {
  double acc = 0;
  for (int j = 0; j <= f.order(); ++j) acc += std::abs(f.coeff(j));
  return acc;
}

/// Conjugation by the scaling t -> lambda*t:  f_lambda(t) = f(lambda t)/lambda,
/// i.e. c_j -> lambda^{j-1} c_j.
template <class K>
Series1T<K> rescale(const Series1T<K>& f, K lambda) {
  if (magnitude(lambda) == 0.0) throw domain_error("rescale requires lambda != 0");
  Series1T<K> s(f.order());
  K p = K{1.0} / lambda;  // lambda^{j-1}
  for (int j = 0; j <= f.order(); ++j) {
    s.set(j, p * f.coeff(j));
    p = p * lambda;
  }
  return s;
}

template <class K>
double max_coeff_dist(const Series1T<K>& f, const Series1T<K>& g) {
  double m = 0;
  const int n = std::max(f.order(), g.order());
  for (int j = 0; j <= n; ++j) m = std::max(m, magnitude(f.coeff(j) - g.coeff(j)));
  return m;
}

}  // namespace folium
