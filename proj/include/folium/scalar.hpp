#pragma once

#include <cmath>
#include <complex>

namespace folium {

using cplx = std::complex<double>;

/// Default tolerance for declaring a series coefficient zero.
inline constexpr double kCoeffTol = 1e-10;

/// First-order dual number a + b*eps with eps^2 = 0, used to differentiate
/// series constructions with respect to an external parameter.
template <class T>
struct Dual {
  T a{};  // value part
  T b{};  // derivative part

  Dual() = default;
  Dual(T value) : a(value) {}  // NOLINT: implicit lift of scalars
  Dual(T value, T deriv) : a(value), b(deriv) {}

  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  Dual& operator*=(const Dual& o) {
    b = a * o.b + b * o.a;
    a *= o.a;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    a /= o.a;
    b = (b - a * o.b) / o.a;
    return *this;
  }

  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
  friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
  friend Dual operator-(const Dual& x) { return Dual{-x.a, -x.b}; }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
};

/// magnitude(): size estimate used by tolerance checks, defined for every
/// scalar the series templates are instantiated with.
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& x) { return std::abs(x); }
template <class T>
double magnitude(const Dual<T>& x) { return magnitude(x.a) + magnitude(x.b); }

using dcplx = Dual<cplx>;

}  // namespace folium
