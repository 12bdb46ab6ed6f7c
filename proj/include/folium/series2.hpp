#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "folium/errors.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"

namespace folium {

/// Raised when a substitution would push coefficients beyond the requested
/// window in the first variable.
struct TruncationOverflow : domain_error {
  explicit TruncationOverflow(const std::string& what) : domain_error(what) {}
};

/// Truncated power series in two variables x, t with a rectangular
/// coefficient window: c[j][k] x^j t^k for 0<=j<=order_x, 0<=k<=order_t.
/// Binary operations intersect the windows (per-variable min rule), which is
/// exact truncation with respect to the monomial ideal (x^{J+1}, t^{K+1}).
class Series2 {
 public:
  Series2() : jmax_(0), kmax_(0), c_(1, std::vector<cplx>(1)) {}
  Series2(int order_x, int order_t)
      : jmax_(check(order_x, "x")),
        kmax_(check(order_t, "t")),
        c_(static_cast<std::size_t>(jmax_) + 1,
           std::vector<cplx>(static_cast<std::size_t>(kmax_) + 1)) {}

  int order_x() const { return jmax_; }
  int order_t() const { return kmax_; }

  cplx coeff(int j, int k) const {
    if (j < 0 || k < 0) throw domain_error("negative monomial exponent");
    if (j > jmax_ || k > kmax_) return {};
    return c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }

  void set(int j, int k, cplx v) {
    if (j < 0 || j > jmax_ || k < 0 || k > kmax_)
      throw domain_error("monomial exponent out of window");
    c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = v;
  }

  void add(int j, int k, cplx v) { set(j, k, coeff(j, k) + v); }

  /// Monomial v * x^j t^k.
  static Series2 monomial(cplx v, int j, int k, int order_x, int order_t) {
    Series2 s(order_x, order_t);
    if (j <= order_x && k <= order_t) s.set(j, k, v);
    return s;
  }

  static Series2 constant(cplx v, int order_x, int order_t) {
    return monomial(v, 0, 0, order_x, order_t);
  }

  Series2 resized(int order_x, int order_t) const {
    Series2 s(order_x, order_t);
    for (int j = 0; j <= std::min(order_x, jmax_); ++j)
      for (int k = 0; k <= std::min(order_t, kmax_); ++k)
        s.c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return s;
  }

  Series2 operator-() const {
    Series2 s = *this;
    for (auto& row : s.c_)
      for (auto& v : row) v = -v;
    return s;
  }

  friend Series2 operator+(const Series2& f, const Series2& g) {
    Series2 s(std::min(f.jmax_, g.jmax_), std::min(f.kmax_, g.kmax_));
    for (int j = 0; j <= s.jmax_; ++j)
      for (int k = 0; k <= s.kmax_; ++k) s.c_[j][k] = f.c_[j][k] + g.c_[j][k];
    return s;
  }

  friend Series2 operator-(const Series2& f, const Series2& g) {
    Series2 s(std::min(f.jmax_, g.jmax_), std::min(f.kmax_, g.kmax_));
    for (int j = 0; j <= s.jmax_; ++j)
      for (int k = 0; k <= s.kmax_; ++k) s.c_[j][k] = f.c_[j][k] - g.c_[j][k];
    return s;
  }

  friend Series2 operator*(const Series2& f, const Series2& g) {
    Series2 s(std::min(f.jmax_, g.jmax_), std::min(f.kmax_, g.kmax_));
    for (int j1 = 0; j1 <= std::min(f.jmax_, s.jmax_); ++j1)
      for (int k1 = 0; k1 <= std::min(f.kmax_, s.kmax_); ++k1) {
        const cplx a = f.c_[j1][k1];
        if (a == cplx{}) continue;
        for (int j2 = 0; j1 + j2 <= s.jmax_ && j2 <= g.jmax_; ++j2)
          for (int k2 = 0; k1 + k2 <= s.kmax_ && k2 <= g.kmax_; ++k2)
            s.c_[j1 + j2][k1 + k2] += a * g.c_[j2][k2];
      }
    return s;
  }

  friend Series2 operator*(cplx a, const Series2& f) {
    Series2 s = f;
    for (auto& row : s.c_)
      for (auto& v : row) v = a * v;
    return s;
  }

  Series2 derivative_x() const {
    Series2 s(std::max(jmax_ - 1, 0), kmax_);
    for (int j = 1; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k)
        s.c_[j - 1][k] = static_cast<double>(j) * c_[static_cast<std::size_t>(j)][k];
    return s;
  }

  Series2 derivative_t() const {
    Series2 s(jmax_, std::max(kmax_ - 1, 0));
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 1; k <= kmax_; ++k)
        s.c_[j][k - 1] = static_cast<double>(k) * c_[static_cast<std::size_t>(j)][k];
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& row : c_)
      for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_zero(double tol = kCoeffTol) const { return max_abs() <= tol; }

  /// Restriction to x=0 as a series in t.
  Series1 at_x0() const { return Series1::from_coeffs(c_[0]); }

  /// Restriction to t=0 as a series in x.
  Series1 at_t0() const {
    std::vector<cplx> col(static_cast<std::size_t>(jmax_) + 1);
    for (int j = 0; j <= jmax_; ++j) col[static_cast<std::size_t>(j)] = c_[j][0];
    return Series1::from_coeffs(std::move(col));
  }

  /// Coefficient of x^j as a series in t.
  Series1 x_slice(int j) const {
    if (j < 0 || j > jmax_) throw domain_error("x-slice index out of window");
    return Series1::from_coeffs(c_[static_cast<std::size_t>(j)]);
  }

  /// Coefficient of t^k as a series in x.
  Series1 t_slice(int k) const {
    if (k < 0 || k > kmax_) throw domain_error("t-slice index out of window");
    std::vector<cplx> col(static_cast<std::size_t>(jmax_) + 1);
    for (int j = 0; j <= jmax_; ++j) col[static_cast<std::size_t>(j)] = c_[j][static_cast<std::size_t>(k)];
    return Series1::from_coeffs(std::move(col));
  }

  /// Assemble sum_k slices[k](x) * t^k.
  static Series2 from_t_slices(const std::vector<Series1>& slices, int order_x) {
    if (slices.empty()) throw domain_error("need at least one slice");
    Series2 s(order_x, static_cast<int>(slices.size()) - 1);
    for (int k = 0; k < static_cast<int>(slices.size()); ++k)
      for (int j = 0; j <= order_x; ++j) s.set(j, k, slices[static_cast<std::size_t>(k)].coeff(j));
    return s;
  }

  /// Substitute t -> t + c for a constant c.  Exact: the table is polynomial
  /// in t, and the shift only moves weight to lower t-degrees.
  Series2 shift_t_const(cplx c) const {
    if (c == cplx{}) return *this;
    Series2 res(jmax_, kmax_);
    // Horner in t: res <- res*(t+c) + slice_k, where multiplying by (t+c)
    // maps coefficient rows via new[kk] = old[kk]*c + old[kk-1].
    for (int k = kmax_; k >= 0; --k) {
      Series2 next(jmax_, kmax_);
      for (int j = 0; j <= jmax_; ++j) {
        cplx prev{};
        for (int kk = 0; kk <= kmax_; ++kk) {
          const cplx cur = res.coeff(j, kk);
          next.set(j, kk, cur * c + prev);
          prev = cur;
        }
      }
      for (int j = 0; j <= jmax_; ++j)
        next.add(j, 0, c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      res = next;
    }
    return res;
  }

  /// Substitute x -> x + c for a constant c.
  Series2 shift_x_const(cplx c) const { return transposed().shift_t_const(c).transposed(); }

  /// Total-degree-homogeneous part of degree d (within the window).
  Series2 homogeneous_part(int d) const {
    Series2 s(jmax_, kmax_);
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k)
        if (j + k == d) s.c_[j][k] = c_[j][k];
    return s;
  }

  int lowest_total_degree(double tol = kCoeffTol) const {
    int best = -1;
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k)
        if (std::abs(c_[j][k]) > tol && (best < 0 || j + k < best)) best = j + k;
    return best;  // -1 when numerically zero
  }

  /// Substitute y = t*x into a series regarded in variables (x, y):
  /// x^j y^k -> x^{j+k} t^k.  Exact; the x-window grows to J+K unless capped.
  /// With a cap, any nonzero coefficient that would land beyond it raises
  /// TruncationOverflow.
  Series2 blow_up_substitute(int max_x = -1, double tol = kCoeffTol) const {
    const int full = jmax_ + kmax_;
    const int cap = max_x < 0 ? full : max_x;
    Series2 s(cap, kmax_);
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k) {
        const cplx v = c_[j][k];
        if (v == cplx{}) continue;
        if (j + k > cap) {
          if (std::abs(v) > tol)
            throw TruncationOverflow("blow-up would place x^" + std::to_string(j + k) +
                                     " t^" + std::to_string(k) + " beyond the x-window cap " +
                                     std::to_string(cap));
          continue;
        }
        s.c_[static_cast<std::size_t>(j + k)][static_cast<std::size_t>(k)] += v;
      }
    return s;
  }

  /// Substitute t -> t + f(x) where f is a series in x with f(0)=0.
  /// Evaluated by Horner in the t-variable; exact on the rectangular window
  /// only in total degree <= min(order_x, order_t) (shifts mix the corners).
  Series2 subst_shift_t(const Series1& f, double tol = kCoeffTol) const {
    if (magnitude(f.coeff(0)) > tol)
      throw domain_error("t-shift requires a shift series vanishing at 0");
    Series2 fx(jmax_, kmax_);  // f as a function of x alone
    for (int j = 0; j <= std::min(jmax_, f.order()); ++j) fx.set(j, 0, f.coeff(j));
    Series2 tnew(jmax_, kmax_);  // t + f(x)
    if (kmax_ >= 1) tnew.set(0, 1, 1.0);
    tnew = tnew + fx;
    Series2 res(jmax_, kmax_);
    for (int k = kmax_; k >= 0; --k) {
      res = res * tnew;
      for (int j = 0; j <= jmax_; ++j) res.add(j, 0, c_[j][static_cast<std::size_t>(k)]);
    }
    return res;
  }

  /// Substitute x -> x + g(t) with g(0)=0 (mirror of subst_shift_t).
  Series2 subst_shift_x(const Series1& g, double tol = kCoeffTol) const {
    return transposed().subst_shift_t(g, tol).transposed();
  }

  Series2 transposed() const {
    Series2 s(kmax_, jmax_);
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k) s.c_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = c_[j][k];
    return s;
  }

  /// Exact division by x^m; throws listing an offending monomial when some
  /// nonzero coefficient has x-degree < m.  The window shrinks by m.
  Series2 divide_x_power(int m, double tol = kCoeffTol) const {
    if (m < 0) throw domain_error("cannot divide by a negative power");
    if (m == 0) return *this;
    if (m > jmax_) throw domain_error("x-power exceeds the window");
    for (int j = 0; j < m; ++j)
      for (int k = 0; k <= kmax_; ++k)
        if (std::abs(c_[j][k]) > tol)
          throw domain_error("not divisible by x^" + std::to_string(m) +
                             ": monomial x^" + std::to_string(j) + " t^" + std::to_string(k) +
                             " has coefficient of size " + std::to_string(std::abs(c_[j][k])));
    Series2 s(jmax_ - m, kmax_);
    for (int j = m; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k) s.c_[j - m][k] = c_[j][k];
    return s;
  }

  Series2 divide_t_power(int m, double tol = kCoeffTol) const {
    return transposed().divide_x_power(m, tol).transposed();
  }

  /// Largest m such that every monomial is divisible by x^m (window-wide).
  int x_valuation(double tol = kCoeffTol) const {
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k)
        if (std::abs(c_[j][k]) > tol) return j;
    return jmax_ + 1;  // numerically zero
  }

  int t_valuation(double tol = kCoeffTol) const { return transposed().x_valuation(tol); }

  /// Multiply by x^m (window grows).
  Series2 times_x_power(int m) const {
    if (m < 0) throw domain_error("cannot multiply by a negative power");
    Series2 s(jmax_ + m, kmax_);
    for (int j = 0; j <= jmax_; ++j)
      for (int k = 0; k <= kmax_; ++k) s.c_[j + m][k] = c_[j][k];
    return s;
  }

  /// Multiply by t^m (window grows).
  Series2 times_t_power(int m) const { return transposed().times_x_power(m).transposed(); }

  /// Evaluate at a point (both variables numeric).
  cplx eval(cplx x, cplx t) const {
    cplx r{};
    for (int j = jmax_; j >= 0; --j) {
      cplx row{};
      for (int k = kmax_; k >= 0; --k) row = row * t + c_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      r = r * x + row;
    }
    return r;
  }

  /// Substitute t := h(x) (h(0) arbitrary is NOT allowed: require h(0)=0 so
  /// the result stays a germ at the origin); returns a series in x.
  Series1 eval_t(const Series1& h, double tol = kCoeffTol) const {
    if (magnitude(h.coeff(0)) > tol)
      throw domain_error("t-substitution requires a series vanishing at 0");
    const int n = std::min<int>(jmax_, h.order());
    Series1 hx = h.resized(n);
    hx.set(0, 0.0);
    Series1 res(n);
    for (int k = kmax_; k >= 0; --k) {
      res = res * hx;
      Series1 slice(n);
      for (int j = 0; j <= n; ++j) slice.set(j, coeff(j, k));
      res = res + slice;
    }
    return res;
  }

 private:
  static int check(int order, const char* which) {
    if (order < 0)
      throw domain_error(std::string("order_") + which + " must be nonnegative");
    return order;
  }

  int jmax_, kmax_;
  std::vector<std::vector<cplx>> c_;
};

/// 1/u for a unit series (u(0,0) != 0), by the geometric series in the
/// augmentation part: terms of total valuation beyond the window vanish.
inline Series2 reciprocal(const Series2& u, double tol = kCoeffTol) {
  const cplx c0 = u.coeff(0, 0);
  if (std::abs(c0) <= tol) throw domain_error("reciprocal of a series vanishing at the origin");
  const int J = u.order_x(), K = u.order_t();
  Series2 tail = (1.0 / c0) * u;  // 1 + nilpotent-within-window part
  tail.set(0, 0, cplx{});
  Series2 acc = Series2::constant(1.0, J, K);
  Series2 pw = Series2::constant(1.0, J, K);
  for (int p = 1; p <= J + K; ++p) {
    pw = pw * tail;
    acc = (p % 2 == 1) ? acc - pw : acc + pw;
    if (pw.max_abs() == 0.0) break;
  }
  return (1.0 / c0) * acc;
}

inline Series2 divide(const Series2& f, const Series2& g, double tol = kCoeffTol) {
  return f * reciprocal(g.resized(std::min(f.order_x(), g.order_x()),
                                  std::min(f.order_t(), g.order_t())),
                        tol);
}

/// Result of dividing by a power of a curve factor (t - f(x)).
struct CurveDivision {
  Series2 quotient;
  bool ok = false;
  double remainder_norm = 0.0;  // largest coefficient blocking divisibility
  int remainder_j = -1, remainder_k = -1;
};

/// Divide s by (t - f(x))^m where f(0)=0: shift t -> t + f(x), check and
/// strip t^m, shift back.  Exactness holds on total degree <= min(Jx, Kt).
inline CurveDivision divide_by_curve(const Series2& s, const Series1& f, int m,
                                     double tol = kCoeffTol) {
  CurveDivision out;
  if (m < 0) throw domain_error("cannot divide by a negative curve power");
  Series2 shifted = s.subst_shift_t(f, tol);
  // Check divisibility by t^m on the shifted table.
  for (int k = 0; k < std::min(m, shifted.order_t() + 1); ++k)
    for (int j = 0; j <= shifted.order_x(); ++j) {
      const double a = std::abs(shifted.coeff(j, k));
      if (a > tol && a > out.remainder_norm) {
        out.remainder_norm = a;
        out.remainder_j = j;
        out.remainder_k = k;
      }
    }
  if (out.remainder_norm > 0.0) {
    out.ok = false;
    out.quotient = s;
    return out;
  }
  if (m > shifted.order_t()) {
    out.ok = false;
    out.remainder_norm = 0.0;
    return out;
  }
  Series2 q = shifted.divide_t_power(m, tol);
  out.quotient = q.subst_shift_t(-f, tol);
  out.ok = true;
  return out;
}

}  // namespace folium
