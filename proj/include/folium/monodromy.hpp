#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "folium/errors.hpp"
#include "folium/polynomial.hpp"
#include "folium/rational.hpp"
#include "folium/scalar.hpp"

namespace folium {

// ---------------------------------------------------------------------------
// Permutations (images, 0-based).
// ---------------------------------------------------------------------------

using Perm = std::vector<int>;

inline Perm perm_identity(int d) {
  Perm p(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

/// (a*b)(i) = a[b[i]]  (apply b first).
inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// Cycle lengths, sorted descending.
inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<std::size_t>(p[j]);
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline Perm perm_conjugate(const Perm& h, const Perm& p) {
  return perm_mul(perm_mul(h, p), perm_inverse(h));
}

inline bool perms_transitive(const std::vector<Perm>& gens, int d) {
  if (d <= 1) return true;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (const Perm& g : gens) {
      const int t = g[static_cast<std::size_t>(s)];
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        stack.push_back(t);
        ++count;
      }
    }
  }
  return count == d;
}

struct GroupInfo {
  long long order = 0;
  bool order_capped = false;  // closure exceeded the cap; order is a lower bound
  bool transitive = false;
};

/// Order of the permutation group generated by gens (BFS closure, capped).
inline GroupInfo monodromy_group(const std::vector<Perm>& gens, int degree,
                                 long long cap = 20000) {
  GroupInfo info;
  info.transitive = perms_transitive(gens, degree);
  std::set<Perm> seen;
  std::queue<Perm> todo;
  const Perm id = perm_identity(degree);
  seen.insert(id);
  todo.push(id);
  while (!todo.empty()) {
    const Perm cur = todo.front();
    todo.pop();
    for (const Perm& g : gens) {
      Perm nxt = perm_mul(g, cur);
      if (seen.insert(nxt).second) {
        if (static_cast<long long>(seen.size()) > cap) {
          info.order = static_cast<long long>(seen.size());
          info.order_capped = true;
          return info;
        }
        todo.push(std::move(nxt));
      }
    }
  }
  info.order = static_cast<long long>(seen.size());
  return info;
}

// ---------------------------------------------------------------------------
// Sheet tracking over paths in the value plane.
// ---------------------------------------------------------------------------

struct MonodromyOptions {
  int circle_segments = 64;    // arcs per keyhole circle
  int base_substeps = 2;       // initial subdivision of every path segment
  int max_halvings = 40;       // adaptive refinement depth per segment
  double collision_tol = 1e-7; // minimal chordal separation of tracked sheets
  double match_tol = 1e-6;     // chordal tolerance when re-identifying sheets
  double delta_loop = 0.1;     // maximal keyhole radius
  double eps_root = 1e-8;      // tolerance for matching values
  long long group_cap = 20000; // closure cap for the group order
};

namespace detail {

/// A fiber point in one of the two sphere charts: t = z, or t = 1/z.
struct ChartPoint {
  cplx z{};
  bool recip = false;
};

inline double chordal(const ChartPoint& p, const ChartPoint& q) {
  const double denom = std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
  if (p.recip == q.recip) return 2.0 * std::abs(p.z - q.z) / denom;
  return 2.0 * std::abs(p.z * q.z - 1.0) / denom;
}

inline cplx chart_value(const ChartPoint& p) {
  if (!p.recip) return p.z;
  if (std::abs(p.z) < 1e-300) return cplx{1e300, 0.0};
  return 1.0 / p.z;
}

/// Newton solver for fibers of a rational map in both sphere charts.
class SheetTracker {
 public:
  explicit SheetTracker(const RationalMap& r)
      : num_(r.num),
        den_(r.den),
        d_(rational_degree(r)),
        num_r_(poly_reversed(r.num, d_)),
        den_r_(poly_reversed(r.den, d_)),
        dnum_(poly_derivative(r.num)),
        dden_(poly_derivative(r.den)),
        dnum_r_(poly_derivative(num_r_)),
        dden_r_(poly_derivative(den_r_)) {}

  int degree() const { return d_; }

  /// Fiber over v as plane-chart points; requires the fiber to be finite and
  /// of full cardinality.
  std::vector<ChartPoint> fiber(cplx v) const {
    Poly p = poly_sub(num_, poly_scalar_mul(v, den_));
    if (poly_degree(poly_trim(p)) != d_)
      throw numerical_error("fiber over the base point meets infinity; choose another base");
    const std::vector<cplx> roots = poly_roots(poly_trim(p));
    std::vector<ChartPoint> out;
    out.reserve(roots.size());
    for (const cplx r : roots) out.push_back(ChartPoint{r, false});
    return out;
  }

  /// One Newton hop of every sheet to the fiber over v; false on any failure
  /// (divergence, overlong step, or sheet collision).
  bool hop(std::vector<ChartPoint>& pts, cplx v, double collision_tol) const {
    std::vector<ChartPoint> next = pts;
    for (ChartPoint& p : next)
      if (!newton(p, v)) return false;
    // Unambiguous continuation: each sheet must move by less than half the
    // minimal pairwise separation it had before the step. Then every new
    // point is strictly nearest to its own predecessor, so no two sheets can
    // exchange roles undetected; violating steps are refined by the caller.
    if (pts.size() > 1) {
      double minsep = 1e300;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          minsep = std::min(minsep, chordal(pts[i], pts[j]));
      for (std::size_t i = 0; i < next.size(); ++i)
        if (chordal(pts[i], next[i]) > 0.4 * minsep) return false;
    }
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = i + 1; j < next.size(); ++j)
        if (chordal(next[i], next[j]) < collision_tol) return false;
    pts = std::move(next);
    return true;
  }

  /// Track all sheets along the straight value-plane segment v0 -> v1 with
  /// adaptive halving.
  void track_segment(std::vector<ChartPoint>& pts, cplx v0, cplx v1, int depth,
                     const MonodromyOptions& opt) const {
    if (hop(pts, v1, opt.collision_tol)) return;
    if (depth >= opt.max_halvings)
      throw numerical_error("sheet tracking failed between values " + complex_str(v0) +
                            " and " + complex_str(v1));
    const cplx vm = 0.5 * (v0 + v1);
    track_segment(pts, v0, vm, depth + 1, opt);
    track_segment(pts, vm, v1, depth + 1, opt);
  }

  /// Track along a polyline of values (already including the start value at
  /// index 0, where pts currently live).
  void track_path(std::vector<ChartPoint>& pts, const std::vector<cplx>& way,
                  const MonodromyOptions& opt) const {
    for (std::size_t s = 0; s + 1 < way.size(); ++s) {
      const cplx a = way[s], b = way[s + 1];
      for (int u = 0; u < opt.base_substeps; ++u) {
        const cplx v0 = a + (b - a) * (static_cast<double>(u) / opt.base_substeps);
        const cplx v1 = a + (b - a) * (static_cast<double>(u + 1) / opt.base_substeps);
        track_segment(pts, v0, v1, 0, opt);
      }
    }
  }

 private:
  static std::string complex_str(cplx v) {
    return "(" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) + ")";
  }

  bool newton(ChartPoint& p, cplx v) const {
    for (int iter = 0; iter < 30; ++iter) {
      const Poly& n = p.recip ? num_r_ : num_;
      const Poly& dn = p.recip ? dnum_r_ : dnum_;
      const Poly& de = p.recip ? den_r_ : den_;
      const Poly& dd = p.recip ? dden_r_ : dden_;
      const cplx f = poly_eval(n, p.z) - v * poly_eval(de, p.z);
      const cplx df = poly_eval(dn, p.z) - v * poly_eval(dd, p.z);
      if (std::abs(df) < 1e-250) return false;
      const cplx step = f / df;
      if (std::abs(step) > 0.7) return false;  // basin jump risk: force refinement
      p.z -= step;
      if (std::abs(step) <= 1e-13 * (1.0 + std::abs(p.z))) {
        if (std::abs(p.z) > 2.0) {  // keep |z| bounded: swap sphere chart
          p.z = 1.0 / p.z;
          p.recip = !p.recip;
          if (!newton_polish(p, v)) return false;
        }
        return true;
      }
    }
    return false;
  }

  bool newton_polish(ChartPoint& p, cplx v) const {
    for (int iter = 0; iter < 10; ++iter) {
      const Poly& n = p.recip ? num_r_ : num_;
      const Poly& dn = p.recip ? dnum_r_ : dnum_;
      const Poly& de = p.recip ? den_r_ : den_;
      const Poly& dd = p.recip ? dden_r_ : dden_;
      const cplx f = poly_eval(n, p.z) - v * poly_eval(de, p.z);
      const cplx df = poly_eval(dn, p.z) - v * poly_eval(dd, p.z);
      if (std::abs(df) < 1e-250) return false;
      const cplx step = f / df;
      p.z -= step;
      if (std::abs(step) <= 1e-13 * (1.0 + std::abs(p.z))) return true;
    }
    return false;
  }

  Poly num_, den_;
  int d_;
  Poly num_r_, den_r_;
  Poly dnum_, dden_, dnum_r_, dden_r_;
};

/// Match the endpoint fiber bijectively to the reference fiber; returns the
/// permutation s -> index of the reference point that sheet s reached.
inline Perm match_fiber(const std::vector<ChartPoint>& tracked,
                        const std::vector<ChartPoint>& reference, double tol) {
  const std::size_t d = tracked.size();
  Perm sigma(d, -1);
  std::vector<bool> used(d, false);
  for (std::size_t s = 0; s < d; ++s) {
    double best = 1e300, second = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const double dist = chordal(tracked[s], reference[j]);
      if (dist < best) {
        second = best;
        best = dist;
        arg = j;
      } else if (dist < second) {
        second = dist;
      }
    }
    if (best > tol || used[arg] || (d > 1 && second < 3.0 * best))
      throw numerical_error("could not re-identify a sheet after transporting around a loop");
    used[arg] = true;
    sigma[s] = static_cast<int>(arg);
  }
  return sigma;
}

/// Distance from point p to the segment [a, b].
inline double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 < 1e-300) return std::abs(p - a);
  const double s = std::clamp(((std::conj(ab) * (p - a)).real()) / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

/// Keyhole loop waypoints around value v with approach radius r, starting and
/// ending at base; counterclockwise circle.
inline std::vector<cplx> keyhole(cplx base, cplx v, double r, int segments) {
  std::vector<cplx> way;
  const cplx dir = (base - v) / std::abs(base - v);
  const double theta0 = std::arg(dir);
  const cplx entry = v + r * dir;
  way.push_back(base);
  way.push_back(entry);
  for (int s = 1; s <= segments; ++s) {
    const double th = theta0 + 2.0 * M_PI * s / segments;
    way.push_back(v + r * cplx{std::cos(th), std::sin(th)});
  }
  way.push_back(base);
  return way;
}

/// Clockwise circle through base around center (a loop around infinity).
inline std::vector<cplx> infinity_loop(cplx base, cplx center, int segments) {
  std::vector<cplx> way;
  const double rad = std::abs(base - center);
  const double phi0 = std::arg(base - center);
  way.push_back(base);
  for (int s = 1; s < segments; ++s) {
    const double th = phi0 - 2.0 * M_PI * s / segments;
    way.push_back(center + rad * cplx{std::cos(th), std::sin(th)});
  }
  way.push_back(base);
  return way;
}

struct Bouquet {
  cplx base{};
  cplx center{};                   // centroid used for the loop around infinity
  std::vector<cplx> values;        // finite branch values, sorted by angle from base
  std::vector<double> radii;       // keyhole radius per value
};

/// Choose keyhole radii, a safe base point, and the angular order of loops.
/// The base must see every sheet separated and every spoke must stay clear of
/// the other keyholes.
inline Bouquet plan_bouquet(const std::vector<cplx>& finite_values,
                            const std::vector<const SheetTracker*>& trackers,
                            const MonodromyOptions& opt) {
  Bouquet bq;
  bq.values = finite_values;
  const std::size_t r = bq.values.size();
  bq.radii.assign(r, opt.delta_loop);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (j != i)
        bq.radii[i] = std::min(bq.radii[i], 0.45 * std::abs(bq.values[i] - bq.values[j]));
  cplx centroid{};
  for (const cplx v : bq.values) centroid += v;
  if (r > 0) centroid /= static_cast<double>(r);
  bq.center = centroid;
  double spread = 0.0;
  for (const cplx v : bq.values) spread = std::max(spread, std::abs(v - centroid));
  for (int round = 0; round < 5; ++round) {
    const double rho = (2.0 * spread + 1.0) * std::pow(2.0, round);
    for (int k = 0; k < 17; ++k) {
      const double ang = 2.0 * M_PI * k / 17.0 + 0.39;
      const cplx b = centroid + rho * cplx{std::cos(ang), std::sin(ang)};
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i)
        if (std::abs(b - bq.values[i]) < 3.0 * bq.radii[i]) ok = false;
      // Spokes are retraced exactly, so passing near another value leaves the
      // homotopy class intact; the margin only keeps the tracking well
      // conditioned (sheet separation ~ sqrt(distance) near a branch point).
      for (std::size_t i = 0; i < r && ok; ++i)
        for (std::size_t j = 0; j < r && ok; ++j)
          if (j != i &&
              segment_distance(bq.values[j], b, bq.values[i]) < 0.3 * bq.radii[j])
            ok = false;
      if (ok) {
        try {
          for (const SheetTracker* tr : trackers) {
            const std::vector<ChartPoint> f = tr->fiber(b);
            for (std::size_t i = 0; i < f.size(); ++i)
              for (std::size_t j = i + 1; j < f.size(); ++j)
                if (chordal(f[i], f[j]) < 100.0 * opt.collision_tol)
                  throw numerical_error("sheets too close over candidate base");
          }
        } catch (const numerical_error&) {
          ok = false;
        }
      }
      if (ok) {
        bq.base = b;
        std::vector<std::size_t> order(r);
        for (std::size_t i = 0; i < r; ++i) order[i] = i;
        // Sort spokes by angle relative to the central sight direction. The
        // base stands off at more than twice the value spread, so every spoke
        // lies in a cone of half-angle < pi/6 around (center - b) and the
        // relative angle cannot wrap; sorting by absolute angle would break
        // the cyclic loop order whenever the cone straddles the arg cut.
        const cplx toward = (r > 0) ? (bq.center - b) : cplx{1.0};
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
          return std::arg((bq.values[a] - b) / toward) < std::arg((bq.values[c] - b) / toward);
        });
        std::vector<cplx> vs(r);
        std::vector<double> rs(r);
        for (std::size_t i = 0; i < r; ++i) {
          vs[i] = bq.values[order[i]];
          rs[i] = bq.radii[order[i]];
        }
        bq.values = std::move(vs);
        bq.radii = std::move(rs);
        return bq;
      }
    }
  }
  throw numerical_error("could not place a base point with clear sight of every branch value");
}

inline Perm transport(const SheetTracker& tracker, const std::vector<ChartPoint>& base_fiber,
                      const std::vector<cplx>& way, const MonodromyOptions& opt) {
  std::vector<ChartPoint> pts = base_fiber;
  tracker.track_path(pts, way, opt);
  return match_fiber(pts, base_fiber, opt.match_tol);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Monodromy of a rational map.
// ---------------------------------------------------------------------------

struct MonodromyResult {
  int degree = 0;
  cplx base{};
  std::vector<cplx> fiber;          // base fiber, the sheet labels (plane chart)
  std::vector<cplx> finite_values;  // branch values, in loop order (angle at base)
  std::vector<int> value_orders;    // total branching order over each finite value
  bool infinity_is_branch = false;
  int infinity_order = 0;
  std::vector<Perm> loop_perms;     // one per finite value, aligned with finite_values
  Perm infinity_perm;               // loop around infinity (clockwise circle)
  Perm product;                     // infinity_perm ∘ loop_r ∘ … ∘ loop_1
  bool product_identity = false;
  bool transitive = false;
  std::vector<Perm> generators;     // finite loops, plus infinity when branched
};

inline MonodromyResult monodromy(const RationalMap& r_in, const MonodromyOptions& opt = {}) {
  const RationalMap r = make_rational(r_in.num, r_in.den, opt.eps_root);
  const CriticalData cd = critical_data(r, opt.eps_root);
  MonodromyResult out;
  out.degree = cd.degree;
  std::vector<cplx> finite;
  for (const CriticalValue& v : cd.values) {
    if (v.is_inf) {
      out.infinity_is_branch = true;
      out.infinity_order = v.total_order;
    } else {
      finite.push_back(v.value);
    }
  }
  const detail::SheetTracker tracker(r);
  const detail::Bouquet bq = detail::plan_bouquet(finite, {&tracker}, opt);
  out.base = bq.base;
  const std::vector<detail::ChartPoint> base_fiber = tracker.fiber(bq.base);
  for (const detail::ChartPoint& p : base_fiber) out.fiber.push_back(p.z);
  out.finite_values = bq.values;
  for (const cplx v : bq.values) {
    int ord = 0;
    for (const CriticalValue& cv : cd.values)
      if (!cv.is_inf && std::abs(cv.value - v) <= opt.eps_root * std::max(1.0, std::abs(v)))
        ord = cv.total_order;
    out.value_orders.push_back(ord);
  }
  Perm prod = perm_identity(out.degree);
  for (std::size_t i = 0; i < bq.values.size(); ++i) {
    const std::vector<cplx> way =
        detail::keyhole(bq.base, bq.values[i], bq.radii[i], opt.circle_segments);
    Perm sigma = detail::transport(tracker, base_fiber, way, opt);
    prod = perm_mul(sigma, prod);
    out.loop_perms.push_back(std::move(sigma));
  }
  const std::vector<cplx> wayinf =
      detail::infinity_loop(bq.base, bq.center, 2 * opt.circle_segments);
  out.infinity_perm = detail::transport(tracker, base_fiber, wayinf, opt);
  out.product = perm_mul(out.infinity_perm, prod);
  out.product_identity = perm_is_identity(out.product);
  out.generators = out.loop_perms;
  if (out.infinity_is_branch) out.generators.push_back(out.infinity_perm);
  out.transitive = perms_transitive(out.generators, out.degree);
  return out;
}

/// The permutation of sheets induced by one counterclockwise loop around the
/// given value (clockwise big circle when around_infinity is set).  A loop
/// around a regular value returns the identity.
inline Perm monodromy_around(const RationalMap& r_in, cplx v, bool around_infinity = false,
                             const MonodromyOptions& opt = {}) {
  const MonodromyResult full = monodromy(r_in, opt);
  if (around_infinity) return full.infinity_perm;
  for (std::size_t i = 0; i < full.finite_values.size(); ++i)
    if (std::abs(full.finite_values[i] - v) <= opt.eps_root * std::max(1.0, std::abs(v)))
      return full.loop_perms[i];
  // Regular value: a keyhole around it, kept clear of the branch values.
  const RationalMap r = make_rational(r_in.num, r_in.den, opt.eps_root);
  const detail::SheetTracker tracker(r);
  double rad = opt.delta_loop;
  for (const cplx bv : full.finite_values) rad = std::min(rad, 0.45 * std::abs(bv - v));
  if (rad <= 0.0) throw domain_error("loop target coincides with a branch value");
  MonodromyOptions o2 = opt;
  std::vector<cplx> values = full.finite_values;
  values.push_back(v);
  const detail::Bouquet bq = detail::plan_bouquet(values, {&tracker}, o2);
  const std::vector<detail::ChartPoint> base_fiber = tracker.fiber(bq.base);
  for (std::size_t i = 0; i < bq.values.size(); ++i)
    if (std::abs(bq.values[i] - v) <= 1e-14 * std::max(1.0, std::abs(v)))
      return detail::transport(
          tracker, base_fiber,
          detail::keyhole(bq.base, bq.values[i], std::min(rad, bq.radii[i]), opt.circle_segments),
          opt);
  throw numerical_error("loop construction lost the requested value");
}

// ---------------------------------------------------------------------------
// Equivalence of branched coverings with the same branch values.
// ---------------------------------------------------------------------------

enum class CoveringStatus { isomorphic, not_isomorphic, inconclusive };

struct CoveringVerdict {
  CoveringStatus status = CoveringStatus::inconclusive;
  std::string reason;
  bool via_braid = false;      // a braid rearrangement was needed
  int braid_depth_used = 0;
  Perm relabeling;             // sheet bijection witnessing the isomorphism
};

namespace detail {

/// Find h with h∘sigma_i = tau_i∘h for all i (simultaneous conjugacy).
inline bool simultaneous_conjugacy(const std::vector<Perm>& sig, const std::vector<Perm>& tau,
                                   int d, Perm& h_out) {
  Perm h(static_cast<std::size_t>(d), -1);
  std::vector<bool> used(static_cast<std::size_t>(d), false);

  // Propagate h[s]=t through all generators; records assignments in trail.
  auto propagate = [&](int s0, int t0, std::vector<int>& trail) -> bool {
    std::vector<std::pair<int, int>> stack{{s0, t0}};
    while (!stack.empty()) {
      auto [s, t] = stack.back();
      stack.pop_back();
      if (h[static_cast<std::size_t>(s)] == t) continue;
      if (h[static_cast<std::size_t>(s)] != -1 || used[static_cast<std::size_t>(t)]) return false;
      h[static_cast<std::size_t>(s)] = t;
      used[static_cast<std::size_t>(t)] = true;
      trail.push_back(s);
      for (std::size_t i = 0; i < sig.size(); ++i)
        stack.emplace_back(sig[i][static_cast<std::size_t>(s)], tau[i][static_cast<std::size_t>(t)]);
    }
    return true;
  };
  std::function<bool()> solve = [&]() -> bool {
    int s = -1;
    for (int i = 0; i < d; ++i)
      if (h[static_cast<std::size_t>(i)] == -1) {
        s = i;
        break;
      }
    if (s == -1) return true;
    for (int t = 0; t < d; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      std::vector<int> trail;
      if (propagate(s, t, trail) && solve()) return true;
      for (const int u : trail) {
        used[static_cast<std::size_t>(h[static_cast<std::size_t>(u)])] = false;
        h[static_cast<std::size_t>(u)] = -1;
      }
    }
    return false;
  };
  if (!solve()) return false;
  h_out = h;
  return true;
}

}  // namespace detail

/// Decide whether two maps define isomorphic branched coverings of the sphere
/// with the SAME branch values: a fiber bijection intertwining the two
/// monodromy actions along a common loop system, allowing rearrangements of
/// the loop system (braid moves) that restore each branch value to itself.
inline CoveringVerdict covering_isomorphic(const RationalMap& r1_in, const RationalMap& r2_in,
                                           int braid_depth = 6,
                                           const MonodromyOptions& opt = {}) {
  CoveringVerdict out;
  const RationalMap r1 = make_rational(r1_in.num, r1_in.den, opt.eps_root);
  const RationalMap r2 = make_rational(r2_in.num, r2_in.den, opt.eps_root);
  const int d1 = rational_degree(r1);
  const int d2 = rational_degree(r2);
  if (d1 != d2) {
    out.status = CoveringStatus::not_isomorphic;
    out.reason = "covering degrees differ (" + std::to_string(d1) + " vs " + std::to_string(d2) + ")";
    return out;
  }
  const CriticalData cd1 = critical_data(r1, opt.eps_root);
  const CriticalData cd2 = critical_data(r2, opt.eps_root);
  // Branch values must agree as sets (with branching orders).
  if (cd1.values.size() != cd2.values.size()) {
    out.status = CoveringStatus::not_isomorphic;
    out.reason = "number of branch values differs";
    return out;
  }
  std::vector<bool> taken(cd2.values.size(), false);
  for (const CriticalValue& v : cd1.values) {
    bool found = false;
    for (std::size_t j = 0; j < cd2.values.size(); ++j) {
      if (taken[j] || cd2.values[j].is_inf != v.is_inf) continue;
      if (v.is_inf ||
          std::abs(cd2.values[j].value - v.value) <= opt.eps_root * std::max(1.0, std::abs(v.value))) {
        taken[j] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      out.status = CoveringStatus::not_isomorphic;
      out.reason = "branch value sets differ";
      return out;
    }
  }
  if (cd1.values.empty()) {  // unbranched: both are degree-1 isomorphisms
    out.status = CoveringStatus::isomorphic;
    out.reason = "no branch values; both maps are unbranched coverings of equal degree";
    out.relabeling = perm_identity(d1);
    return out;
  }
  // Post-compose both maps with w -> 1/(w - c) so every branch value is finite,
  // with c deterministic and away from all branch values.
  std::vector<cplx> raw_values;
  bool has_inf = false;
  for (const CriticalValue& v : cd1.values) {
    if (v.is_inf)
      has_inf = true;
    else
      raw_values.push_back(v.value);
  }
  cplx centroid{};
  for (const cplx v : raw_values) centroid += v;
  if (!raw_values.empty()) centroid /= static_cast<double>(raw_values.size());
  double spread = 1.0;
  for (const cplx v : raw_values) spread = std::max(spread, std::abs(v - centroid));
  cplx c{};
  for (int k = 0; k < 17; ++k) {
    c = centroid + (1.7 + 0.31 * k) * spread * cplx{std::cos(0.83 + 0.7 * k), std::sin(0.83 + 0.7 * k)};
    bool clear = true;
    for (const cplx v : raw_values)
      if (std::abs(c - v) < 1e-3 * spread) clear = false;
    if (clear) break;
  }
  const auto post_moebius = [&](const RationalMap& r) {
    // 1/(R - c) = den / (num - c·den)
    return make_rational(r.den, poly_sub(r.num, poly_scalar_mul(c, r.den)), opt.eps_root);
  };
  const RationalMap m1 = post_moebius(r1);
  const RationalMap m2 = post_moebius(r2);
  std::vector<cplx> values;  // the common finite branch values after the move
  for (const cplx v : raw_values) values.push_back(1.0 / (v - c));
  if (has_inf) values.push_back(cplx{});  // infinity maps to 0
  const detail::SheetTracker tr1(m1);
  const detail::SheetTracker tr2(m2);
  const detail::Bouquet bq = detail::plan_bouquet(values, {&tr1, &tr2}, opt);
  const std::vector<detail::ChartPoint> fiber1 = tr1.fiber(bq.base);
  const std::vector<detail::ChartPoint> fiber2 = tr2.fiber(bq.base);
  std::vector<Perm> gens1, gens2;
  for (std::size_t i = 0; i < bq.values.size(); ++i) {
    const std::vector<cplx> way =
        detail::keyhole(bq.base, bq.values[i], bq.radii[i], opt.circle_segments);
    gens1.push_back(detail::transport(tr1, fiber1, way, opt));
    gens2.push_back(detail::transport(tr2, fiber2, way, opt));
  }
  for (std::size_t i = 0; i < gens1.size(); ++i) {
    if (cycle_type(gens1[i]) != cycle_type(gens2[i])) {
      const cplx orig = has_inf && std::abs(bq.values[i]) < 1e-12
                            ? cplx{}  // represents infinity
                            : c + 1.0 / bq.values[i];
      out.status = CoveringStatus::not_isomorphic;
      out.reason = "branching cycle types differ over the value " +
                   (has_inf && std::abs(bq.values[i]) < 1e-12
                        ? std::string("infinity")
                        : "(" + std::to_string(orig.real()) + ", " + std::to_string(orig.imag()) + ")");
      return out;
    }
  }
  Perm witness;
  if (detail::simultaneous_conjugacy(gens1, gens2, d1, witness)) {
    out.status = CoveringStatus::isomorphic;
    out.reason = "fiber relabeling intertwines both monodromy actions";
    out.relabeling = witness;
    return out;
  }
  // Braid search: rearrange the loop system of the first map.  Each move
  // swaps which values two adjacent loops encircle, so a state is comparable
  // only once every loop has returned to its own value.
  const std::size_t nv = gens1.size();
  if (nv < 2) {
    out.status = CoveringStatus::not_isomorphic;
    out.reason = "monodromy actions are not conjugate (single branch value)";
    return out;
  }
  struct State {
    std::vector<Perm> tuple;
    Perm vperm;  // where each loop's value currently sits
    int depth;
  };
  std::set<std::pair<std::vector<Perm>, Perm>> seen;
  std::queue<State> todo;
  State start{gens1, perm_identity(static_cast<int>(nv)), 0};
  seen.insert({start.tuple, start.vperm});
  todo.push(start);
  bool exhausted = true;
  const std::size_t node_cap = 200000;
  while (!todo.empty()) {
    const State cur = todo.front();
    todo.pop();
    if (cur.depth >= braid_depth) {
      exhausted = false;
      continue;
    }
    for (std::size_t i = 0; i + 1 < nv; ++i) {
      for (int dir = 0; dir < 2; ++dir) {
        State nxt = cur;
        nxt.depth = cur.depth + 1;
        if (dir == 0) {
          // (a, b) -> (a·b·a⁻¹, a)
          nxt.tuple[i] = perm_conjugate(cur.tuple[i], cur.tuple[i + 1]);
          nxt.tuple[i + 1] = cur.tuple[i];
        } else {
          // (a, b) -> (b, b⁻¹·a·b)
          nxt.tuple[i] = cur.tuple[i + 1];
          nxt.tuple[i + 1] = perm_conjugate(perm_inverse(cur.tuple[i + 1]), cur.tuple[i]);
        }
        std::swap(nxt.vperm[i], nxt.vperm[i + 1]);
        if (!seen.insert({nxt.tuple, nxt.vperm}).second) continue;
        if (seen.size() > node_cap) {
          out.status = CoveringStatus::inconclusive;
          out.reason = "braid search exceeded the node budget";
          return out;
        }
        if (perm_is_identity(nxt.vperm) &&
            detail::simultaneous_conjugacy(nxt.tuple, gens2, d1, witness)) {
          out.status = CoveringStatus::isomorphic;
          out.reason = "fiber relabeling intertwines the actions after a braid rearrangement";
          out.via_braid = true;
          out.braid_depth_used = nxt.depth;
          out.relabeling = witness;
          return out;
        }
        todo.push(std::move(nxt));
      }
    }
  }
  if (exhausted) {
    out.status = CoveringStatus::not_isomorphic;
    out.reason = "no loop rearrangement makes the monodromy actions conjugate";
  } else {
    out.status = CoveringStatus::inconclusive;
    out.reason = "monodromy actions not conjugate within braid depth " + std::to_string(braid_depth);
  }
  return out;
}

}  // namespace folium
