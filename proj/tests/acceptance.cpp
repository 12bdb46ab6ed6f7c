// Acceptance gate: eleven end-to-end criteria, one PASS/FAIL line each.
// Exit code = number of failed criteria.  Diagnostics state measured
// quantities and, where a clause cannot hold, the mathematical reason.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "folium/folium.hpp"

using namespace folium;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

void emit(int id, const char* name, bool pass, const std::string& diag) {
  std::printf("%s  %2d  %s: %s\n", pass ? "PASS" : "FAIL", id, name, diag.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Involution random_involution(Rng& rng, int n, double radius) {
  Series1 phi(n);
  phi.set(1, 1.0);
  for (int j = 2; j <= n; ++j) phi.set(j, rng.box(radius) / static_cast<double>(j));
  return involution_from_conjugator(phi);
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share one sweep: 200 involutions at N = 24, orders
// m = 2..10, displacements u in {0.1, 0.3i, -0.2+0.2i}.
// ---------------------------------------------------------------------------
void criteria_1_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const int N = 24;
  const cplx us[3] = {cplx{0.1}, cplx{0.0, 0.3}, cplx{-0.2, 0.2}};
  Rng rng(4001);

  double even_dev = 0, odd_dev = 0, below_drift = 0;            // criterion 1
  double jet_max = 0, lead_even = 0, lead_odd = 0, fd_dev = 0;  // criterion 2

  for (int trial = 0; trial < 200; ++trial) {
    const Involution inv = random_involution(rng, N, 0.3);
    const Series1& c = inv.series;
    for (int m = 2; m <= 10; ++m) {
      const Series1 ap = gt_path_derivative(inv, m);
      for (int j = 0; j < m; ++j) jet_max = std::max(jet_max, magnitude(ap.coeff(j)));
      const double lead = magnitude(ap.coeff(m) + cplx{2.0});
      (m % 2 == 0 ? lead_even : lead_odd) = std::max(m % 2 == 0 ? lead_even : lead_odd, lead);

      // Independent derivative: Richardson extrapolation of central
      // differences at h = 1e-4 (leading truncation term cancelled).
      const auto central = [&](double h) {
        return (1.0 / (2.0 * h)) * (gt_path(inv, m, cplx{h}) - gt_path(inv, m, cplx{-h}));
      };
      const Series1 rich = (1.0 / 3.0) * (4.0 * central(5e-5) - central(1e-4));
      fd_dev = std::max(fd_dev, max_coeff_dist(ap, rich));

      for (const cplx u : us) {
        const Series1 al = gt_path(inv, m, u);
        const double dm = magnitude(al.coeff(m) - (c.coeff(m) - 2.0 * u));
        (m % 2 == 0 ? even_dev : odd_dev) = std::max(m % 2 == 0 ? even_dev : odd_dev, dm);
        for (int j = 0; j < m; ++j)
          below_drift = std::max(below_drift, magnitude(al.coeff(j) - c.coeff(j)));
      }
    }
  }
  const double dt = seconds_since(t0);

  const bool c1 = even_dev <= 1e-9 && odd_dev <= 1e-9 && below_drift <= 1e-9 && dt < 30.0;
  emit(1, "conjugation-path coefficient law", c1,
       fmt("200 involutions (N=24), m=2..10, three displacements; coefficients below m drift "
           "<= %.2e; at even m the m-th coefficient moves by exactly -2u (deviation <= %.2e); "
           "at odd m it is stationary in u (h^{-1}(f(h)) with h = t + u t^m cancels the "
           "displacement to first order when m is odd), so the move misses -2u by 2|u| "
           "(max %.3f); %.2f s",
           below_drift, even_dev, odd_dev, dt));

  const bool c2 = jet_max <= 1e-10 && lead_even <= 1e-9 && lead_odd <= 1e-9 && fd_dev <= 1e-6;
  emit(2, "path derivative at the origin", c2,
       fmt("derivative jet below order m vanishes to <= %.2e; m-th coefficient equals -2 at "
           "even m (deviation <= %.2e) but the derivative is identically zero at odd m "
           "(misses -2 by %.1f, same parity cancellation as above); dual-number versus "
           "Richardson central-difference agreement <= %.2e",
           jet_max, lead_even, lead_odd, fd_dev));
}

// ---------------------------------------------------------------------------
// Criterion 3: the derived seminorm never exceeds the coefficient 1-norm.
// ---------------------------------------------------------------------------
void criterion_3() {
  Rng rng(4003);
  double worst = -1e300;  // max of norm_d - norm_l1 (should stay <= 0)
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + trial % 21;
    Series1 f(n);
    for (int j = 0; j <= n; ++j) f.set(j, rng.box(2.0));
    worst = std::max(worst, norm_d(f) - norm_l1(f));
  }
  emit(3, "seminorm domination", worst <= 1e-15,
       fmt("1000 random series of orders 4..24: max(norm_d - norm_l1) = %.3e (slack 1e-15)",
           worst));
}

// ---------------------------------------------------------------------------
// Criterion 4: generated involutions verify at full order; membership in the
// order-k classes is downward closed; conjugation by t -> at/(1+bt)
// preserves the verified order.
// ---------------------------------------------------------------------------
void criterion_4() {
  const int N = 24;
  Rng rng(4004);

  int full_ok = 0;
  int min_full = N;
  for (int trial = 0; trial < 200; ++trial) {
    const Involution inv = random_involution(rng, N, 0.3 + 0.1 * (trial % 2));
    const InvolutionCheck chk = check_involution(inv.series, N);
    min_full = std::min(min_full, chk.verified_order);
    if (chk.verified_order == N) ++full_ok;
  }

  // Nesting: perturb a true involution at one odd order p.  The composition
  // defect then appears exactly at p, and membership at every order k must
  // be monotone: verified at k+1 implies verified at k.
  int nest_ok = 0, defect_ok = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Involution base = random_involution(rng, N, 0.3);
    const int p = 3 + 2 * static_cast<int>(std::floor(rng.uniform(0.0, 10.0)));  // odd, 3..21
    Series1 s = base.series;
    s.set(p, s.coeff(p) + (0.05 + 0.1 * rng.uniform(0.0, 1.0)));
    std::vector<bool> member(static_cast<std::size_t>(N) + 1, false);
    for (int k = 0; k <= N; ++k)
      member[static_cast<std::size_t>(k)] = check_involution(s, k).verified_order == k;
    bool monotone = true;
    for (int k = 0; k < N; ++k)
      if (member[static_cast<std::size_t>(k) + 1] && !member[static_cast<std::size_t>(k)])
        monotone = false;
    if (monotone) ++nest_ok;
    if (member[static_cast<std::size_t>(p) - 1] && !member[static_cast<std::size_t>(p)])
      ++defect_ok;
  }

  // Conjugation by the subgroup t -> at/(1+bt): verified order is invariant.
  int moeb_ok = 0;
  const int moeb_trials = 200;
  for (int trial = 0; trial < moeb_trials; ++trial) {
    Involution inv = random_involution(rng, 16, 0.3);
    if (trial % 2 == 1) {  // half the sample: finite verified order
      const int p = 5 + 2 * (trial % 5);
      Series1 s = inv.series;
      s.set(p, s.coeff(p) + cplx{0.1});
      inv = make_involution(s);
    }
    const double th = rng.uniform(0.0, 6.2831853);
    const Moebius g{std::polar(0.7 + 0.6 * rng.uniform(0.0, 1.0), th), rng.box(0.3)};
    const Involution conj = moebius_conjugate(g, inv);
    if (conj.verified_order == inv.verified_order) ++moeb_ok;
  }

  const bool pass = full_ok == 200 && nest_ok == 500 && defect_ok == 500 && moeb_ok == moeb_trials;
  emit(4, "involution class membership", pass,
       fmt("generated involutions verified at full order N=24: %d/200 (min %d); downward "
           "closure of order-k membership: %d/500 (defect localized at the perturbed odd "
           "order: %d/500); conjugation t -> at/(1+bt) preserves verified order: %d/%d",
           full_ok, min_full, nest_ok, defect_ok, moeb_ok, moeb_trials));
}

// ---------------------------------------------------------------------------
// Criterion 5: the cusp-type germ (y^2 + x^3/2) dx - xy dy end to end.
// ---------------------------------------------------------------------------
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  OneForm w;
  w.frame = "xy";
  w.p = Series2(6, 6);
  w.p.set(0, 2, 1.0);
  w.p.set(3, 0, 0.5);
  w.q = Series2(6, 6);
  w.q.set(1, 1, -1.0);

  std::string diag;
  bool pass = true;
  try {
    const InvolutionPipeline pl = involution_of(w);
    double model_dev = 0;  // blown form against (1/2) dx - t dt
    for (int j = 0; j <= pl.reduced.p.order_x(); ++j)
      for (int k = 0; k <= pl.reduced.p.order_t(); ++k) {
        const cplx pe = (j == 0 && k == 0) ? cplx{0.5} : cplx{};
        const cplx qe = (j == 0 && k == 1) ? cplx{-1.0} : cplx{};
        model_dev = std::max(model_dev, std::abs(pl.reduced.p.coeff(j, k) - pe));
        model_dev = std::max(model_dev, std::abs(pl.reduced.q.coeff(j, k) - qe));
      }
    double fint_dev = 0;  // first integral against x - t^2 (normalized F(x,0) = x)
    for (int j = 0; j <= pl.first_int.order_x(); ++j)
      for (int k = 0; k <= pl.first_int.order_t(); ++k) {
        cplx e{};
        if (j == 1 && k == 0) e = 1.0;
        if (j == 0 && k == 2) e = -1.0;
        fint_dev = std::max(fint_dev, std::abs(pl.first_int.coeff(j, k) - e));
      }
    double inv_dev = 0;  // involution against -t
    for (int j = 0; j <= pl.involution.series.order(); ++j)
      inv_dev = std::max(inv_dev,
                         magnitude(pl.involution.series.coeff(j) - (j == 1 ? cplx{-1.0} : cplx{})));
    const double dt = seconds_since(t0);
    pass = pl.k == 3 && std::abs(pl.beta - cplx{0.5}) <= 1e-12 && model_dev <= 1e-12 &&
           fint_dev <= 1e-12 && inv_dev <= 1e-12 && dt < 1.0;
    diag = fmt("blow-up strips x^3 (k=%d) leaving (1/2)dx - t dt (deviation %.2e); beta = 1/2 "
               "within %.2e; first integral x - t^2 within %.2e; involution -t within %.2e; "
               "%.3f s",
               pl.k, model_dev, std::abs(pl.beta - cplx{0.5}), fint_dev, inv_dev, dt);
  } catch (const std::exception& e) {
    pass = false;
    diag = fmt("pipeline threw: %s", e.what());
  }
  emit(5, "cusp germ pipeline", pass, diag);
}

// ---------------------------------------------------------------------------
// Criterion 6: the deck involution of a level function with a simple double
// point, against an independent square-root parametrization oracle.
// ---------------------------------------------------------------------------
void criterion_6() {
  const int N = 24;
  Rng rng(4006);
  double worst_res = 0, worst_oracle = 0;
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Series1 g(N);
    g.set(2, cplx{1.0} + rng.box(0.3));
    double decay = 1.0;
    for (int j = 3; j <= N; ++j) {
      decay *= 0.35;
      g.set(j, rng.box(1.0) * decay);
    }
    const Involution inv = involution_from_level(g);

    // g(i(t)) = g(t) through the truncation order.
    const Series1 resid = compose(g, inv.series) - g;
    double res = 0;
    for (int j = 0; j <= N; ++j) res = std::max(res, magnitude(resid.coeff(j)));
    worst_res = std::max(worst_res, res);

    // Oracle: write g = w^2 with w = t sqrt(g/t^2); the deck transformation
    // swapping the two square-root branches is w^{-1} o (-w).
    Series1 unit(N - 2);
    for (int j = 0; j + 2 <= N; ++j) unit.set(j, g.coeff(j + 2));
    const Series1 su = sqrt_unit(unit);
    Series1 wseries(N - 1);
    for (int j = 1; j <= N - 1; ++j) wseries.set(j, su.coeff(j - 1));
    const Series1 oracle = compose(comp_inverse(wseries), (-1.0) * wseries);
    double dist = 0;
    for (int j = 0; j <= N - 1; ++j)
      dist = std::max(dist, magnitude(oracle.coeff(j) - inv.series.coeff(j)));
    worst_oracle = std::max(worst_oracle, dist);

    if (res <= 1e-10 && dist <= 1e-9) ++ok;
  }
  emit(6, "level-function deck involution", ok == 100,
       fmt("100 level functions with a simple double point (N=24): g o i - g vanishes through "
           "t^24 within %.2e (bound 1e-10); square-root-branch oracle agrees within %.2e "
           "(bound 1e-9); %d/100",
           worst_res, worst_oracle, ok));
}

// ---------------------------------------------------------------------------
// Criterion 7: monodromy of 50 random degree-2..5 maps with simple critical
// values: loop product is the identity, the action is transitive, total
// branching is 2d-2, and everything is stable under step halving.
// ---------------------------------------------------------------------------
void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(4007);
  int accepted = 0, tried = 0;
  int product_ok = 0, transitive_ok = 0, rh_ok = 0, halving_ok = 0;
  std::string first_err;
  while (accepted < 50 && tried < 5000) {
    const int d = 2 + tried % 4;
    Poly num(static_cast<std::size_t>(d) + 1), den{cplx{1.0}};
    for (auto& c : num) c = rng.box(1.0);
    num.back() += cplx{2.0};
    if (tried % 3 == 0) {
      const int dd = 1 + tried % d;
      den.assign(static_cast<std::size_t>(dd) + 1, cplx{});
      for (auto& c : den) c = rng.box(1.0);
      den.back() = cplx{1.0};
    }
    ++tried;
    try {
      const RationalMap r = make_rational(num, den);
      const CriticalData cd = critical_data(r);
      if (cd.degree != d) continue;
      bool simple = true;
      for (const CriticalValue& v : cd.values)
        if (v.total_order != 1) simple = false;
      if (!simple) continue;
      ++accepted;

      const MonodromyResult mono = monodromy(r);
      if (mono.product_identity) ++product_ok;
      if (mono.transitive) ++transitive_ok;
      int total = 0;
      for (const CriticalPoint& p : cd.points) total += p.order;
      if (total == 2 * d - 2) ++rh_ok;

      MonodromyOptions fine;
      fine.circle_segments = 128;
      fine.base_substeps = 4;
      const MonodromyResult mono2 = monodromy(r, fine);
      if (mono2.product_identity && mono2.loop_perms == mono.loop_perms &&
          mono2.infinity_perm == mono.infinity_perm)
        ++halving_ok;
    } catch (const std::exception& e) {
      if (first_err.empty()) first_err = e.what();
    }
  }
  const double dt = seconds_since(t0);
  const bool pass = accepted == 50 && product_ok == 50 && transitive_ok == 50 && rh_ok == 50 &&
                    halving_ok == 50 && dt < 120.0;
  emit(7, "covering monodromy laws", pass,
       fmt("50 maps accepted in %d draws (degrees 2..5, simple critical values): loop product "
           "= identity %d/50; transitive %d/50; total branching = 2d-2 %d/50; stable under "
           "doubling circle segments and substeps %d/50; %.2f s%s%s",
           tried, product_ok, transitive_ok, rh_ok, halving_ok, dt,
           first_err.empty() ? "" : "; first error: ", first_err.c_str()));
}

// ---------------------------------------------------------------------------
// Criterion 8: invariant divisor factors of families a + (t-f)^{m+1} h.
// ---------------------------------------------------------------------------
void criterion_8() {
  Rng rng(4008);
  const int NX = 16, NT = 8;
  int inv_ok = 0, noninv_ok = 0;

  const auto build = [&](int m, bool constant_a, Series1& f_out, cplx& a_out) {
    Series1 f(3);
    f.set(0, rng.box(0.3));
    for (int j = 1; j <= 3; ++j) f.set(j, rng.box(0.4));
    Series2 tmf(NX, NT);
    tmf.set(0, 1, 1.0);
    for (int j = 0; j <= 3; ++j) tmf.add(j, 0, -f.coeff(j));
    Series2 h(NX, NT);
    h.set(0, 0, cplx{1.0} + rng.box(0.2));
    h.set(1, 0, rng.box(0.3));
    h.set(0, 1, rng.box(0.3));
    Series2 num = h;
    for (int p = 0; p < m + 1; ++p) num = num * tmf;
    const cplx a = cplx{1.0} + rng.box(0.5);
    num.add(0, 0, a);
    if (!constant_a) num.add(1, 0, 1.0);  // a(x) = a0 + x: kills invariance
    Series2 den(NX, NT);
    den.set(0, 0, 1.0);
    f_out = f;
    a_out = a;
    return RationalFamily{num, den};
  };

  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    Series1 f(3);
    cplx a;
    const RationalFamily fam = build(m, true, f, a);
    const CriticalCurves cc = classify_critical_curves(fam);
    const CriticalBranch* hit = nullptr;
    for (const CriticalBranch& b : cc.branches)
      if (!b.vertical && b.kind == BranchKind::level && b.multiplicity == m &&
          std::abs(b.center - f.coeff(0)) < 1e-8)
        hit = &b;
    if (hit && std::abs(hit->value - a) < 1e-8 && verify_dR_factor(fam, *hit, m) &&
        !verify_dR_factor(fam, *hit, m + 1))
      ++inv_ok;
  }

  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    Series1 f(3);
    cplx a;
    const RationalFamily fam = build(m, false, f, a);
    const CriticalCurves cc = classify_critical_curves(fam);
    bool clean = true;
    for (const CriticalBranch& b : cc.branches)
      if (verify_dR_factor(fam, b, 1)) clean = false;
    if (clean) ++noninv_ok;
  }

  emit(8, "invariant divisor factors", inv_ok == 100 && noninv_ok == 100,
       fmt("100 families a + (t-f)^{m+1} h, m in {1,2,3}: the curve t = f(x) is recovered as a "
           "level branch of multiplicity m, both partial determinants divide by (t-f)^m and "
           "reject (t-f)^{m+1}: %d/100; 100 families with non-constant a(x): no branch divides "
           "both determinants: %d/100",
           inv_ok, noninv_ok));
}

// ---------------------------------------------------------------------------
// Criterion 9: interlaced-quintic search and negative control.
// ---------------------------------------------------------------------------
void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  const QuinticSearchResult qs = quintic_search(1);
  const bool found_ok = qs.found && quintic_verify(qs.certificate.q).ok;
  // Control: 16 T_5(z/2) = z^5 - 5 z^3 + 5 z has all critical values at +-2,
  // maximally non-interlaced.
  const QuinticCertificate cheb =
      quintic_verify(Poly{cplx{}, cplx{5.0}, cplx{}, cplx{-5.0}, cplx{}, cplx{1.0}});
  const double dt = seconds_since(t0);
  const bool pass = found_ok && !cheb.ok && dt < 60.0;
  emit(9, "interlaced quintic certificate", pass,
       fmt("search (seed 1, default budget) found a certificate in %lld attempts; independent "
           "re-verification %s (4 separated real critical points, interlaced values, and the "
           "double/simple/conjugate-pair level profile); the Chebyshev-type control is "
           "rejected (%s); %.2f s",
           qs.attempts, found_ok ? "passes" : "FAILS", cheb.reason.c_str(), dt));
}

// ---------------------------------------------------------------------------
// Criterion 10: post-composition invariance of the level-branch geometry.
// ---------------------------------------------------------------------------
void criterion_10() {
  Rng rng(4010);
  const double eps_coef = 1e-10;
  int ok = 0;
  double worst = 0;
  std::string first_err;
  for (int trial = 0; trial < 20; ++trial) {
    try {
      const int NX = 8, NT = 8;
      Series1 f(3);
      f.set(0, rng.box(0.3));
      for (int j = 1; j <= 3; ++j) f.set(j, rng.box(0.4));
      Series2 tmf(NX, NT);
      tmf.set(0, 1, 1.0);
      for (int j = 0; j <= 3; ++j) tmf.add(j, 0, -f.coeff(j));
      Series2 h(NX, NT);
      h.set(0, 0, cplx{1.0} + rng.box(0.2));
      h.set(1, 0, rng.box(0.3));
      h.set(0, 1, rng.box(0.3));
      Series2 num = h * tmf * tmf;
      const cplx a = cplx{1.0} + rng.box(0.3);
      num.add(0, 0, a);
      Series2 den(NX, NT);
      den.set(0, 0, 1.0);
      const RationalFamily fam{num, den};
      const Poly q{rng.box(0.5), cplx{1.0} + rng.box(0.3), cplx{0.5} + rng.box(0.3)};
      const RationalFamily post = post_compose(fam, q);

      const auto level_branch = [&](const RationalFamily& fm) -> CriticalBranch {
        const CriticalCurves cc = classify_critical_curves(fm);
        for (const CriticalBranch& b : cc.branches)
          if (!b.vertical && b.kind == BranchKind::level &&
              std::abs(b.center - f.coeff(0)) < 1e-6)
            return b;
        throw numerical_error("level branch not found at the expected center");
      };
      const CriticalBranch b1 = level_branch(fam);
      const CriticalBranch b2 = level_branch(post);

      double dev = std::abs(b1.center - b2.center);
      for (int j = 0; j <= std::min(b1.curve.order(), b2.curve.order()); ++j)
        dev = std::max(dev, magnitude(b1.curve.coeff(j) - b2.curve.coeff(j)));
      dev = std::max(dev, std::abs(poly_eval(q, b1.value) - b2.value));

      const Involution i1 = family_level_involution(fam, b1.center);
      const Involution i2 = family_level_involution(post, b1.center);
      const int ncmp = std::min(i1.series.order(), i2.series.order()) - 1;
      for (int j = 0; j <= ncmp; ++j)
        dev = std::max(dev, magnitude(i1.series.coeff(j) - i2.series.coeff(j)));

      worst = std::max(worst, dev);
      if (b1.multiplicity == b2.multiplicity && dev <= eps_coef) ++ok;
    } catch (const std::exception& e) {
      if (first_err.empty()) first_err = e.what();
    }
  }
  emit(10, "post-composition invariance", ok == 20,
       fmt("20 pairs (family, quadratic reparametrization of the value): level-branch center, "
           "curve, multiplicity, mapped value, and central-fiber involution agree within "
           "%.2e (bound 1e-10): %d/20%s%s",
           worst, ok, first_err.empty() ? "" : "; first error: ", first_err.c_str()));
}

// ---------------------------------------------------------------------------
// Criterion 11: conjugacy-orbit round trip under t -> at/(1+bt).
// ---------------------------------------------------------------------------
void criterion_11() {
  const int N = 12;
  Rng rng(4011);
  int ok = 0;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Involution i1 = random_involution(rng, N, 0.3 + 0.3 * rng.uniform(0.0, 1.0));
    const double th = rng.uniform(0.0, 6.2831853);
    const Moebius g{std::polar(0.7 + 0.6 * rng.uniform(0.0, 1.0), th), rng.box(0.4)};
    const Involution i2 = moebius_conjugate(g, i1);
    const OrbitResult orb = g_orbit_equivalent(i1, i2, N);
    if (!orb.witness_found) continue;
    const Involution back = moebius_conjugate(orb.witness, i1);
    const double dist = max_coeff_dist(back.series, i2.series);
    worst = std::max(worst, dist);
    if (dist <= 1e-8) ++ok;
  }
  emit(11, "conjugacy-orbit round trip", ok == 50,
       fmt("50 conjugate pairs at N=12: a witness in the group t -> at/(1+bt) is found and "
           "re-conjugation reproduces the target within %.2e (bound 1e-8): %d/50",
           worst, ok));
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures;
}
