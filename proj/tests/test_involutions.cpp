#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "folium/involution.hpp"
#include "folium/rng.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"

using namespace folium;

namespace {

Series1 minus_t(int order) {
  Series1 s(order);
  s.set(1, -1.0);
  return s;
}

Involution random_involution(Rng& rng, int order, double radius = 0.6) {
  // Conjugating -t by a random tangent-to-identity map always produces one.
  Series1 phi(order);
  phi.set(1, 1.0);
  for (int j = 2; j <= order; ++j) phi.set(j, rng.box(radius / j));
  return involution_from_conjugator(phi);
}

/// Independent construction of the deck involution of a level function
/// g = g2 t^2 + ...: write g = w^2 with w = t*sqrt(g/t^2), then conjugate the
/// sign flip by w.
Series1 level_involution_oracle(const Series1& g) {
  const int n = g.order();
  Series1 gsub(n - 2);
  for (int j = 0; j <= n - 2; ++j) gsub.set(j, g.coeff(j + 2));
  const Series1 root = sqrt_unit(gsub);  // sqrt(g / t^2), a unit
  Series1 w(n - 1);
  for (int j = 1; j <= n - 1; ++j) w.set(j, root.coeff(j - 1));
  return compose(comp_inverse(w), -w);
}

}  // namespace

TEST_CASE("involution check reports the verified order and first failure") {
  Series1 f(5);
  f.set(1, -1.0);
  f.set(2, 1.0);
  const InvolutionCheck c1 = check_involution(f, 5);
  REQUIRE(c1.verified_order == 2);
  REQUIRE(c1.first_failure == 3);
  REQUIRE(c1.failure_size == Catch::Approx(2.0));

  // g∘g - t = 4 t^5 exactly for g = -t + t^2 - t^3.
  Series1 g(5);
  g.set(1, -1.0);
  g.set(2, 1.0);
  g.set(3, -1.0);
  const InvolutionCheck c2 = check_involution(g, 5);
  REQUIRE(c2.verified_order == 4);
  REQUIRE(c2.first_failure == 5);
  REQUIRE(c2.failure_size == Catch::Approx(4.0));

  const InvolutionCheck c3 = check_involution(minus_t(5), 5);
  REQUIRE(c3.verified_order == 5);
  REQUIRE(c3.first_failure == -1);
}

TEST_CASE("involution check tolerates a nonzero constant term without throwing") {
  Series1 f(4);
  f.set(0, 0.5);
  f.set(1, -1.0);
  const InvolutionCheck c = check_involution(f, 4);
  REQUIRE(c.verified_order == -1);
  REQUIRE(c.first_failure == 0);
  REQUIRE(c.failure_size == Catch::Approx(0.5));
}

TEST_CASE("conjugating the sign flip by t + t^2") {
  Series1 phi(4);
  phi.set(1, 1.0);
  phi.set(2, 1.0);
  const Involution i = involution_from_conjugator(phi);
  REQUIRE(i.verified_order == 4);
  REQUIRE(std::abs(i.series.coeff(1) - cplx{-1.0}) < 1e-12);
  REQUIRE(std::abs(i.series.coeff(2) - cplx{2.0}) < 1e-12);
  REQUIRE(std::abs(i.series.coeff(3) - cplx{-4.0}) < 1e-12);
  REQUIRE(std::abs(i.series.coeff(4) - cplx{10.0}) < 1e-12);
  // Defining property: i composed with the conjugator equals the conjugator
  // composed with the sign flip.
  const Series1 lhs = compose(i.series, phi);
  const Series1 rhs = compose(phi, minus_t(4));
  REQUIRE(max_coeff_dist(lhs, rhs) < 1e-12);
}

TEST_CASE("conjugator construction rejects non-invertible input") {
  Series1 flat(4);
  flat.set(2, 1.0);
  REQUIRE_THROWS_AS(involution_from_conjugator(flat), domain_error);
}

TEST_CASE("level function t^2 yields the sign flip exactly") {
  Series1 g(8);
  g.set(2, 1.0);
  const Involution i = involution_from_level(g);
  REQUIRE(i.verified_order == 8);
  REQUIRE(max_coeff_dist(i.series, minus_t(8)) < 1e-14);
}

TEST_CASE("level involution: quadratic coefficient law and invariance") {
  // For g = t^2 + t^3 the involution starts -t - t^2 - ...
  const int n = 10;
  Series1 g(n);
  g.set(2, 1.0);
  g.set(3, 1.0);
  const Involution i = involution_from_level(g);
  REQUIRE(i.verified_order == n);
  REQUIRE(std::abs(i.series.coeff(1) - cplx{-1.0}) < 1e-12);
  REQUIRE(std::abs(i.series.coeff(2) - cplx{-1.0}) < 1e-12);  // -g3/g2
  // g is invariant: g(i(t)) = g(t) through order n-1 (the last order feels
  // the window edge).
  const Series1 gi = compose(g.resized(n), i.series.resized(n));
  for (int j = 0; j <= n - 1; ++j) REQUIRE(std::abs(gi.coeff(j) - g.coeff(j)) < 1e-11);
}

TEST_CASE("level involution matches the square-root oracle") {
  Rng rng(201);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 9;
    Series1 g(n);
    g.set(2, cplx{1.0} + 0.4 * rng.box(1.0));
    for (int j = 3; j <= n; ++j) g.set(j, rng.box(0.8));
    const Involution i = involution_from_level(g);
    const Series1 oracle = level_involution_oracle(g);
    // The oracle lives on a window one order smaller.
    for (int j = 0; j <= oracle.order(); ++j)
      REQUIRE(std::abs(i.series.coeff(j) - oracle.coeff(j)) < 1e-9);
  }
}

TEST_CASE("level involution is invariant under scaling the level function") {
  Rng rng(202);
  Series1 g(9);
  g.set(2, 1.0);
  for (int j = 3; j <= 9; ++j) g.set(j, rng.box(0.7));
  const Involution i1 = involution_from_level(g);
  const Involution i2 = involution_from_level(cplx{2.5, -1.0} * g);
  REQUIRE(max_coeff_dist(i1.series, i2.series) < 1e-12);
}

TEST_CASE("level involution rejects degenerate level functions") {
  Series1 g1(6);
  g1.set(1, 1.0);  // vanishes to order 1 only
  REQUIRE_THROWS_AS(involution_from_level(g1), domain_error);
  Series1 g2(6);
  g2.set(3, 1.0);  // vanishes to order 3: no quadratic part
  REQUIRE_THROWS_AS(involution_from_level(g2), domain_error);
}

TEST_CASE("homography series, composition, and inverse") {
  // a t / (1 + b t) expands as a t - a b t^2 + a b^2 t^3 - ...
  const Moebius g{cplx{2.0}, cplx{3.0}};
  const Series1 s = moebius_series(g, 4);
  REQUIRE(std::abs(s.coeff(1) - cplx{2.0}) < 1e-13);
  REQUIRE(std::abs(s.coeff(2) - cplx{-6.0}) < 1e-13);
  REQUIRE(std::abs(s.coeff(3) - cplx{18.0}) < 1e-13);
  REQUIRE(std::abs(s.coeff(4) - cplx{-54.0}) < 1e-13);

  const Moebius h{cplx{0.5}, cplx{-1.0}};
  const Moebius gh = moebius_compose(g, h);
  const Series1 lhs = moebius_series(gh, 6);
  const Series1 rhs = compose(moebius_series(g, 6), moebius_series(h, 6));
  REQUIRE(max_coeff_dist(lhs, rhs) < 1e-12);

  const Moebius gi = moebius_inverse(g);
  const Series1 round = compose(moebius_series(g, 6), moebius_series(gi, 6));
  REQUIRE(std::abs(round.coeff(1) - cplx{1.0}) < 1e-12);
  for (int j = 2; j <= 6; ++j) REQUIRE(std::abs(round.coeff(j)) < 1e-12);
}

TEST_CASE("homography conjugation of the sign flip") {
  // Conjugating -t by t/(1 + b t)-type maps sweeps out -t/(1 + 2 b t).
  const cplx b{0.5};
  const Involution base = make_involution(minus_t(6));
  const Involution conj = moebius_conjugate(Moebius{cplx{1.0}, b}, base);
  REQUIRE(conj.verified_order == 6);
  for (int j = 1; j <= 6; ++j) {
    const cplx expect = -std::pow(-2.0 * b, j - 1);
    REQUIRE(std::abs(conj.series.coeff(j) - expect) < 1e-11);
  }
}

TEST_CASE("homography conjugation preserves the verified order") {
  Rng rng(203);
  for (int trial = 0; trial < 10; ++trial) {
    const Involution i = random_involution(rng, 9);
    REQUIRE(i.verified_order == 9);
    const Moebius m{cplx{1.0} + 0.3 * rng.box(1.0), 0.4 * rng.box(1.0)};
    const Involution c = moebius_conjugate(m, i);
    REQUIRE(c.verified_order == 9);
    const InvolutionCheck chk = check_involution(c.series, 9, 1e-8);
    REQUIRE(chk.verified_order == 9);
  }
}

TEST_CASE("orbit equivalence finds the witness for genuinely conjugate involutions") {
  Rng rng(204);
  for (int trial = 0; trial < 10; ++trial) {
    const Involution i1 = random_involution(rng, 10);
    Moebius m{cplx{1.0} + 0.3 * rng.box(1.0), 0.4 * rng.box(1.0)};
    const Involution i2 = moebius_conjugate(m, i1);
    const OrbitResult res = g_orbit_equivalent(i1, i2, 10);
    REQUIRE(res.witness_found);
    REQUIRE(res.definitive);
    REQUIRE(res.residual < 1e-8);
    const Involution check = moebius_conjugate(res.witness, i1);
    REQUIRE(max_coeff_dist(check.series, i2.series) < 1e-7);
  }
}

TEST_CASE("orbit equivalence separates the sign flip from a non-involutive perturbation") {
  // i2 = -t - t^3 composes with itself to t + 2t^3: it is an involution only
  // through order 2, and no homography conjugate of -t matches it at order 3.
  const Involution i1 = make_involution(minus_t(5));
  Series1 s(5);
  s.set(1, -1.0);
  s.set(3, -1.0);
  const Involution i2 = make_involution(s);
  REQUIRE(i2.verified_order == 2);
  const OrbitResult res = g_orbit_equivalent(i1, i2, 3);
  REQUIRE_FALSE(res.witness_found);
  REQUIRE(res.definitive);
  REQUIRE(res.obstruction_order == 3);
}

TEST_CASE("orbit equivalence identifies the full homography orbit of the sign flip") {
  // Every member of the orbit of -t is conjugate to every other.
  const Involution i1 = moebius_conjugate(Moebius{cplx{1.0}, cplx{0.3}}, make_involution(minus_t(8)));
  const Involution i2 = moebius_conjugate(Moebius{cplx{0.7, 0.2}, cplx{-0.2, 0.1}},
                                          make_involution(minus_t(8)));
  const OrbitResult res = g_orbit_equivalent(i1, i2, 8);
  REQUIRE(res.witness_found);
  REQUIRE(res.definitive);
}

TEST_CASE("orbit equivalence rejects involutions with incompatible higher structure") {
  // Two involutions whose quadratic parts agree but which are not conjugate:
  // witnesses must satisfy every order simultaneously.
  const Involution i1 = make_involution(minus_t(6));
  Series1 phi(6);
  phi.set(1, 1.0);
  phi.set(4, 0.3);  // conjugator differing from identity only at order 4
  const Involution i2 = involution_from_conjugator(phi);
  // i2 = -t + (higher order); conjugating -t by homographies produces the
  // one-parameter family -t/(1+2bt), none of which matches i2's order-4 jet
  // with a vanishing order-2 jet unless b = 0, which fails at order 4.
  const OrbitResult res = g_orbit_equivalent(i1, i2, 6);
  REQUIRE_FALSE(res.witness_found);
  REQUIRE(res.definitive);
}
