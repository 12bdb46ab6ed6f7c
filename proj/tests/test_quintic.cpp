#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "folium/quintic.hpp"

using namespace folium;

TEST_CASE("quintic from symmetric critical points") {
  const Poly q = quintic_from_critical_points({-1.0, -0.7, 0.7, 1.0});
  REQUIRE(q.size() == 6);
  REQUIRE(std::abs(q[5] - cplx{1.0}) < 1e-15);
  REQUIRE(std::abs(q[4]) < 1e-15);
  REQUIRE(std::abs(q[3] - cplx{-7.45 / 3.0}) < 1e-12);
  REQUIRE(std::abs(q[2]) < 1e-15);
  REQUIRE(std::abs(q[1] - cplx{2.45}) < 1e-12);
  REQUIRE(std::abs(q[0]) < 1e-15);

  const QuinticCertificate cert = quintic_verify(q);
  REQUIRE(cert.ok);
  const std::array<double, 4> pts{-1.0, -0.7, 0.7, 1.0};
  for (int i = 0; i < 4; ++i)
    REQUIRE(cert.critical_points[static_cast<std::size_t>(i)] ==
            Catch::Approx(pts[static_cast<std::size_t>(i)]).margin(1e-8));
  REQUIRE(cert.values[0] == Catch::Approx(0.9666666667 * -1.0).margin(1e-8));
  REQUIRE(cert.values[1] == Catch::Approx(-1.0312866667).margin(1e-8));
  REQUIRE(cert.values[2] == Catch::Approx(1.0312866667).margin(1e-8));
  REQUIRE(cert.values[3] == Catch::Approx(0.9666666667).margin(1e-8));
  // The interlaced staircase, straight from the certificate.
  REQUIRE(cert.values[1] < cert.values[0]);
  REQUIRE(cert.values[0] < cert.values[3]);
  REQUIRE(cert.values[3] < cert.values[2]);
}

TEST_CASE("equioscillating quintics are rejected") {
  // z⁵ - 5z³ + 5z has critical values ±2 in the pattern v1 = v3, v2 = v4,
  // which is the opposite of interlacing.
  const Poly cheb{cplx{0.0}, cplx{5.0}, cplx{0.0}, cplx{-5.0}, cplx{0.0}, cplx{1.0}};
  const QuinticCertificate cert = quintic_verify(cheb);
  REQUIRE_FALSE(cert.ok);
  REQUIRE(cert.reason.find("interlaced") != std::string::npos);
}

TEST_CASE("degenerate and malformed quintics are rejected") {
  const Poly monomial{cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
  REQUIRE_FALSE(quintic_verify(monomial).ok);

  const Poly quartic{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
  const QuinticCertificate c4 = quintic_verify(quartic);
  REQUIRE_FALSE(c4.ok);
  REQUIRE(c4.reason.find("degree-5") != std::string::npos);

  Poly complex_q = quintic_from_critical_points({-1.0, -0.7, 0.7, 1.0});
  complex_q[2] = cplx{0.0, 0.5};
  const QuinticCertificate cc = quintic_verify(complex_q);
  REQUIRE_FALSE(cc.ok);
  REQUIRE(cc.reason.find("real") != std::string::npos);
}

TEST_CASE("random search finds an interlaced quintic and is deterministic") {
  const QuinticSearchResult a = quintic_search(2026);
  REQUIRE(a.found);
  REQUIRE(a.certificate.ok);
  REQUIRE(a.certificate.values[1] < a.certificate.values[0]);
  REQUIRE(a.certificate.values[0] < a.certificate.values[3]);
  REQUIRE(a.certificate.values[3] < a.certificate.values[2]);

  const QuinticSearchResult b = quintic_search(2026);
  REQUIRE(b.found == a.found);
  REQUIRE(b.attempts == a.attempts);
  REQUIRE(b.certificate.q.size() == a.certificate.q.size());
  for (std::size_t i = 0; i < a.certificate.q.size(); ++i)
    REQUIRE(b.certificate.q[i] == a.certificate.q[i]);
}
