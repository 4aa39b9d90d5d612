#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gmrfinfo/corrmap.hpp"
#include "gmrfinfo/error.hpp"
#include "oracles.hpp"

using namespace gmrfinfo;

TEST_CASE("edge correlation against the closed form") {
  for (double zeta : {0.01, 0.05, 0.1, 0.2, 0.24}) {
    const double P = 2 / std::numbers::pi * oracle::elliptic_k(4 * zeta);
    CHECK(rho_from_zeta(zeta) == doctest::Approx((P - 1) / (4 * zeta * P)).epsilon(1e-10));
  }
  CHECK(rho_from_zeta(0.0) == 0.0);
  CHECK(rho_from_zeta(0.25) == 1.0);
  // Small zeta: rho ~ zeta (1 + ...) from K's series.
  CHECK(rho_from_zeta(1e-8) == doctest::Approx(1e-8).epsilon(1e-6));
}

TEST_CASE("edge correlation matches the spectral autocovariance ratio") {
  for (double zeta : {0.05, 0.1, 0.15, 0.2}) {
    const auto t = autocovariance_table(sfcar_spectrum(SfcarModel(1.0, zeta)), 512);
    CHECK(std::abs(rho_from_zeta(zeta) - t.at(1, 0) / t.at(0, 0)) < 1e-5);
  }
}

TEST_CASE("edge correlation is increasing in zeta") {
  double prev = -1.0;
  for (double zeta : oracle::linspace(0.0, 0.25, 100)) {
    const double r = rho_from_zeta(zeta);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("round trip zeta -> rho -> zeta") {
  for (double zeta : oracle::linspace(0.0, 0.2499, 100)) {
    CHECK(std::abs(zeta_from_rho(rho_from_zeta(zeta)).zeta() - zeta) < 1e-10);
  }
  for (double lg : {-5.0, -50.0, -500.0, -1500.0}) {
    const auto e = EdgeDependence::from_log_gap(lg);
    const auto back = zeta_from_rho(rho_from_zeta(e));
    CHECK(back.log_gap() == doctest::Approx(lg).epsilon(1e-6));
    CHECK(one_minus_rho(back) == doctest::Approx(one_minus_rho(e)).epsilon(1e-8));
  }
  CHECK(zeta_from_rho(0.0).zeta() == 0.0);
  CHECK(zeta_from_rho(1.0).perfectly_correlated());
  CHECK_THROWS_AS(zeta_from_rho(1.1), DomainError);
  CHECK_THROWS_AS(zeta_from_rho(-0.1), DomainError);
}

TEST_CASE("physical correlation") {
  const PhysicalField field(2.0);
  for (double d : oracle::logspace(1e-3, 10.0, 30)) {
    const double x = 2.0 * d;
    CHECK(rho_from_spacing(field, d) == doctest::Approx(x * std::cyl_bessel_k(1.0, x)).epsilon(1e-12));
  }
  CHECK(rho_from_spacing(field, 0.0) == 1.0);
  CHECK(rho_from_spacing(field, 1e3) == 0.0);
  double prev = 2.0;
  for (double d : oracle::logspace(1e-4, 300.0, 100)) {
    const double r = rho_from_spacing(field, d);
    CHECK(r <= 1.0);
    CHECK(r < prev);
    prev = r;
  }
  // Flat top: 1 - rho vanishes faster than linearly in the spacing.
  CHECK(1 - rho_from_spacing(field, 1e-3) < 1e-4);
  CHECK(rho_from_zeta(zeta_from_spacing(field, 0.3)) ==
        doctest::Approx(rho_from_spacing(field, 0.3)).epsilon(1e-10));
  CHECK_THROWS_AS(PhysicalField(0.0), DomainError);
  CHECK_THROWS_AS(rho_from_spacing(field, -1.0), DomainError);
}
