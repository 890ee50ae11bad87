#include <cmath>
#include <numbers>

#include "doctest.h"

#include "gcdsum/zeta_constants.hpp"

using namespace gcdsum;

namespace {

// Reference values computed to 30 digits with an arbitrary-precision library.
constexpr double kGamma[] = {0.577215664901532860606, -0.0728158454836767248606, -0.00969036319287231848453,
                             0.00205383442030334586616, 0.00232537006546730005747};

constexpr double kZeta3[] = {1.2020569031595942854, -0.19812624288563685333, 0.23974691730538718424,
                             -0.37404368238615126287, 0.75075110412407290959};
constexpr double kZeta4[] = {1.0823232337111381915, -0.068911265896125379849, 0.06505816136788066186,
                             -0.072640849891321371962, 0.099007410024442621025};
constexpr double kMoments3[] = {0.69206987655413603268, -0.22813762658920105835, -0.16325607045792147589,
                                -0.095562047798813378641};
constexpr double kMoments4[] = {0.85366217239329869729, -0.10870493973514566905, -0.081863157836591345368,
                                -0.061068261759326301107, -0.041381881745339462703};

}  // namespace

TEST_CASE("stieltjes constants") {
  const auto g = stieltjes(4);
  REQUIRE(g.max_index() == 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(std::fabs(g.gammas[n] - kGamma[n]) < 1e-12);
    CHECK(g.errors[n] < 1e-10);
    CHECK(std::fabs(g.gammas[n] - kGamma[n]) <= g.errors[n] + 1e-14);
  }
  CHECK(g.laurent(0) == doctest::Approx(kGamma[0]).epsilon(1e-15));
  CHECK(g.laurent(1) == doctest::Approx(-kGamma[1]).epsilon(1e-12));
  CHECK(g.laurent(2) == doctest::Approx(kGamma[2] / 2).epsilon(1e-10));
}

TEST_CASE("stieltjes agrees across cutoffs") {
  const auto a = stieltjes(2, 100'000);
  const auto b = stieltjes(2, 1'000'000);
  for (int n = 0; n <= 2; ++n) CHECK(std::fabs(a.gammas[n] - b.gammas[n]) < 1e-10);
}

TEST_CASE("stieltjes errors") {
  CHECK_THROWS_AS(stieltjes(5), std::invalid_argument);
  CHECK_THROWS_AS(stieltjes(-1), std::invalid_argument);
  CHECK_THROWS_AS(stieltjes(2, 999), PrecisionError);
  CHECK_THROWS_AS(stieltjes(4, 1000, 1e-30), PrecisionError);
}

TEST_CASE("zeta on the real line") {
  CHECK(std::fabs(zeta_real(2.0).value - std::numbers::pi * std::numbers::pi / 6) < 1e-14);
  CHECK(std::fabs(zeta_real(1.1).value - 10.5844484649508098264) < 1e-12);
  CHECK(std::fabs(zeta_real(4.0, 1).value - kZeta4[1]) < 1e-14);
  // central difference cross-check of zeta'(4)
  const double h = 1e-4;
  const double fd = (zeta_real(4.0 + h).value - zeta_real(4.0 - h).value) / (2 * h);
  CHECK(std::fabs(fd - kZeta4[1]) < 1e-8);
  CHECK_THROWS_AS(zeta_real(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta_real(0.5), std::domain_error);
  CHECK_THROWS_AS(zeta_real(2.0, -1), std::invalid_argument);
}

TEST_CASE("zeta derivative jets") {
  const auto j3 = zeta_derivatives(3, 4);
  const auto j4 = zeta_derivatives(4, 4);
  for (int r = 0; r <= 4; ++r) {
    CHECK(std::fabs(j3[r] - kZeta3[r]) < 1e-13 * std::max(1.0, std::fabs(kZeta3[r])));
    CHECK(std::fabs(j4[r] - kZeta4[r]) < 1e-13);
    CHECK(j3.errors[r] <= kZetaPrecisionGoal);
  }
  // sign pattern: (-1)^r zeta^(r)(k) > 0
  for (int r = 0; r <= 4; ++r) CHECK(((r % 2) ? -j4[r] : j4[r]) > 0);
  CHECK_THROWS_AS(zeta_derivatives(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(zeta_derivatives(3, 5), std::invalid_argument);
}

TEST_CASE("mu*mu moments") {
  const auto m3 = mu_mu_moments(3, 3);
  const auto m4 = mu_mu_moments(4, 4);
  for (int r = 0; r <= 3; ++r) CHECK(std::fabs(m3[r] - kMoments3[r]) < 1e-12);
  for (int r = 0; r <= 4; ++r) CHECK(std::fabs(m4[r] - kMoments4[r]) < 1e-12);

  for (int k = 3; k <= 8; ++k) {
    const auto jet = zeta_derivatives(k, 2);
    const auto m = mu_mu_moments(k, 2);
    const double z = jet[0], z1 = jet[1], z2 = jet[2];
    CHECK(std::fabs(m[0] - 1 / (z * z)) < 1e-14);
    CHECK(std::fabs(m[1] - 2 * z1 / (z * z * z)) < 1e-10);
    CHECK(std::fabs(m[2] - 2 * (3 * z1 * z1 - z2 * z) / (z * z * z * z)) < 1e-10);
  }
  CHECK_THROWS_AS(mu_mu_moments(3, 4), std::invalid_argument);
}

TEST_CASE("epsilon envelope") {
  CHECK(epsilon_envelope(std::exp(std::numbers::e)) == doctest::Approx(std::exp(-std::pow(std::numbers::e, 0.6))));
  const double v = epsilon_envelope(1e6);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(epsilon_envelope(1e8) < epsilon_envelope(1e6));
  CHECK(epsilon_envelope(1e6, 2.0) < v);
  CHECK_THROWS_AS(epsilon_envelope(5.0), std::domain_error);
  CHECK_THROWS_AS(epsilon_envelope(100.0, 0.0), std::domain_error);
}
