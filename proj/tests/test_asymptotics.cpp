#include <cmath>
#include <sstream>

#include "doctest.h"

#include "gcdsum/asymptotics.hpp"

using namespace gcdsum;

namespace {

std::vector<ErrorRecord> synthetic(double exponent, double wobble) {
  std::vector<ErrorRecord> out;
  for (i64 x : geometric_grid(1000, 10'000'000, 40)) {
    const double t = static_cast<double>(x);
    const double e = 3.0 * std::pow(t, exponent) * (1.0 + wobble * std::sin(std::log(t)));
    out.push_back({ArithFn::tau, 3, x, 0, 0.0, e, 0.0});
  }
  return out;
}

}  // namespace

TEST_CASE("error exponent table") {
  CHECK(alpha_bound(3).alpha == Rational{43, 96});
  CHECK(alpha_bound(4).alpha == Rational{1, 2});
  CHECK(alpha_bound(5).alpha == Rational{11, 20});
  CHECK(alpha_bound(9).alpha == Rational{35, 54});
  CHECK(alpha_bound(58).alpha == Rational{186, 203});
  CHECK(make_rational(372, 406) == Rational{186, 203});
  CHECK(make_rational(3, -6) == Rational{-1, 2});
  for (int k = 3; k <= 200; ++k) CHECK(alpha_bound(k).alpha.value() < 1.0);
  for (int k = 5; k <= 200; ++k) {
    // The table steps down once, between its k <= 25 and k >= 26 pieces.
    if (k == 26) continue;
    CHECK(alpha_bound(k).alpha.value() >= alpha_bound(k - 1).alpha.value());
  }
  CHECK_THROWS_AS(alpha_bound(2), std::invalid_argument);
}

TEST_CASE("theorem and generic main terms agree") {
  for (ArithFn g : {ArithFn::tau, ArithFn::mobius}) {
    for (int k : {3, 4}) {
      const auto theorem = main_term_theorem(g, k, zeta_derivatives(k, k - 1), stieltjes(4));
      const auto generic = main_term_generic(g, k);
      CHECK(theorem.provenance == Provenance::theorem);
      CHECK(generic.provenance == Provenance::generic);
      CHECK(max_relative_gap(theorem, generic) <= 1e-8);
    }
  }
}

TEST_CASE("leading main-term coefficients") {
  double factorial = 1.0;
  for (int k = 3; k <= 6; ++k) {
    factorial *= k - 1;
    const double z = zeta_real(k).value;
    CHECK(main_term_generic(ArithFn::tau, k).coeffs[k - 1] == doctest::Approx(z / factorial).epsilon(1e-13));
    CHECK(main_term_generic(ArithFn::mobius, k).coeffs[k - 1] == doctest::Approx(1 / (factorial * z * z)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(main_term_generic(ArithFn::sigma, 3), std::invalid_argument);
  CHECK_THROWS_AS(main_term_theorem(ArithFn::tau, 5, zeta_derivatives(5, 4), stieltjes(4)), std::invalid_argument);
}

TEST_CASE("geometric grid") {
  const auto grid = geometric_grid(1000, 10'000'000, 40);
  CHECK(grid.size() == 40);
  CHECK(grid.front() == 1000);
  CHECK(grid.back() == 10'000'000);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  CHECK(geometric_grid(1, 3, 10).size() == 3);
  CHECK_THROWS_AS(geometric_grid(10, 5, 4), std::invalid_argument);
}

TEST_CASE("exponent fit") {
  const auto exact = fit_exponent(synthetic(0.5, 0.0));
  CHECK(std::fabs(exact.slope - 0.5) < 1e-12);
  CHECK(exact.n_points == 40);
  CHECK(std::fabs(fit_exponent(synthetic(0.448, 0.01)).slope - 0.448) < 0.02);
  CHECK(fit_exponent(synthetic(0.5, 0.0), 1e4).n_points < 40);

  auto with_zeros = synthetic(0.5, 0.0);
  with_zeros[0].error = 0.0;
  with_zeros[3].error = 0.0;
  const auto fit = fit_exponent(with_zeros);
  CHECK(fit.zero_error_dropped == 2);
  CHECK(fit.n_points == 38);

  auto few = synthetic(0.5, 0.0);
  few.resize(4);
  CHECK_THROWS_AS(fit_exponent(few), std::invalid_argument);
}

TEST_CASE("kendall tau") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 6, 8, 10};
  const std::vector<double> down{5, 4, 3, 2, 1};
  CHECK(kendall_tau(a, up) == doctest::Approx(1.0));
  CHECK(kendall_tau(a, down) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(kendall_tau(a, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("small-x scans use only the m = 1 term") {
  // x < 2^k: S_{g,k}(x) = D_k(x)
  for (ArithFn g : {ArithFn::tau, ArithFn::mobius}) {
    const std::vector<i64> grid{1, 2, 5, 7};
    const auto records = error_scan(g, 3, grid);
    const auto tau3 = sieve_tau_k(3, 7);
    const auto d = divisor_summatory(tau3, ThresholdPlan(grid));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(records[i].s_exact == d[i].value);
      CHECK(records[i].error == static_cast<double>(d[i].value) - records[i].main);
    }
  }
}

TEST_CASE("normalized errors stay bounded for k = 3") {
  for (ArithFn g : {ArithFn::tau, ArithFn::mobius}) {
    const auto records = error_scan(g, 3, geometric_grid(100, 1'000'000, 30));
    for (const auto& r : records) {
      CHECK(r.normalized <= 10.0);
      CHECK(r.normalized == doctest::Approx(std::fabs(r.error) / std::pow(static_cast<double>(r.x), 43.0 / 96)));
    }
  }
}

TEST_CASE("scan output") {
  ScanConfig config = default_scan_config(ArithFn::mobius, 3);
  config.x_max = 100'000;
  config.points = 12;
  const auto report = run_scan(config);
  REQUIRE(report.records.size() == 12);
  REQUIRE(report.theorem_gap.has_value());
  CHECK(*report.theorem_gap <= 1e-8);
  CHECK(report.fit.has_value());

  std::ostringstream os;
  write_csv(os, report.records);
  const std::string csv = os.str();
  CHECK(csv.rfind("g,k,x,s_exact,main_term,error,normalized\n", 0) == 0);
  CHECK(csv.find("\nmu,3,1000,") != std::string::npos);

  // identical configuration, identical bytes
  std::ostringstream again;
  write_csv(again, run_scan(config).records);
  CHECK(again.str() == csv);

  const auto j = to_json(report, true);
  CHECK(j.at("records").size() == 12);
  CHECK(j.at("alpha").at("den") == 96);
  CHECK(j.at("records")[0].at("s_exact").is_number_integer());
}

TEST_CASE("scan configuration") {
  CHECK(default_scan_config(ArithFn::tau, 4).x_max == 10'000'000);
  CHECK(default_scan_config(ArithFn::tau, 5).x_max == 1'000'000);
  const auto c = scan_config_from_json(nlohmann::json::parse(R"({"g": "mu", "k": 4, "points": 7, "fit": false})"),
                                       ScanConfig{});
  CHECK(c.g == ArithFn::mobius);
  CHECK(c.k == 4);
  CHECK(c.points == 7);
  CHECK_FALSE(c.fit);
  CHECK(c.x_min == 1000);
  CHECK(c.drop_decades == 1);
  CHECK_THROWS_AS(scan_config_from_json(nlohmann::json::array(), ScanConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(scan_config_from_json(nlohmann::json::parse(R"({"g": "nope"})"), ScanConfig{}), std::invalid_argument);

  ScanConfig bad;
  bad.k = 2;
  CHECK_THROWS_AS(run_scan(bad), std::invalid_argument);
  bad = ScanConfig{};
  bad.format = "xml";
  CHECK_THROWS_AS(run_scan(bad), std::invalid_argument);
  bad = ScanConfig{};
  bad.g = ArithFn::sigma;
  CHECK_THROWS_AS(run_scan(bad), std::invalid_argument);
}
