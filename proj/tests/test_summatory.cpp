#include <cmath>
#include <random>

#include "doctest.h"

#include "gcdsum/summatory.hpp"

using namespace gcdsum;

TEST_CASE("integer k-th roots") {
  CHECK(ikth_root(10, 3) == 2);
  CHECK(ikth_root(8, 3) == 2);
  CHECK(ikth_root(7, 3) == 1);
  CHECK(ikth_root(1'000'000'000'000'000'000ULL, 2) == 1'000'000'000ULL);
  CHECK(ikth_root(0, 4) == 0);
  CHECK(ikth_root(UINT64_MAX, 2) == 4294967295ULL);
  CHECK(ikth_root(UINT64_MAX, 64) == 1);
  CHECK_THROWS_AS(ikth_root(5, 0), std::invalid_argument);

  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t x = rng() >> (rng() % 60);
    const int k = 2 + static_cast<int>(rng() % 9);
    const std::uint64_t r = ikth_root(x, k);
    // r^k <= x < (r+1)^k, with the powers done in 128 bits
    unsigned __int128 lo = 1, hi = 1;
    for (int j = 0; j < k; ++j) {
      lo *= r;
      hi *= r + 1;
    }
    REQUIRE(lo <= x);
    REQUIRE(hi > x);
  }
}

TEST_CASE("threshold plans") {
  CHECK_THROWS_AS(ThresholdPlan({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdPlan({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdPlan({0, 2}), std::invalid_argument);
  const auto plan = ThresholdPlan::from_unsorted({9, 0, 3, 9, -4, 1});
  CHECK(std::vector<i64>(plan.queries().begin(), plan.queries().end()) == std::vector<i64>{1, 3, 9});
  CHECK(plan.max() == 9);
}

TEST_CASE("divisor summatory") {
  const auto t3 = sieve_tau_k(3, 100);
  const auto d = divisor_summatory(t3, ThresholdPlan({1, 5, 10}));
  CHECK(d[0].value == 1);
  CHECK(d[1].value == 16);
  CHECK(d[2].value == 53);
  CHECK(d[2].method == Method::sieve);
  CHECK(divisor_summatory(sieve_tau_k(2, 100), ThresholdPlan({100}))[0].value == 482);
  CHECK_THROWS_AS(divisor_summatory(t3, ThresholdPlan({101})), std::out_of_range);

  // monotone and D_k(y) >= y
  const auto t4 = sieve_tau_k(4, 5000);
  std::vector<i64> ys(5000);
  for (i64 y = 1; y <= 5000; ++y) ys[y - 1] = y;
  const auto all = divisor_summatory(t4, ThresholdPlan(ys));
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].value >= static_cast<i128>(all[i].x));
    if (i) CHECK(all[i].value >= all[i - 1].value);
  }
}

TEST_CASE("piltz remainder") {
  const auto g = stieltjes(4);
  const auto d2 = delta_k(sieve_tau_k(2, 100), 100, residue_main_poly(2, g));
  CHECK(d2 > -10.0);
  CHECK(d2 < 10.0);
  const auto p3 = residue_main_poly(3, g);
  CHECK(delta_k(sieve_tau_k(3, 10), 1, p3) == doctest::Approx(1.0 - p3.coeffs[0]).epsilon(1e-15));
  CHECK_THROWS_AS(delta_k(sieve_tau_k(3, 10), 11, p3), std::out_of_range);
}

TEST_CASE("gcd-kernel sums") {
  CHECK(s_exact(ArithFn::tau, 3, 10).value == 54);
  CHECK(s_exact(ArithFn::mobius, 3, 10).value == 51);
  CHECK(s_exact(ArithFn::delta, 3, 2).value == 4);
  CHECK(s_bruteforce(ArithFn::tau, 3, 10).value == 54);
  CHECK(s_bruteforce(ArithFn::mobius, 3, 10).value == 51);
  CHECK(s_bruteforce(ArithFn::delta, 3, 2).value == 4);
  CHECK(s_bruteforce(ArithFn::tau, 3, 10).method == Method::bruteforce);
  CHECK(s_exact(ArithFn::tau, 3, 10).method == Method::identity);
  for (ArithFn g : {ArithFn::tau, ArithFn::mobius, ArithFn::delta, ArithFn::id, ArithFn::sigma}) {
    CHECK(s_exact(g, 4, 1).value == 1);
    CHECK(s_exact(g, 4, 0).value == 0);
  }
  CHECK_THROWS_AS(s_exact(ArithFn::phi, 3, 10), std::invalid_argument);
  CHECK_THROWS_AS(s_bruteforce(ArithFn::tau, 3, kBruteforceCap + 1), std::invalid_argument);
  CHECK(s_bruteforce(ArithFn::tau, 2, kBruteforceCap + 1, true).value == s_exact(ArithFn::tau, 2, kBruteforceCap + 1).value);
}

TEST_CASE("engine batch agrees with single evaluations") {
  SummatoryEngine engine(3, 200'000);
  const std::vector<i64> xs{1, 7, 8, 9, 26, 27, 28, 1000, 65'535, 199'999, 200'000};
  for (ArithFn g : {ArithFn::tau, ArithFn::mobius, ArithFn::sigma}) {
    const auto batch = engine.s_exact_batch(g, xs);
    REQUIRE(batch.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(batch[i].x == xs[i]);
      CHECK(batch[i].value == engine.s_exact(g, xs[i]).value);
      CHECK(batch[i].value == s_exact(g, 3, xs[i]).value);
    }
  }
  CHECK_THROWS_AS(engine.s_exact(ArithFn::tau, 200'001), std::out_of_range);
}

TEST_CASE("log-moment partial sums") {
  const auto jet = zeta_derivatives(3, 3);
  CHECK(lemma20_partial(3, 0, 7) == 1.0);
  CHECK(lemma20_partial(3, 2, 7) == 0.0);
  CHECK(lemma30_partial(3, 1, 7) == 0.0);
  CHECK(lemma20_partial(3, 1, 0) == 0.0);
  // r = 1 tends to -zeta'(3)
  CHECK(std::fabs(lemma20_partial(3, 1, 1'000'000'000'000'000'000) + jet[1]) < 1e-8);

  // remainders of the asymptotic form are O(x^{-1} log^r x)
  for (int r = 0; r <= 3; ++r) {
    const i64 x = 1'000'000;
    const double diff = std::fabs(lemma20_partial(3, r, x) - lemma20_prediction(3, r, x, jet));
    CHECK(diff <= 100.0 / x * std::pow(std::log(1e6), r));
  }
  // At x = 10^18 the r = 3 remainder is far below x^{-1} log^3 x; a wrong
  // sign on its last term would leave an error of order 10^-12.
  const i64 big = 1'000'000'000'000'000'000;
  const double diff3 = std::fabs(lemma20_partial(3, 3, big) - lemma20_prediction(3, 3, big, jet));
  CHECK(diff3 < 1e-13);

  CHECK_THROWS_AS(lemma20_prediction(3, 4, 1000, jet), std::invalid_argument);
  CHECK_THROWS_AS(lemma20_prediction(2, 1, 1000, zeta_derivatives(2, 1)), std::invalid_argument);
}

TEST_CASE("mu*mu partial sums converge to the moments") {
  for (int k : {3, 4}) {
    const auto m = mu_mu_moments(k, 1);
    CHECK(std::fabs(lemma30_partial(k, 0, 1'000'000'000'000) - m[0]) < 1e-4);
    CHECK(std::fabs(lemma30_partial(k, 1, 1'000'000'000'000) - m[1]) < 1e-3);
  }
}
