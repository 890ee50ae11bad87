#include "gcdsum/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "gcdsum/asymptotics.hpp"

namespace gcdsum {

namespace {

constexpr ArithFn kWeights[] = {ArithFn::tau, ArithFn::mobius, ArithFn::delta, ArithFn::id, ArithFn::sigma};

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Outcome check_oracle_equivalence(const VerifyOptions& o) {
  std::vector<i64> xs(static_cast<std::size_t>(o.oracle_max));
  for (i64 x = 1; x <= o.oracle_max; ++x) xs[static_cast<std::size_t>(x - 1)] = x;
  for (int k : {3, 4, 5}) {
    SummatoryEngine engine(k, o.oracle_max);
    for (ArithFn g : kWeights) {
      const auto table = sieve_function(g, o.oracle_max);
      const auto exact = engine.s_exact_batch(g, xs);
      i128 brute = 0;
      for (i64 x = 1; x <= o.oracle_max; ++x) {
        brute += gcd_kernel_direct(table, k, x);
        if (exact[static_cast<std::size_t>(x - 1)].value != brute) {
          return {false, "S_{" + std::string(weight_name(g)) + "," + std::to_string(k) + "}(" +
                             std::to_string(x) + ") identity " + to_string(exact[x - 1].value) +
                             " != brute force " + to_string(brute)};
        }
      }
    }
  }
  return {true, "x <= " + std::to_string(o.oracle_max) + ", 5 weights, k = 3..5"};
}

Outcome check_kernel_identity(const VerifyOptions& o) {
  for (ArithFn g : kWeights) {
    const auto table = sieve_function(g, o.oracle_max);
    for (int k = 2; k <= 5; ++k) {
      const auto tables = make_kernel_tables(table, k);
      for (i64 n = 1; n <= o.oracle_max; ++n) {
        if (gcd_kernel_direct(table, k, n) != gcd_kernel_identity(tables, n)) {
          return {false, "f_(" + std::string(weight_name(g)) + "," + std::to_string(k) + ")(" +
                             std::to_string(n) + ") differs"};
        }
      }
    }
  }
  return {true, "n <= " + std::to_string(o.oracle_max) + ", k = 2..5"};
}

Outcome check_sieve_identities(const VerifyOptions& o) {
  const i64 n = o.oracle_max;
  const auto mu = sieve_builtin(ArithFn::mobius, n);
  const auto one = sieve_builtin(ArithFn::one, n);
  if (!(dirichlet_convolve(mu, one) == sieve_builtin(ArithFn::delta, n))) return {false, "mu*1 != delta"};
  auto fold = one;
  for (int k = 2; k <= 6; ++k) {
    fold = dirichlet_convolve(fold, one);
    if (!(fold == sieve_tau_k(k, n))) return {false, "tau_" + std::to_string(k) + " != fold of 1"};
  }
  return {true, "mu*1 = delta; tau_k = 1*...*1 for k <= 6"};
}

Outcome check_residue(const StieltjesConstants& g) {
  const double c0 = g.laurent(0), c1 = g.laurent(1), c2 = g.laurent(2);
  const auto p3 = residue_main_poly(3, g);
  const auto p4 = residue_main_poly(4, g);
  const double want3[] = {3 * c0 * c0 - 3 * c0 + 3 * c1 + 1, 3 * c0 - 1, 0.5};
  const double want4[] = {12 * c0 * c1 + 4 * c0 * c0 * c0 - 6 * c0 * c0 + 4 * (c0 - c1 + c2) - 1,
                          6 * c0 * c0 - 4 * c0 + 4 * c1 + 1, 2 * c0 - 0.5, 1.0 / 6.0};
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) worst = std::max(worst, std::fabs(p3.coeffs[j] - want3[j]));
  for (int j = 0; j < 4; ++j) worst = std::max(worst, std::fabs(p4.coeffs[j] - want4[j]));
  return {worst <= 1e-10, "max abs deviation " + fmt(worst)};
}

Outcome check_moments() {
  double closed = 0.0, fd = 0.0, printed_m3 = 0.0;
  for (int k = 3; k <= 8; ++k) {
    const auto jet = zeta_derivatives(k, 3);
    const auto m = mu_mu_moments(k, 3);
    const double z = jet[0], d1 = jet[1], d2 = jet[2], d3 = jet[3];
    closed = std::max(closed, std::fabs(m[1] - 2 * d1 / (z * z * z)));
    closed = std::max(closed, std::fabs(m[2] - 2 * (3 * d1 * d1 - d2 * z) / std::pow(z, 4)));

    const double h = 1e-3;
    auto f = [](double s) {
      const double z = zeta_real(s).value;
      return 1.0 / (z * z);
    };
    const double s = k;
    const double fd1 = -(f(s + h) - f(s - h)) / (2 * h);
    const double fd2 = (f(s + h) - 2 * f(s) + f(s - h)) / (h * h);
    const double fd3 = -(f(s + 2 * h) - 2 * f(s + h) + 2 * f(s - h) - f(s - 2 * h)) / (2 * h * h * h);
    fd = std::max({fd, std::fabs(m[1] - fd1), std::fabs(m[2] - fd2), std::fabs(m[3] - fd3)});

    const double a = d1 / z, b = d2 / z, c = d3 / z;
    const double printed = 2 / (z * z) * (12 * a * a * a + 3 * a * b - c);
    printed_m3 = std::max(printed_m3, std::fabs(m[3] - printed));
  }
  return {closed <= 1e-10 && fd <= 1e-5, "closed forms r=1,2 " + fmt(closed) + "; finite differences r<=3 " +
                                             fmt(fd) + "; printed M_{k,3} off by up to " + fmt(printed_m3)};
}

Outcome check_theorem_agreement(const StieltjesConstants& gammas) {
  double worst = 0.0;
  for (int k : {3, 4}) {
    for (ArithFn g : {ArithFn::tau, ArithFn::mobius}) {
      const auto jet = zeta_derivatives(k, k - 1);
      const auto generic = main_term_generic(g, k, residue_main_poly(k, gammas), jet, mu_mu_moments(k, k - 1));
      worst = std::max(worst, max_relative_gap(main_term_theorem(g, k, jet, gammas), generic));
    }
  }
  return {worst <= 1e-8, "max relative gap " + fmt(worst)};
}

Outcome check_envelope(const VerifyOptions& o) {
  const auto grid = geometric_grid(1000, o.envelope_x_max, o.envelope_points);
  double worst = 0.0;
  std::string where;
  for (int k : {3, 4}) {
    SummatoryEngine engine(k, o.envelope_x_max);
    const double exponent = alpha_bound(k).alpha.value() + 0.05;
    for (ArithFn g : {ArithFn::tau, ArithFn::mobius}) {
      for (const auto& r : error_scan(engine, g, main_term_generic(g, k), grid)) {
        const double ratio = std::fabs(r.error) / (10.0 * std::pow(static_cast<double>(r.x), exponent));
        if (ratio > worst) {
          worst = ratio;
          where = std::string(weight_name(g)) + "," + std::to_string(k) + " at x=" + std::to_string(r.x);
        }
      }
    }
  }
  return {worst <= 1.0, "max |E| / (10 x^{alpha+0.05}) = " + fmt(worst) + " (" + where + ")"};
}

Outcome check_fits_and_trend(const VerifyOptions& o) {
  std::ostringstream detail;
  bool ok = true;
  {
    const auto grid = geometric_grid(1000, o.envelope_x_max, o.envelope_points);
    const auto records = error_scan(ArithFn::tau, 3, grid);
    const auto fit = fit_exponent(records, 10'000);
    ok &= fit.slope <= 0.60;
    detail << "tau,3 slope " << fit.slope;

    // Kendall tau of (x, normalized) over the top two decades.
    std::vector<double> xs, ns;
    for (const auto& r : records) {
      if (static_cast<double>(r.x) * 100.0 >= static_cast<double>(o.envelope_x_max)) {
        xs.push_back(static_cast<double>(r.x));
        ns.push_back(r.normalized);
      }
    }
    const double tau = kendall_tau(xs, ns);
    ok &= tau <= 0.5;
    detail << "; trend tau " << tau;
  }
  for (int k : {5, 6}) {
    const auto grid = geometric_grid(1000, std::min<i64>(o.envelope_x_max, 1'000'000), o.envelope_points);
    const auto fit = fit_exponent(error_scan(ArithFn::tau, k, grid));
    const double bound = alpha_bound(k).alpha.value() + 0.15;
    ok &= fit.slope <= bound;
    detail << "; tau," << k << " slope " << fit.slope << " (<= " << bound << ")";
  }
  return {ok, detail.str()};
}

Outcome check_log_moments() {
  const auto jet = zeta_derivatives(3, 3);
  const i64 x = 1'000'000;
  double worst = 0.0;
  for (int r = 0; r <= 3; ++r) {
    const double diff = std::fabs(lemma20_partial(3, r, x) - lemma20_prediction(3, r, x, jet));
    const double envelope = 100.0 / x * std::pow(std::log(static_cast<double>(x)), r);
    worst = std::max(worst, diff / envelope);
  }
  return {worst <= 1.0, "max remainder / envelope " + fmt(worst)};
}

Outcome check_mu_mu_convergence() {
  for (int k : {3, 4}) {
    const double z = zeta_derivatives(k, 0)[0];
    double prev = INFINITY;
    for (i64 x : {1'000, 10'000, 100'000, 1'000'000}) {
      const double d = std::fabs(lemma30_partial(k, 0, x) - 1 / (z * z));
      if (!(d < prev)) return {false, "k=" + std::to_string(k) + " not decreasing at x=" + std::to_string(x)};
      prev = d;
    }
  }
  return {true, "k = 3, 4 over x = 10^3..10^6"};
}

Outcome check_dirichlet_series() {
  const i64 n = 100'000;
  const auto tables = make_kernel_tables(sieve_builtin(ArithFn::id, n), 3);
  CompensatedSum sum;
  for (i64 m = 1; m <= n; ++m) {
    const double d = static_cast<double>(m);
    sum += static_cast<double>(gcd_kernel_identity(tables, m)) / (d * d);
  }
  const double z2 = zeta_real(2).value, z5 = zeta_real(5).value, z6 = zeta_real(6).value;
  const double diff = std::fabs(sum.value() - z2 * z2 * z2 * z5 / z6);
  return {diff <= 1e-2, "|partial - zeta^3(2) zeta(5)/zeta(6)| = " + fmt(diff)};
}

Outcome check_laurent(const StieltjesConstants& g) {
  const double u = 0.1;
  double approx = 1.0 / u;
  for (int j = 0; j <= 4; ++j) approx += g.laurent(j) * std::pow(u, j);
  const double diff = std::fabs(approx - zeta_real(1.1).value);
  return {diff <= 1e-8, "zeta(1.1) from the expansion off by " + fmt(diff)};
}

Outcome check_alpha() {
  for (int k = 5; k < 200; ++k) {
    const double a = alpha_bound(k).alpha.value();
    if (!(a < 1.0)) return {false, "alpha_" + std::to_string(k) + " >= 1"};
    // The tabulated bound drops once, from 23/27 at k=25 to 5/6 at k=26.
    if (k > 5 && k != 26 && a < alpha_bound(k - 1).alpha.value()) {
      return {false, "alpha decreases at k=" + std::to_string(k)};
    }
  }
  return {true, "below 1, nondecreasing for k >= 5 apart from the 25 -> 26 step"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options, std::ostream* log) {
  const auto gammas = stieltjes(kMaxStieltjesIndex);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"oracle-equivalence", [&] { return check_oracle_equivalence(options); }},
      {"kernel-identity", [&] { return check_kernel_identity(options); }},
      {"sieve-identities", [&] { return check_sieve_identities(options); }},
      {"residue-coefficients", [&] { return check_residue(gammas); }},
      {"mu-mu-moments", [] { return check_moments(); }},
      {"theorem-generic-agreement", [&] { return check_theorem_agreement(gammas); }},
      {"zeta-laurent", [&] { return check_laurent(gammas); }},
      {"error-envelope", [&] { return check_envelope(options); }},
      {"exponent-fit", [&] { return check_fits_and_trend(options); }},
      {"log-moment-remainders", [] { return check_log_moments(); }},
      {"mu-mu-convergence", [] { return check_mu_mu_convergence(); }},
      {"dirichlet-series", [] { return check_dirichlet_series(); }},
      {"alpha-table", [] { return check_alpha(); }},
  };

  std::vector<CheckResult> results;
  for (const auto& [name, fn] : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back({name, outcome.passed, outcome.detail, secs});
    if (log) {
      *log << (outcome.passed ? "PASS " : "FAIL ") << name << ": " << outcome.detail << " [" << secs << "s]\n";
      log->flush();
    }
  }
  return results;
}

}  // namespace gcdsum
