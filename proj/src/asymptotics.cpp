#include "gcdsum/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gcdsum {

namespace {

const StieltjesConstants& default_stieltjes() {
  static const StieltjesConstants gammas = stieltjes(kMaxStieltjesIndex);
  return gammas;
}

void require_tau_or_mu(ArithFn g, const char* who) {
  if (g != ArithFn::tau && g != ArithFn::mobius) {
    throw std::invalid_argument(std::string(who) + ": g must be tau or mu, got '" +
                                std::string(name_of(g)) + "'");
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

nlohmann::json integer_json(i128 v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) {
    return static_cast<i64>(v);
  }
  return to_string(v);
}

}  // namespace

std::string_view name_of(Provenance p) { return p == Provenance::theorem ? "theorem" : "generic"; }

std::string_view weight_name(ArithFn g) { return g == ArithFn::mobius ? "mu" : name_of(g); }

double MainTermSpec::poly(double log_x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * log_x + *it;
  return acc;
}

MainTermSpec main_term_theorem(ArithFn g, int k, const ZetaJet& jet, const StieltjesConstants& gammas) {
  require_tau_or_mu(g, "main_term_theorem");
  if (k != 3 && k != 4) throw std::invalid_argument("main_term_theorem: k must be 3 or 4");
  if (jet.k != k || jet.order < k - 1) throw std::invalid_argument("main_term_theorem: jet does not cover k");
  if (gammas.max_index() < k - 2) throw std::invalid_argument("main_term_theorem: too few Stieltjes constants");

  // Laurent coefficients of zeta at 1 (the constants gamma, gamma_1, gamma_2 of the closed forms).
  const double c0 = gammas.laurent(0);
  const double c1 = gammas.laurent(1);
  const double z = jet[0];
  const double a = jet[1] / z;
  const double b = jet[2] / z;

  if (k == 3) {
    const double b2 = 3 * c0 - 1;
    const double b3 = 3 * c0 * c0 - 3 * c0 + 3 * c1 + 1;
    if (g == ArithFn::tau) {
      return {g, k, {z * (b3 + 3 * b2 * a + 4.5 * b), z * (b2 + 3 * a), z / 2}, Provenance::theorem};
    }
    const double iz = 1.0 / (z * z);
    return {g, k, {iz * (b3 - 6 * b2 * a - 9 * b + 27 * a * a), iz * (b2 - 6 * a), iz / 2}, Provenance::theorem};
  }

  const double c2 = gammas.laurent(2);
  const double c = jet[3] / z;
  const double e2 = 2 * c0 - 0.5;
  const double e3 = 6 * c0 * c0 - 4 * c0 + 4 * c1 + 1;
  const double e4 = 12 * c0 * c1 + 4 * c0 * c0 * c0 - 6 * c0 * c0 + 4 * (c0 - c1 + c2) - 1;
  if (g == ArithFn::tau) {
    return {g,
            k,
            {z * (e4 + 4 * e3 * a) + 16 * z * (e2 * b + 2.0 / 3.0 * c), z * (e3 + 8 * e2 * a + 8 * b),
             z * (e2 + 2 * a), z / 6},
            Provenance::theorem};
  }
  const double iz = 1.0 / (z * z);
  return {g,
          k,
          {iz * (e4 - 8 * e3 * a) + 32 * iz * e2 * (3 * a * a - b) - 64.0 / 3.0 * iz * (12 * a * a * a - 9 * a * b + c),
           16 * iz * (e3 / 16 - e2 * a - b + 3 * a * a), iz * (e2 - 4 * a), iz / 6},
          Provenance::theorem};
}

MainTermSpec main_term_generic(ArithFn g, int k, const MainTermPolynomial& poly, const ZetaJet& jet,
                               const MuMuMoments& moments) {
  require_tau_or_mu(g, "main_term_generic");
  if (k < 3) throw std::invalid_argument("main_term_generic: k must be >= 3");
  if (poly.k != k || poly.degree() != k - 1) throw std::invalid_argument("main_term_generic: polynomial is not for this k");
  if (jet.k != k || jet.order < k - 1) throw std::invalid_argument("main_term_generic: insufficient zeta derivatives");
  if (g == ArithFn::mobius && (moments.k != k || static_cast<int>(moments.moments.size()) < k)) {
    throw std::invalid_argument("main_term_generic: insufficient mu*mu moments");
  }

  // T_l = sum_n w(n) log^l n / n^k for w = 1 or mu*mu.
  std::vector<double> T(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) {
    T[static_cast<std::size_t>(l)] = (g == ArithFn::tau) ? ((l % 2 == 0) ? 1.0 : -1.0) * jet[l] : moments[l];
  }

  // log^r(x / n^k) = sum_l C(r,l) (log x)^{r-l} (-k)^l log^l n
  std::vector<double> a(static_cast<std::size_t>(k), 0.0);
  for (int r = 0; r < k; ++r) {
    double minus_k_pow = 1.0;
    for (int l = 0; l <= r; ++l) {
      a[static_cast<std::size_t>(r - l)] +=
          poly.coeffs[static_cast<std::size_t>(r)] * binomial(r, l) * minus_k_pow * T[static_cast<std::size_t>(l)];
      minus_k_pow *= -k;
    }
  }
  return {g, k, std::move(a), Provenance::generic};
}

MainTermSpec main_term_generic(ArithFn g, int k) {
  require_tau_or_mu(g, "main_term_generic");
  if (k < 3) throw std::invalid_argument("main_term_generic: k must be >= 3");
  const auto& gammas = default_stieltjes();
  const auto poly = residue_main_poly(k, gammas);
  const auto jet = zeta_derivatives(k, k - 1);
  const auto moments = (g == ArithFn::mobius) ? mu_mu_moments(k, k - 1) : MuMuMoments{k, {}, {}};
  return main_term_generic(g, k, poly, jet, moments);
}

double max_relative_gap(const MainTermSpec& a, const MainTermSpec& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("max_relative_gap: degree mismatch");
  double gap = 0.0;
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    const double scale = std::max(std::fabs(a.coeffs[j]), std::fabs(b.coeffs[j]));
    if (scale == 0.0) continue;
    gap = std::max(gap, std::fabs(a.coeffs[j] - b.coeffs[j]) / scale);
  }
  return gap;
}

Rational make_rational(i64 num, i64 den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 d = std::gcd(num, den);
  return {num / d, den / d};
}

AlphaBound alpha_bound(int k) {
  if (k < 3) throw std::invalid_argument("alpha_bound: k must be >= 3");
  const i64 K = k;
  Rational r;
  if (k == 3) r = make_rational(43, 96);
  else if (k == 4) r = make_rational(1, 2);
  else if (k <= 8) r = make_rational(3 * K - 4, 4 * K);
  else if (k == 9) r = make_rational(35, 54);
  else if (k == 10) r = make_rational(41, 60);
  else if (k == 11) r = make_rational(7, 10);
  else if (k <= 25) r = make_rational(K - 2, K + 2);
  else if (k <= 50) r = make_rational(K - 1, K + 4);
  else if (k <= 57) r = make_rational(31 * K - 98, 32 * K);
  else r = make_rational(7 * K - 34, 7 * K);
  return {k, r};
}

std::vector<i64> geometric_grid(i64 x_min, i64 x_max, int points) {
  if (x_min < 1 || x_max < x_min) throw std::invalid_argument("geometric_grid: need 1 <= x_min <= x_max");
  if (points < 1) throw std::invalid_argument("geometric_grid: need at least one point");
  if (points == 1 || x_min == x_max) return {x_min};
  std::vector<i64> grid;
  const double lo = std::log(static_cast<double>(x_min));
  const double hi = std::log(static_cast<double>(x_max));
  for (int i = 0; i < points; ++i) {
    i64 x = static_cast<i64>(std::llround(std::exp(lo + (hi - lo) * i / (points - 1))));
    if (i == 0) x = x_min;
    if (i == points - 1) x = x_max;
    x = std::clamp(x, x_min, x_max);
    if (grid.empty() || x > grid.back()) grid.push_back(x);
  }
  return grid;
}

std::vector<ErrorRecord> error_scan(SummatoryEngine& engine, ArithFn g, const MainTermSpec& main,
                                    std::span<const i64> grid) {
  if (main.g != g || main.k != engine.k()) throw std::invalid_argument("error_scan: main term does not match (g, k)");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("error_scan: grid must be increasing");
  const double alpha = alpha_bound(engine.k()).alpha.value();
  const auto sums = engine.s_exact_batch(g, grid);

  std::vector<ErrorRecord> records;
  records.reserve(sums.size());
  for (const auto& s : sums) {
    const double x = static_cast<double>(s.x);
    const double main_value = main(x);
    const double error = static_cast<double>(s.value) - main_value;
    records.push_back({g, engine.k(), s.x, s.value, main_value, error, std::fabs(error) / std::pow(x, alpha)});
  }
  return records;
}

std::vector<ErrorRecord> error_scan(ArithFn g, int k, std::span<const i64> grid) {
  if (grid.empty()) return {};
  SummatoryEngine engine(k, grid.back());
  return error_scan(engine, g, main_term_generic(g, k), grid);
}

FitResult fit_exponent(std::span<const ErrorRecord> records, double min_x) {
  std::vector<double> lx, le;
  int zeros = 0;
  for (const auto& r : records) {
    if (static_cast<double>(r.x) < min_x) continue;
    if (r.error == 0.0) {
      ++zeros;
      continue;
    }
    lx.push_back(std::log(static_cast<double>(r.x)));
    le.push_back(std::log(std::fabs(r.error)));
  }
  const auto n = static_cast<int>(lx.size());
  if (n < 5) {
    throw std::invalid_argument("fit_exponent: only " + std::to_string(n) + " usable points (" +
                                std::to_string(zeros) + " zero-error records dropped), need >= 5");
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(le.begin(), le.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (le[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: all x values coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double res = le[i] - (intercept + slope * lx[i]);
    ssr += res * res;
  }
  const double stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  return {slope, intercept, stderr_slope, n, zeros};
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = (a[i] - a[j]) * (b[i] - b[j]);
      score += (s > 0) - (s < 0);
    }
  }
  return static_cast<double>(score) / (static_cast<double>(n) * (n - 1) / 2.0);
}

ScanConfig default_scan_config(ArithFn g, int k) {
  ScanConfig c;
  c.g = g;
  c.k = k;
  c.x_max = (k <= 4) ? 10'000'000 : 1'000'000;
  return c;
}

ScanConfig scan_config_from_json(const nlohmann::json& j, ScanConfig base) {
  if (!j.is_object()) throw std::invalid_argument("scan config must be a JSON object");
  if (j.contains("g")) {
    const auto g = parse_arith_fn(j.at("g").get<std::string>());
    if (!g) throw std::invalid_argument("scan config: unknown g");
    base.g = *g;
  }
  if (j.contains("k")) base.k = j.at("k").get<int>();
  if (j.contains("x_min")) base.x_min = j.at("x_min").get<i64>();
  if (j.contains("x_max")) base.x_max = j.at("x_max").get<i64>();
  if (j.contains("points")) base.points = j.at("points").get<int>();
  if (j.contains("out")) base.out = j.at("out").get<std::string>();
  if (j.contains("format")) base.format = j.at("format").get<std::string>();
  if (j.contains("fit")) base.fit = j.at("fit").get<bool>();
  if (j.contains("drop_decades")) base.drop_decades = j.at("drop_decades").get<int>();
  return base;
}

ScanReport run_scan(const ScanConfig& config) {
  require_tau_or_mu(config.g, "scan");
  if (config.k < 3) throw std::invalid_argument("scan: k must be >= 3");
  if (config.format != "csv" && config.format != "json") throw std::invalid_argument("scan: format must be csv or json");
  if (config.drop_decades < 0) throw std::invalid_argument("scan: drop_decades must be >= 0");

  const auto grid = geometric_grid(config.x_min, config.x_max, config.points);
  SummatoryEngine engine(config.k, config.x_max);
  ScanReport report{config, main_term_generic(config.g, config.k), std::nullopt, {}, std::nullopt, {}};
  if (config.k == 3 || config.k == 4) {
    const auto theorem = main_term_theorem(config.g, config.k, zeta_derivatives(config.k, config.k - 1),
                                           default_stieltjes());
    report.theorem_gap = max_relative_gap(theorem, report.main);
  }
  report.records = error_scan(engine, config.g, report.main, grid);
  if (config.fit) {
    try {
      report.fit = fit_exponent(report.records,
                                static_cast<double>(config.x_min) * std::pow(10.0, config.drop_decades));
    } catch (const std::invalid_argument& e) {
      report.fit_error = e.what();
    }
  }
  return report;
}

void write_csv(std::ostream& os, std::span<const ErrorRecord> records) {
  os << "g,k,x,s_exact,main_term,error,normalized\n";
  for (const auto& r : records) {
    os << weight_name(r.g) << ',' << r.k << ',' << r.x << ',' << to_string(r.s_exact) << ','
       << shortest_repr(r.main) << ',' << shortest_repr(r.error) << ',' << shortest_repr(r.normalized) << '\n';
  }
}

nlohmann::json to_json(const ErrorRecord& r) {
  return {{"g", weight_name(r.g)}, {"k", r.k},         {"x", r.x},
          {"s_exact", integer_json(r.s_exact)}, {"main_term", r.main}, {"error", r.error},
          {"normalized", r.normalized}};
}

nlohmann::json to_json(const ScanReport& report, bool include_records) {
  const auto& c = report.config;
  const auto alpha = alpha_bound(c.k).alpha;
  nlohmann::json j = {
      {"g", weight_name(c.g)},
      {"k", c.k},
      {"x_min", c.x_min},
      {"x_max", c.x_max},
      {"points", report.records.size()},
      {"alpha", {{"num", alpha.num}, {"den", alpha.den}, {"value", alpha.value()}}},
      {"main_term_coeffs", report.main.coeffs},
  };
  j["theorem_generic_max_rel_gap"] = report.theorem_gap ? nlohmann::json(*report.theorem_gap) : nlohmann::json();
  if (report.fit) {
    j["fit"] = {{"slope", report.fit->slope},
                {"intercept", report.fit->intercept},
                {"stderr", report.fit->stderr_slope},
                {"n_points", report.fit->n_points},
                {"zero_error_dropped", report.fit->zero_error_dropped},
                {"drop_decades", c.drop_decades}};
  } else if (!report.fit_error.empty()) {
    j["fit"] = {{"error", report.fit_error}};
  }
  if (include_records) {
    auto& arr = j["records"] = nlohmann::json::array();
    for (const auto& r : report.records) arr.push_back(to_json(r));
  }
  return j;
}

}  // namespace gcdsum
