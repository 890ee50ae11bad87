// Main terms x P_{g,k}(log x) for S_{g,k}(x), the tabulated error exponents,
// error scans over a geometric grid of x, and log-log exponent fits.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gcdsum/arith_sieves.hpp"
#include "gcdsum/laurent_series.hpp"
#include "gcdsum/summatory.hpp"
#include "gcdsum/zeta_constants.hpp"

namespace gcdsum {

enum class Provenance { theorem, generic };

std::string_view name_of(Provenance p);

// Name used on the command line and in output: "tau" or "mu".
std::string_view weight_name(ArithFn g);

struct MainTermSpec {
  ArithFn g;
  int k;
  std::vector<double> coeffs;  // a_0 .. a_{k-1}, coefficient of (log x)^j
  Provenance provenance;

  double poly(double log_x) const;
  // x P_{g,k}(log x)
  double operator()(double x) const { return x * poly(std::log(x)); }
};

// Closed-form main terms for (tau|mu, 3|4), with the numeric constants injected.
MainTermSpec main_term_theorem(ArithFn g, int k, const ZetaJet& jet, const StieltjesConstants& gammas);

// Main term assembled from the residue polynomial q_0..q_{k-1}:
//   a_{r-l} += q_r C(r,l) (-k)^l T_l,
// where T_l = sum_n w(n) log^l n / n^k is (-1)^l zeta^(l)(k) for tau
// and M_{k,l} for mu. `moments` is only read for mu.
MainTermSpec main_term_generic(ArithFn g, int k, const MainTermPolynomial& poly, const ZetaJet& jet,
                               const MuMuMoments& moments);

// Computes every constant the generic construction needs (k <= 6).
MainTermSpec main_term_generic(ArithFn g, int k);

// max_j |a_j - b_j| / max(|a_j|, |b_j|).
double max_relative_gap(const MainTermSpec& a, const MainTermSpec& b);

struct Rational {
  i64 num;
  i64 den;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(i64 num, i64 den);

struct AlphaBound {
  int k;
  Rational alpha;
};

// Tabulated exponent bound for the error term of S_{g,k}; k >= 3.
AlphaBound alpha_bound(int k);

struct ErrorRecord {
  ArithFn g;
  int k;
  i64 x;
  i128 s_exact;
  double main;
  double error;       // s_exact - main
  double normalized;  // |error| / x^{alpha_k}
};

struct FitResult {
  double slope;
  double intercept;
  double stderr_slope;
  int n_points;
  int zero_error_dropped;
};

// `points` geometric values in [x_min, x_max], rounded to integers and deduplicated.
std::vector<i64> geometric_grid(i64 x_min, i64 x_max, int points);

std::vector<ErrorRecord> error_scan(SummatoryEngine& engine, ArithFn g, const MainTermSpec& main,
                                    std::span<const i64> grid);

// Builds the tau_k sieve to max(grid) and uses the generic main term.
std::vector<ErrorRecord> error_scan(ArithFn g, int k, std::span<const i64> grid);

// Least squares of log|error| on log x over records with x >= min_x and error != 0.
// Throws if fewer than 5 usable points remain.
FitResult fit_exponent(std::span<const ErrorRecord> records, double min_x = 0.0);

// Kendall tau-a rank correlation.
double kendall_tau(std::span<const double> a, std::span<const double> b);

struct ScanConfig {
  ArithFn g = ArithFn::tau;
  int k = 3;
  i64 x_min = 1000;
  i64 x_max = 10'000'000;
  int points = 40;
  std::string out;
  std::string format = "csv";
  bool fit = true;
  int drop_decades = 1;
};

// Default grid: 10^3..10^7 for k = 3, 4 and 10^3..10^6 for k >= 5.
ScanConfig default_scan_config(ArithFn g, int k);

// Reads the keys g, k, x_min, x_max, points, out, format, fit, drop_decades
// (missing keys keep the value in `base`).
ScanConfig scan_config_from_json(const nlohmann::json& j, ScanConfig base);

struct ScanReport {
  ScanConfig config;
  MainTermSpec main;
  std::optional<double> theorem_gap;  // k = 3, 4 only
  std::vector<ErrorRecord> records;
  std::optional<FitResult> fit;
  std::string fit_error;
};

ScanReport run_scan(const ScanConfig& config);

// Header: g,k,x,s_exact,main_term,error,normalized
void write_csv(std::ostream& os, std::span<const ErrorRecord> records);
nlohmann::json to_json(const ErrorRecord& r);
nlohmann::json to_json(const ScanReport& report, bool include_records);

}  // namespace gcdsum
