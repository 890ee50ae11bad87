// gcdsum: command-line front end.
//
//   gcdsum sieve --fn mobius --n 20
//   gcdsum constants --k 3
//   gcdsum main-poly --k 4
//   gcdsum exact --g mu --k 3 --x 1000000
//   gcdsum scan --g tau --k 3 --x-max 1000000 --out tau3.csv
//   gcdsum verify

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcdsum/arith_sieves.hpp"
#include "gcdsum/asymptotics.hpp"
#include "gcdsum/laurent_series.hpp"
#include "gcdsum/summatory.hpp"
#include "gcdsum/verify.hpp"
#include "gcdsum/zeta_constants.hpp"

using namespace gcdsum;
using nlohmann::json;

namespace {

ArithFn require_fn(const std::string& name) {
  const auto fn = parse_arith_fn(name);
  if (!fn) throw std::invalid_argument("unknown function '" + name + "'");
  return *fn;
}

json value_json(double value, double precision) { return {{"value", value}, {"precision", precision}}; }

int cmd_sieve(const std::string& fn_name, i64 n, int k, const std::string& out) {
  const ArithFn fn = require_fn(fn_name);
  const auto table = (fn == ArithFn::tau) ? sieve_tau_k(k, n) : sieve_builtin(fn, n);
  if (out.empty()) {
    write_csv(std::cout, table);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open " + out);
    write_csv(os, table);
  }
  return 0;
}

int cmd_constants(int k, std::optional<int> order, int stieltjes_index, i64 cutoff) {
  const int R = order.value_or(k);
  const auto jet = zeta_derivatives(k, std::min(R, k + 1));
  const auto moments = mu_mu_moments(k, std::min(R, k));
  const auto gammas = stieltjes(stieltjes_index, cutoff);

  json j = {{"k", k}};
  auto& zeta = j["zeta"] = json::array();
  for (int r = 0; r <= jet.order; ++r) {
    auto v = value_json(jet[r], jet.errors[r]);
    v["order"] = r;
    zeta.push_back(v);
  }
  auto& mm = j["mu_mu_moments"] = json::array();
  for (std::size_t r = 0; r < moments.moments.size(); ++r) {
    auto v = value_json(moments.moments[r], moments.errors[r]);
    v["order"] = r;
    mm.push_back(v);
  }
  auto& st = j["stieltjes"] = json::array();
  for (int n = 0; n <= gammas.max_index(); ++n) {
    auto v = value_json(gammas.gammas[n], gammas.errors[n]);
    v["index"] = n;
    v["laurent"] = gammas.laurent(n);
    st.push_back(v);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_main_poly(int k) {
  const auto gammas = stieltjes(kMaxStieltjesIndex);
  const auto poly = residue_main_poly(k, gammas);
  // gamma, gamma_1, gamma_2 below are the Laurent coefficients of zeta at s = 1.
  json j = {{"k", k}, {"q", poly.coeffs}};
  if (k == 3) {
    j["symbolic"] = {"3*gamma^2 - 3*gamma + 3*gamma_1 + 1", "3*gamma - 1", "1/2"};
  } else if (k == 4) {
    j["symbolic"] = {"12*gamma*gamma_1 + 4*gamma^3 - 6*gamma^2 + 4*(gamma - gamma_1 + gamma_2) - 1",
                     "6*gamma^2 - 4*gamma + 4*gamma_1 + 1", "2*gamma - 1/2", "1/6"};
  }
  if (k == 3 || k == 4) j["laurent_coefficients"] = gammas.laurent_coefficients();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_exact(const std::string& g_name, int k, i64 x, const std::string& method, bool allow_large) {
  const ArithFn g = require_fn(g_name);
  SummatoryResult r;
  if (method == "identity") {
    r = s_exact(g, k, x);
  } else if (method == "bruteforce") {
    r = s_bruteforce(g, k, x, allow_large);
  } else {
    throw std::invalid_argument("method must be identity or bruteforce");
  }
  json value;
  if (r.value >= std::numeric_limits<i64>::min() && r.value <= std::numeric_limits<i64>::max()) {
    value = static_cast<i64>(r.value);
  } else {
    value = to_string(r.value);
  }
  std::cout << json{{"g", weight_name(g)}, {"k", k}, {"x", x}, {"value", value}, {"method", name_of(r.method)}}.dump()
            << '\n';
  return 0;
}

int cmd_scan(const ScanConfig& config) {
  const auto report = run_scan(config);
  const bool to_file = !config.out.empty();
  std::ofstream file;
  if (to_file) {
    file.open(config.out);
    if (!file) throw std::runtime_error("cannot open " + config.out);
  }
  std::ostream& data = to_file ? static_cast<std::ostream&>(file) : std::cout;
  if (config.format == "json") {
    data << to_json(report, true).dump(2) << '\n';
  } else {
    write_csv(data, report.records);
  }
  // Summary goes to stdout when data went to a file, otherwise to stderr.
  std::ostream& summary = to_file ? std::cout : std::cerr;
  if (config.format == "csv" || to_file) summary << to_json(report, false).dump(2) << '\n';
  return 0;
}

int cmd_verify(const VerifyOptions& options) {
  const auto results = run_verification(options, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact gcd-kernel divisor sums, their main terms, and error-term scans"};
  app.require_subcommand(1);

  auto* sieve = app.add_subcommand("sieve", "Dump an arithmetic function table as CSV (n,value)");
  std::string sieve_fn = "mobius";
  i64 sieve_n = 100;
  int sieve_k = 2;
  std::string sieve_out;
  sieve->add_option("--fn", sieve_fn, "mobius|one|id|delta|phi|sigma|tau")->capture_default_str();
  sieve->add_option("--n", sieve_n, "Upper bound N")->capture_default_str();
  sieve->add_option("--k", sieve_k, "Number of factors when --fn tau")->capture_default_str();
  sieve->add_option("--out", sieve_out, "Output path (default stdout)");

  auto* constants = app.add_subcommand("constants", "zeta^(r)(k), mu*mu moments and Stieltjes constants as JSON");
  int const_k = 3;
  std::optional<int> const_order;
  int const_j = kMaxStieltjesIndex;
  i64 const_cutoff = 1'000'000;
  constants->add_option("--k", const_k, "Point k >= 2")->capture_default_str();
  constants->add_option("--order", const_order, "Highest derivative order (default k)");
  constants->add_option("--stieltjes", const_j, "Highest Stieltjes index (<= 4)")->capture_default_str();
  constants->add_option("--cutoff", const_cutoff, "Stieltjes summation cutoff")->capture_default_str();

  auto* main_poly = app.add_subcommand("main-poly", "Residue polynomial of sum tau_k(n) as JSON");
  int poly_k = 3;
  main_poly->add_option("--k", poly_k, "Number of factors k (2..6)")->capture_default_str();

  auto* exact = app.add_subcommand("exact", "Exact S_{g,k}(x)");
  std::string exact_g = "tau", exact_method = "identity";
  int exact_k = 3;
  i64 exact_x = 1000;
  bool allow_large = false;
  exact->add_option("--g", exact_g, "tau|mu|delta|id|sigma")->capture_default_str();
  exact->add_option("--k", exact_k)->capture_default_str();
  exact->add_option("--x", exact_x)->capture_default_str();
  exact->add_option("--method", exact_method, "identity|bruteforce")->capture_default_str();
  exact->add_flag("--allow-large", allow_large, "Lift the 10^4 cap on the brute-force oracle");

  auto* scan = app.add_subcommand("scan", "Error terms E_{g,k}(x) over a geometric grid");
  std::string scan_config_path, scan_g = "tau", scan_format = "csv", scan_out;
  int scan_k = 3, scan_points = 40, scan_drop = 1;
  i64 scan_xmin = 1000, scan_xmax = 0;
  bool scan_fit = true;
  scan->add_option("--config", scan_config_path, "JSON file mirroring the flags; flags override it");
  auto* opt_g = scan->add_option("--g", scan_g, "tau|mu");
  auto* opt_k = scan->add_option("--k", scan_k, "k >= 3");
  auto* opt_xmin = scan->add_option("--x-min", scan_xmin);
  auto* opt_xmax = scan->add_option("--x-max", scan_xmax);
  auto* opt_points = scan->add_option("--points", scan_points);
  auto* opt_out = scan->add_option("--out", scan_out, "Data output path (default stdout)");
  auto* opt_format = scan->add_option("--format", scan_format, "csv|json");
  auto* opt_fit = scan->add_flag("--fit,!--no-fit", scan_fit, "Fit log|E| against log x");
  auto* opt_drop = scan->add_option("--drop-decades", scan_drop, "Decades of small x excluded from the fit");

  auto* verify = app.add_subcommand("verify", "Run the self-check suite; exit 1 on any failure");
  VerifyOptions verify_options;
  verify->add_option("--oracle-max", verify_options.oracle_max)->capture_default_str();
  verify->add_option("--envelope-x-max", verify_options.envelope_x_max)->capture_default_str();
  verify->add_option("--points", verify_options.envelope_points)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sieve) return cmd_sieve(sieve_fn, sieve_n, sieve_k, sieve_out);
    if (*constants) return cmd_constants(const_k, const_order, const_j, const_cutoff);
    if (*main_poly) return cmd_main_poly(poly_k);
    if (*exact) return cmd_exact(exact_g, exact_k, exact_x, exact_method, allow_large);
    if (*scan) {
      json file_config = json::object();
      if (!scan_config_path.empty()) {
        std::ifstream is(scan_config_path);
        if (!is) throw std::runtime_error("cannot open " + scan_config_path);
        file_config = json::parse(is);
      }
      // Defaults depend on (g, k), which may come from either source.
      ScanConfig base = scan_config_from_json(file_config, ScanConfig{});
      if (opt_g->count()) base.g = require_fn(scan_g);
      if (opt_k->count()) base.k = scan_k;
      ScanConfig config = scan_config_from_json(file_config, default_scan_config(base.g, base.k));
      config.g = base.g;
      config.k = base.k;
      if (opt_xmin->count()) config.x_min = scan_xmin;
      if (opt_xmax->count()) config.x_max = scan_xmax;
      if (opt_points->count()) config.points = scan_points;
      if (opt_out->count()) config.out = scan_out;
      if (opt_format->count()) config.format = scan_format;
      if (opt_fit->count()) config.fit = scan_fit;
      if (opt_drop->count()) config.drop_decades = scan_drop;
      return cmd_scan(config);
    }
    if (*verify) return cmd_verify(verify_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
