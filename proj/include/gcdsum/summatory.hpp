// Exact summatory functions: D_k(x) = sum_{n<=x} tau_k(n), the Piltz error
// term Delta_k(x), the gcd-kernel sums S_{g,k}(x), and the partial sums of
// log^r n / n^k and (mu*mu)(n) log^r n / n^k that feed the main terms.
//
// Integer results are exact; every sum runs in checked 128-bit arithmetic.
// All summatories are 0 for x < 1.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "gcdsum/arith_sieves.hpp"
#include "gcdsum/laurent_series.hpp"
#include "gcdsum/zeta_constants.hpp"

namespace gcdsum {

enum class Method { sieve, identity, bruteforce };

std::string_view name_of(Method m);

struct SummatoryResult {
  i64 x;
  i128 value;
  Method method;
};

// Strictly increasing thresholds, all >= 1.
class ThresholdPlan {
 public:
  explicit ThresholdPlan(std::vector<i64> queries);
  // Sorts, removes duplicates and drops thresholds below 1.
  static ThresholdPlan from_unsorted(std::vector<i64> queries);

  std::span<const i64> queries() const { return queries_; }
  bool empty() const { return queries_.empty(); }
  i64 max() const { return queries_.empty() ? 0 : queries_.back(); }

 private:
  std::vector<i64> queries_;
};

// floor(x^{1/k}) exactly: r^k <= x < (r+1)^k. ikth_root(0, k) = 0.
std::uint64_t ikth_root(std::uint64_t x, int k);

// D_k(y) for every y in the plan, in one pass over the tau_k table.
std::vector<SummatoryResult> divisor_summatory(const ArithTable& tau_k, const ThresholdPlan& plan);

// D_k(x) - x P_{k-1}(log x), with the table covering x.
double delta_k(const ArithTable& tau_k, i64 x, const MainTermPolynomial& poly);

// Functions g accepted by the S_{g,k} routines.
bool is_kernel_weight(ArithFn g);

// Holds tau_k up to a capacity and (mu*g) tables on demand, and evaluates
//   S_{g,k}(x) = sum_{m <= x^{1/k}} (mu*g)(m) D_k(floor(x / m^k)).
// Tables are built once; evaluation does not mutate tau_k.
class SummatoryEngine {
 public:
  SummatoryEngine(int k, i64 capacity);

  int k() const { return k_; }
  i64 capacity() const { return tau_k_.upper(); }
  const ArithTable& tau_k() const { return tau_k_; }
  const ArithTable& mu_star(ArithFn g);

  SummatoryResult s_exact(ArithFn g, i64 x);
  // Same values as s_exact, with all thresholds merged into one plan.
  std::vector<SummatoryResult> s_exact_batch(ArithFn g, std::span<const i64> xs);

 private:
  int k_;
  ArithTable tau_k_;
  std::map<ArithFn, ArithTable> mu_star_;
};

SummatoryResult s_exact(ArithFn g, int k, i64 x);

inline constexpr i64 kBruteforceCap = 10'000;

// sum_{n<=x} gcd_kernel_direct(g, k, n). Refuses x > 10^4 unless allow_large.
SummatoryResult s_bruteforce(ArithFn g, int k, i64 x, bool allow_large = false);

// sum_{n <= x^{1/k}} log^r n / n^k.
double lemma20_partial(int k, int r, i64 x);

// Asymptotic form of lemma20_partial without its O-term: (-1)^r zeta^(r)(k)
// plus x^{(1-k)/k} times a polynomial in log x. Requires r <= 3, k >= 3,
// and jet.order >= r.
double lemma20_prediction(int k, int r, i64 x, const ZetaJet& jet);

// sum_{n <= x^{1/k}} (mu*mu)(n) log^r n / n^k.
double lemma30_partial(int k, int r, i64 x);

}  // namespace gcdsum
