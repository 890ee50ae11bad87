#include "gcdsum/summatory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcdsum {

namespace {

using u128 = unsigned __int128;

// min(base^e, cap + 1), never overflowing.
u128 saturating_pow(u128 base, int e, u128 cap) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > (cap + 1) / base) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

void require_weight(ArithFn g) {
  if (!is_kernel_weight(g)) {
    throw std::invalid_argument("unsupported kernel weight '" + std::string(name_of(g)) +
                                "' (expected tau, mu, delta, id or sigma)");
  }
}

}  // namespace

std::string_view name_of(Method m) {
  switch (m) {
    case Method::sieve:
      return "sieve";
    case Method::identity:
      return "identity";
    case Method::bruteforce:
      return "bruteforce";
  }
  return "?";
}

ThresholdPlan::ThresholdPlan(std::vector<i64> queries) : queries_(std::move(queries)) {
  for (std::size_t i = 0; i < queries_.size(); ++i) {
    if (queries_[i] < 1) throw std::invalid_argument("ThresholdPlan: thresholds must be >= 1");
    if (i > 0 && queries_[i - 1] >= queries_[i]) {
      throw std::invalid_argument("ThresholdPlan: thresholds must be strictly increasing");
    }
  }
}

ThresholdPlan ThresholdPlan::from_unsorted(std::vector<i64> queries) {
  std::erase_if(queries, [](i64 q) { return q < 1; });
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
  return ThresholdPlan(std::move(queries));
}

std::uint64_t ikth_root(std::uint64_t x, int k) {
  if (k < 1) throw std::invalid_argument("ikth_root: k must be >= 1");
  if (k == 1 || x < 2) return x;
  const u128 cap = x;
  // Newton from above: start at a power of two no smaller than the root.
  const int bits = std::bit_width(x);
  u128 r = u128{1} << ((bits + k - 1) / k);
  while (true) {
    const u128 p = saturating_pow(r, k - 1, cap);
    const u128 next = ((k - 1) * r + (p > cap ? 0 : x / p)) / k;
    if (next >= r) break;
    r = next;
  }
  while (r > 0 && saturating_pow(r, k, cap) > cap) --r;
  while (saturating_pow(r + 1, k, cap) <= cap) ++r;
  return static_cast<std::uint64_t>(r);
}

std::vector<SummatoryResult> divisor_summatory(const ArithTable& tau_k, const ThresholdPlan& plan) {
  if (plan.max() > tau_k.upper()) {
    throw std::out_of_range("divisor_summatory: threshold " + std::to_string(plan.max()) +
                            " exceeds sieve capacity " + std::to_string(tau_k.upper()));
  }
  std::vector<SummatoryResult> out;
  out.reserve(plan.queries().size());
  i128 running = 0;
  i64 n = 0;
  for (i64 y : plan.queries()) {
    for (; n < y; ++n) running = checked_add(running, i128{tau_k[n + 1]}, "divisor_summatory: overflow");
    out.push_back({y, running, Method::sieve});
  }
  return out;
}

double delta_k(const ArithTable& tau_k, i64 x, const MainTermPolynomial& poly) {
  if (x < 1) return 0.0;
  const auto d = divisor_summatory(tau_k, ThresholdPlan({x}));
  const double xd = static_cast<double>(x);
  return static_cast<double>(d.front().value) - xd * poly(std::log(xd));
}

bool is_kernel_weight(ArithFn g) {
  switch (g) {
    case ArithFn::tau:
    case ArithFn::mobius:
    case ArithFn::delta:
    case ArithFn::id:
    case ArithFn::sigma:
      return true;
    default:
      return false;
  }
}

SummatoryEngine::SummatoryEngine(int k, i64 capacity)
    : k_(k), tau_k_([&] {
        if (k < 1) throw std::invalid_argument("SummatoryEngine: k must be >= 1");
        return sieve_tau_k(k, std::max<i64>(capacity, 1));
      }()) {}

const ArithTable& SummatoryEngine::mu_star(ArithFn g) {
  require_weight(g);
  if (auto it = mu_star_.find(g); it != mu_star_.end()) return it->second;
  const auto root = std::max<i64>(1, static_cast<i64>(ikth_root(static_cast<std::uint64_t>(capacity()), k_)));
  auto table = dirichlet_convolve(sieve_builtin(ArithFn::mobius, root), sieve_function(g, root));
  return mu_star_.emplace(g, std::move(table)).first->second;
}

SummatoryResult SummatoryEngine::s_exact(ArithFn g, i64 x) {
  const i64 xs[] = {x};
  return s_exact_batch(g, xs).front();
}

std::vector<SummatoryResult> SummatoryEngine::s_exact_batch(ArithFn g, std::span<const i64> xs) {
  const ArithTable& weights = mu_star(g);
  std::vector<i64> thresholds;
  for (i64 x : xs) {
    if (x > capacity()) {
      throw std::out_of_range("s_exact: x=" + std::to_string(x) + " exceeds sieve capacity " +
                              std::to_string(capacity()));
    }
    if (x < 1) continue;
    const auto root = static_cast<i64>(ikth_root(static_cast<std::uint64_t>(x), k_));
    i64 mk = 1;
    for (i64 m = 1; m <= root; ++m) {
      mk = 1;
      for (int j = 0; j < k_; ++j) mk *= m;
      thresholds.push_back(x / mk);
    }
  }
  const auto plan = ThresholdPlan::from_unsorted(std::move(thresholds));
  const auto sums = divisor_summatory(tau_k_, plan);
  const auto lookup = [&](i64 y) {
    const auto q = plan.queries();
    return sums[static_cast<std::size_t>(std::lower_bound(q.begin(), q.end(), y) - q.begin())].value;
  };

  std::vector<SummatoryResult> out;
  out.reserve(xs.size());
  for (i64 x : xs) {
    i128 total = 0;
    if (x >= 1) {
      const auto root = static_cast<i64>(ikth_root(static_cast<std::uint64_t>(x), k_));
      for (i64 m = 1; m <= root; ++m) {
        const i64 w = weights[m];
        if (w == 0) continue;
        i64 mk = 1;
        for (int j = 0; j < k_; ++j) mk *= m;
        total = checked_add(total, checked_mul(i128{w}, lookup(x / mk), "s_exact: overflow"),
                            "s_exact: overflow");
      }
    }
    out.push_back({x, total, Method::identity});
  }
  return out;
}

SummatoryResult s_exact(ArithFn g, int k, i64 x) {
  require_weight(g);
  SummatoryEngine engine(k, std::max<i64>(x, 1));
  return engine.s_exact(g, x);
}

SummatoryResult s_bruteforce(ArithFn g, int k, i64 x, bool allow_large) {
  require_weight(g);
  if (x > kBruteforceCap && !allow_large) {
    throw std::invalid_argument("s_bruteforce: x=" + std::to_string(x) +
                                " exceeds the oracle cap of 10^4 (pass allow_large to override)");
  }
  if (x < 1) return {x, 0, Method::bruteforce};
  const auto table = sieve_function(g, x);
  i128 total = 0;
  for (i64 n = 1; n <= x; ++n) total = checked_add(total, i128{gcd_kernel_direct(table, k, n)}, "s_bruteforce");
  return {x, total, Method::bruteforce};
}

double lemma20_partial(int k, int r, i64 x) {
  if (k < 1 || r < 0) throw std::invalid_argument("lemma20_partial: requires k >= 1, r >= 0");
  if (x < 1) return 0.0;
  const auto root = static_cast<i64>(ikth_root(static_cast<std::uint64_t>(x), k));
  CompensatedSum sum;
  for (i64 n = 1; n <= root; ++n) {
    const double d = static_cast<double>(n);
    sum += std::pow(std::log(d), r) * std::pow(d, -k);
  }
  return sum.value();
}

double lemma20_prediction(int k, int r, i64 x, const ZetaJet& jet) {
  if (r < 0 || r > 3) throw std::invalid_argument("lemma20_prediction: r must lie in 0..3");
  if (k < 3) throw std::invalid_argument("lemma20_prediction: k must be >= 3");
  if (jet.k != k || jet.order < r) throw std::invalid_argument("lemma20_prediction: jet does not cover (k, r)");
  if (x < 1) throw std::domain_error("lemma20_prediction: x must be >= 1");

  // With z = x^{1/k}: sum_{n<=z} = (-1)^r zeta^(r)(k) - int_z^inf log^r t / t^k dt + O(z^{-k} log^r z),
  // and the integral is z^{1-k} sum_i r!/(r-i)! log^{r-i} z / (k-1)^{i+1}.
  const double kk = k;
  const double L = std::log(static_cast<double>(x));
  const double X = std::pow(static_cast<double>(x), (1.0 - kk) / kk);
  const double log_z = L / kk;
  double tail = 0.0;
  double falling = 1.0;
  for (int i = 0; i <= r; ++i) {
    if (i > 0) falling *= (r - i + 1);
    tail += falling * std::pow(log_z, r - i) / std::pow(kk - 1.0, i + 1);
  }
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * jet[r] - X * tail;
}

double lemma30_partial(int k, int r, i64 x) {
  if (k < 1 || r < 0) throw std::invalid_argument("lemma30_partial: requires k >= 1, r >= 0");
  if (x < 1) return 0.0;
  const auto root = static_cast<i64>(ikth_root(static_cast<std::uint64_t>(x), k));
  const auto mu = sieve_builtin(ArithFn::mobius, root);
  const auto mumu = dirichlet_convolve(mu, mu);
  CompensatedSum sum;
  for (i64 n = 1; n <= root; ++n) {
    if (mumu[n] == 0) continue;
    const double d = static_cast<double>(n);
    sum += static_cast<double>(mumu[n]) * std::pow(std::log(d), r) * std::pow(d, -k);
  }
  return sum.value();
}

}  // namespace gcdsum
