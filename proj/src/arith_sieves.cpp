#include "gcdsum/arith_sieves.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gcdsum/summatory.hpp"

namespace gcdsum {

namespace {

constexpr std::pair<ArithFn, std::string_view> kNames[] = {
    {ArithFn::mobius, "mobius"}, {ArithFn::one, "one"},   {ArithFn::id, "id"},
    {ArithFn::delta, "delta"},   {ArithFn::phi, "phi"},   {ArithFn::sigma, "sigma"},
    {ArithFn::tau, "tau"},
};

void require_upper(i64 n) {
  if (n < 1) throw std::invalid_argument("table upper bound must be >= 1");
}

ArithTable prefix_of(const ArithTable& t, i64 m) {
  auto v = t.values();
  return ArithTable(t.name(), std::vector<i64>(v.begin(), v.begin() + m));
}

// Linear sieve: appends the primes up to n and returns least prime factors.
std::vector<i64> least_prime_factors(i64 n, std::vector<i64>& primes) {
  std::vector<i64> lp(static_cast<std::size_t>(n) + 1, 0);
  for (i64 i = 2; i <= n; ++i) {
    if (lp[i] == 0) {
      lp[i] = i;
      primes.push_back(i);
    }
    for (i64 p : primes) {
      if (p > lp[i] || i * p > n) break;
      lp[i * p] = p;
    }
  }
  return lp;
}

ArithTable linear_mobius(i64 n) {
  std::vector<i64> primes;
  std::vector<i64> mu(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  mu[1] = 1;
  for (i64 i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (i64 p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  mu.erase(mu.begin());
  return ArithTable("mobius", std::move(mu));
}

ArithTable linear_phi(i64 n) {
  std::vector<i64> primes;
  std::vector<i64> phi(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  phi[1] = 1;
  for (i64 i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      phi[i] = i - 1;
    }
    for (i64 p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        phi[i * p] = phi[i] * p;
        break;
      }
      phi[i * p] = phi[i] * (p - 1);
    }
  }
  phi.erase(phi.begin());
  return ArithTable("phi", std::move(phi));
}

// In place v <- v * 1, one prime at a time.
void divisor_sum_transform(std::vector<i64>& v, const std::vector<i64>& primes, int k) {
  const i64 n = static_cast<i64>(v.size()) - 1;
  for (i64 p : primes) {
    for (i64 i = 1; i <= n / p; ++i) {
      i64& dst = v[i * p];
      if (__builtin_add_overflow(dst, v[i], &dst)) {
        throw OverflowError("tau_" + std::to_string(k) + "(" + std::to_string(i * p) +
                            ") exceeds the signed 64-bit range");
      }
    }
  }
}

}  // namespace

std::string_view name_of(ArithFn f) {
  for (auto [fn, name] : kNames)
    if (fn == f) return name;
  return "?";
}

std::optional<ArithFn> parse_arith_fn(std::string_view name) {
  if (name == "mu") return ArithFn::mobius;
  if (name == "1") return ArithFn::one;
  for (auto [fn, n] : kNames)
    if (n == name) return fn;
  return std::nullopt;
}

ArithTable::ArithTable(std::string name, std::vector<i64> values_from_one)
    : name_(std::move(name)), values_(std::move(values_from_one)) {
  if (values_.empty()) throw std::invalid_argument("ArithTable needs at least one value");
}

i64 ArithTable::at(i64 n) const {
  if (n < 1 || n > upper()) {
    throw std::out_of_range(name_ + ": index " + std::to_string(n) + " outside 1.." +
                            std::to_string(upper()));
  }
  return (*this)[n];
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> primes;
  if (n >= 2) least_prime_factors(n, primes);
  return primes;
}

ArithTable sieve_builtin(ArithFn fn, i64 n) {
  require_upper(n);
  const auto size = static_cast<std::size_t>(n);
  switch (fn) {
    case ArithFn::mobius:
      return linear_mobius(n);
    case ArithFn::phi:
      return linear_phi(n);
    case ArithFn::one:
      return ArithTable("one", std::vector<i64>(size, 1));
    case ArithFn::id: {
      std::vector<i64> v(size);
      std::iota(v.begin(), v.end(), i64{1});
      return ArithTable("id", std::move(v));
    }
    case ArithFn::delta: {
      std::vector<i64> v(size, 0);
      v[0] = 1;
      return ArithTable("delta", std::move(v));
    }
    case ArithFn::sigma: {
      std::vector<i64> v(size, 0);
      for (i64 d = 1; d <= n; ++d)
        for (i64 m = d; m <= n; m += d) v[m - 1] += d;
      return ArithTable("sigma", std::move(v));
    }
    case ArithFn::tau:
      break;
  }
  throw std::invalid_argument("sieve_builtin: unknown function '" + std::string(name_of(fn)) + "'");
}

ArithTable sieve_tau_k(int k, i64 n) {
  if (k < 1) throw std::invalid_argument("sieve_tau_k: k must be >= 1");
  require_upper(n);
  std::vector<i64> v(static_cast<std::size_t>(n) + 1, 1);
  v[0] = 0;
  const auto primes = primes_up_to(n);
  for (int j = 1; j < k; ++j) divisor_sum_transform(v, primes, j + 1);
  v.erase(v.begin());
  return ArithTable(k == 2 ? "tau" : "tau_" + std::to_string(k), std::move(v));
}

ArithTable sieve_function(ArithFn fn, i64 n) {
  if (fn == ArithFn::tau) return sieve_tau_k(2, n);
  return sieve_builtin(fn, n);
}

ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g) {
  if (f.upper() != g.upper()) {
    throw std::invalid_argument("dirichlet_convolve: upper bounds differ (" +
                                std::to_string(f.upper()) + " vs " + std::to_string(g.upper()) + ")");
  }
  const i64 n = f.upper();
  std::vector<i64> r(static_cast<std::size_t>(n), 0);
  for (i64 d = 1; d <= n; ++d) {
    const i64 fd = f[d];
    if (fd == 0) continue;
    for (i64 m = 1; m <= n / d; ++m) {
      const i64 gm = g[m];
      if (gm == 0) continue;
      i64 term;
      i64& dst = r[d * m - 1];
      if (__builtin_mul_overflow(fd, gm, &term) || __builtin_add_overflow(dst, term, &dst)) {
        throw OverflowError("(" + f.name() + "*" + g.name() + ")(" + std::to_string(d * m) +
                            ") exceeds the signed 64-bit range");
      }
    }
  }
  return ArithTable(f.name() + "*" + g.name(), std::move(r));
}

i64 gcd_kernel_direct(const ArithTable& g, int k, i64 n) {
  if (k < 2) throw std::invalid_argument("gcd_kernel_direct: k must be >= 2");
  if (n < 1 || n > g.upper()) {
    throw std::out_of_range("gcd_kernel_direct: n=" + std::to_string(n) + " outside the table");
  }
  std::vector<i64> divisors;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divisors.push_back(d);
      if (d != n / d) divisors.push_back(n / d);
    }
  }
  std::sort(divisors.begin(), divisors.end());

  i64 total = 0;
  // Chooses d_1..d_{k-1}; the last factor is whatever remains.
  auto walk = [&](auto&& self, i64 remaining, int placed, i64 g_so_far) -> void {
    if (placed == k - 1) {
      const i64 gg = std::gcd(g_so_far, remaining);
      total = checked_add(total, g[gg], "gcd_kernel_direct: sum overflow");
      return;
    }
    for (i64 d : divisors) {
      if (d > remaining) break;
      if (remaining % d != 0) continue;
      self(self, remaining / d, placed + 1, std::gcd(g_so_far, d));
    }
  };
  walk(walk, n, 0, 0);
  return total;
}

KernelTables make_kernel_tables(const ArithTable& g, int k) {
  if (k < 2) throw std::invalid_argument("make_kernel_tables: k must be >= 2");
  const i64 root = std::max<i64>(1, ikth_root(g.upper(), k));
  auto mu = sieve_builtin(ArithFn::mobius, root);
  return KernelTables{k, dirichlet_convolve(mu, prefix_of(g, root)), sieve_tau_k(k, g.upper())};
}

i64 gcd_kernel_identity(const KernelTables& t, i64 n) {
  if (n < 1 || n > t.tau_k.upper()) {
    throw std::out_of_range("gcd_kernel_identity: n=" + std::to_string(n) + " outside the table");
  }
  i64 total = 0;
  for (i64 a = 1;; ++a) {
    i64 ak = 1;
    bool too_big = false;
    for (int j = 0; j < t.k && !too_big; ++j) too_big = __builtin_mul_overflow(ak, a, &ak) || ak > n;
    if (too_big) break;
    if (n % ak != 0) continue;
    const i64 term = checked_mul(t.mu_star_g[a], t.tau_k[n / ak], "gcd_kernel_identity: overflow");
    total = checked_add(total, term, "gcd_kernel_identity: overflow");
  }
  return total;
}

void write_csv(std::ostream& os, const ArithTable& table) {
  os << "n,value\n";
  for (i64 n = 1; n <= table.upper(); ++n) os << n << ',' << table[n] << '\n';
}

}  // namespace gcdsum
