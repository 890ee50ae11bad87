// Sieved arithmetic functions on 1..N and Dirichlet convolutions of them.
//
// Every table is dense and immutable once built. Values are signed 64-bit;
// any construction step that would leave that range throws OverflowError
// instead of wrapping.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcdsum/numeric.hpp"

namespace gcdsum {

enum class ArithFn { mobius, one, id, delta, phi, sigma, tau };

std::string_view name_of(ArithFn f);

// Accepts the canonical names plus the short aliases "mu" and "1".
std::optional<ArithFn> parse_arith_fn(std::string_view name);

class ArithTable {
 public:
  ArithTable(std::string name, std::vector<i64> values_from_one);

  const std::string& name() const { return name_; }
  i64 upper() const { return static_cast<i64>(values_.size()); }

  // 1-based access; n must lie in [1, upper()].
  i64 operator[](i64 n) const { return values_[static_cast<std::size_t>(n - 1)]; }
  i64 at(i64 n) const;

  std::span<const i64> values() const { return values_; }

  friend bool operator==(const ArithTable& a, const ArithTable& b) {
    return a.values_ == b.values_;
  }

 private:
  std::string name_;
  std::vector<i64> values_;
};

// Primes up to n, by linear sieve.
std::vector<i64> primes_up_to(i64 n);

// mobius, one, id, delta, phi, sigma. mobius and phi use a linear sieve.
ArithTable sieve_builtin(ArithFn fn, i64 n);

// tau_k = 1 * 1 * ... * 1 (k factors); tau_1 = one, tau_2 = tau.
ArithTable sieve_tau_k(int k, i64 n);

// The weight g of a gcd kernel: tau is tau_2, every other id is a builtin.
ArithTable sieve_function(ArithFn fn, i64 n);

// (f*g)(n) = sum_{d|n} f(d) g(n/d), by the O(N log N) divisor-pair loop.
ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g);

// f_{(g,k)}(n): sum of g(gcd(d_1..d_k)) over ordered factorizations
// d_1...d_k = n, enumerated depth-first. Oracle use only.
i64 gcd_kernel_direct(const ArithTable& g, int k, i64 n);

// Tables backing the a^k b = n form of the gcd kernel: mu*g up to
// floor(N^{1/k}) and tau_k up to N, built once and shared across queries.
struct KernelTables {
  int k;
  ArithTable mu_star_g;
  ArithTable tau_k;
};

KernelTables make_kernel_tables(const ArithTable& g, int k);

// f_{(g,k)}(n) = sum_{a^k b = n} (mu*g)(a) tau_k(b).
i64 gcd_kernel_identity(const KernelTables& tables, i64 n);

void write_csv(std::ostream& os, const ArithTable& table);

}  // namespace gcdsum
