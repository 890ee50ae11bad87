// Small numeric helpers shared by every module: overflow-checked integer
// arithmetic, 128-bit formatting, and compensated floating-point summation.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcdsum {

using i64 = std::int64_t;
using i128 = __int128;

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline i64 checked_add(i64 a, i64 b, const char* what) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError(what);
  return r;
}

inline i64 checked_mul(i64 a, i64 b, const char* what) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(what);
  return r;
}

inline i128 checked_add(i128 a, i128 b, const char* what) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError(what);
  return r;
}

inline i128 checked_mul(i128 a, i128 b, const char* what) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(what);
  return r;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  // Work with negative remainders so INT128_MIN is handled.
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// Neumaier's variant of Kahan summation.
template <typename T>
class BasicCompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_ += std::fabs(x);
  }
  BasicCompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }
  // Sum of magnitudes; scales the rounding-error estimate.
  T magnitude() const { return abs_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
  T abs_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

// Shortest decimal string that round-trips to the same double.
std::string shortest_repr(double v);

}  // namespace gcdsum
