// Truncated Laurent series at a real center, and the residue extraction that
// turns zeta^k(s) x^{s-1}/s into the main-term polynomial of sum_{n<=x} tau_k(n).

#pragma once

#include <span>
#include <vector>

#include "gcdsum/zeta_constants.hpp"

namespace gcdsum {

// sum_{j=-pole_order}^{trunc} c_j (s - center)^j + O((s - center)^{trunc+1}).
// Immutable; every operation returns a new series.
class TruncSeries {
 public:
  // coeffs holds c_{-pole_order} .. c_{trunc}.
  TruncSeries(double center, int pole_order, std::vector<double> coeffs);

  static TruncSeries taylor(double center, std::vector<double> coeffs) {
    return TruncSeries(center, 0, std::move(coeffs));
  }

  double center() const { return center_; }
  int pole_order() const { return pole_order_; }
  int trunc() const { return static_cast<int>(coeffs_.size()) - pole_order_ - 1; }

  // Coefficient of (s - center)^power; throws outside [-pole_order, trunc].
  double coeff(int power) const;
  std::span<const double> coeffs() const { return coeffs_; }

 private:
  double center_;
  int pole_order_;
  std::vector<double> coeffs_;
};

// Cauchy product, valid through min(a.trunc - b.pole, b.trunc - a.pole).
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

TruncSeries series_pow(const TruncSeries& a, int k);

// Multiplicative inverse of a Taylor series with nonzero constant term.
TruncSeries series_invert(const TruncSeries& a);

// 1/(s-1) + sum_{j<=trunc} laurent(j) (s-1)^j.
TruncSeries zeta_laurent(const StieltjesConstants& gammas, int trunc);

// P_{k-1}(t) = sum_j coeffs[j] t^j, the polynomial with
// sum_{n<=x} tau_k(n) = x P_{k-1}(log x) + Delta_k(x).
struct MainTermPolynomial {
  int k;
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double log_x) const;
};

// Residue of zeta^k(s) x^{s-1}/s at s = 1 as a polynomial in log x.
// Needs laurent coefficients 0..k-2, so k <= 6 with the constants computed here.
MainTermPolynomial residue_main_poly(int k, const StieltjesConstants& gammas);

}  // namespace gcdsum
