// Real-axis zeta machinery: zeta^(r)(s), the Stieltjes constants, the
// log-moments of mu*mu (Dirichlet coefficients of 1/zeta^2), and the
// exp(-C (log x)^{3/5} (log log x)^{-1/5}) decay envelope.
//
// Everything is double precision with compensated summation. Each returned
// value carries an absolute error estimate; an operation that cannot meet
// its precision goal throws PrecisionError.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gcdsum/numeric.hpp"

namespace gcdsum {

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValueWithError {
  double value;
  double error;
};

// Standard Stieltjes constants gamma_j = lim (sum_{m<=M} log^j m / m - log^{j+1} M / (j+1)).
// The Laurent expansion of zeta at 1 is 1/(s-1) + sum_j laurent(j) (s-1)^j with
// laurent(j) = (-1)^j gamma_j / j!.
struct StieltjesConstants {
  std::vector<double> gammas;
  std::vector<double> errors;
  double precision_goal;
  i64 cutoff;

  int max_index() const { return static_cast<int>(gammas.size()) - 1; }
  double laurent(int j) const;
  std::vector<double> laurent_coefficients() const;
};

inline constexpr int kMaxStieltjesIndex = 4;
inline constexpr i64 kMinStieltjesCutoff = 1000;

// gamma_0..gamma_J from the limit formula, with Euler-Maclaurin corrections
// at the cutoff. Requires J <= 4 and cutoff >= 1000.
StieltjesConstants stieltjes(int J, i64 cutoff = 1'000'000, double precision_goal = 1e-10);

// zeta^(r)(s) for real s > 1: direct summation below `cutoff` plus an
// Euler-Maclaurin tail (closed-form integral and Bernoulli corrections).
ValueWithError zeta_real(double s, int r = 0, i64 cutoff = 100);

// Closed form of the tail integral int_N^inf (log t)^r t^{-s} dt, s > 1.
double log_power_tail_integral(double N, int r, double s);

struct ZetaJet {
  int k;
  int order;
  std::vector<double> derivs;  // zeta^(0)(k) .. zeta^(order)(k)
  std::vector<double> errors;
  i64 cutoff;

  double operator[](int r) const { return derivs.at(static_cast<std::size_t>(r)); }
};

inline constexpr double kZetaPrecisionGoal = 1e-13;

// Requires k >= 2 and 0 <= R <= k + 1.
ZetaJet zeta_derivatives(int k, int R, i64 cutoff = 100);

// M_{k,r} = sum_n (mu*mu)(n) log^r n / n^k = (-1)^r (d/ds)^r zeta(s)^{-2} at s = k.
struct MuMuMoments {
  int k;
  std::vector<double> moments;  // M_{k,0} .. M_{k,R}
  std::vector<double> errors;

  double operator[](int r) const { return moments.at(static_cast<std::size_t>(r)); }
};

// Taylor-expands zeta at k, squares, inverts and reads off derivatives.
// Requires k >= 2 and 0 <= R <= k.
MuMuMoments mu_mu_moments(int k, int R);

inline constexpr double kDefaultEnvelopeC = 1.0;

// exp(-C (log x)^{3/5} (log log x)^{-1/5}); requires x > 5 and C > 0.
double epsilon_envelope(double x, double C = kDefaultEnvelopeC);

}  // namespace gcdsum
