#include "gcdsum/zeta_constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gcdsum/laurent_series.hpp"

namespace gcdsum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,  1.0 / 42.0,         -1.0 / 30.0,     5.0 / 66.0,
    -691.0 / 2730.0,   7.0 / 6.0,    -3617.0 / 510.0,    43867.0 / 798.0, -174611.0 / 330.0,
};

// Number of Bernoulli correction terms; the next one bounds the remainder.
constexpr int kCorrections = 8;

using Poly = std::vector<double>;  // coefficients in L = log t

double eval(const Poly& p, double L) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * L + *it;
  return acc;
}

// f(t) = (log t)^r t^{-s}. Its j-th derivative is t^{-s-j} P_j(log t) with
// P_0 = L^r and P_{j+1} = P_j' - (s + j) P_j.
class LogPowerTerm {
 public:
  LogPowerTerm(int r, double s, int max_derivative) : s_(s) {
    Poly p(static_cast<std::size_t>(r + 1), 0.0);
    p[static_cast<std::size_t>(r)] = 1.0;
    polys_.push_back(p);
    for (int j = 0; j < max_derivative; ++j) {
      Poly next(p.size(), 0.0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        next[i] -= (s + j) * p[i];
        if (i + 1 < p.size()) next[i] += static_cast<double>(i + 1) * p[i + 1];
      }
      polys_.push_back(next);
      p = std::move(next);
    }
  }

  double derivative(int j, double t) const {
    const double L = std::log(t);
    return std::pow(t, -s_ - j) * eval(polys_[static_cast<std::size_t>(j)], L);
  }

 private:
  double s_;
  std::vector<Poly> polys_;
};

// Euler-Maclaurin boundary terms at N: half = f(N)/2 and
// bernoulli = sum_j B_2j/(2j)! f^(2j-1)(N); error is the first omitted term.
struct Boundary {
  double half;
  double bernoulli;
  double error;
};

Boundary boundary_terms(const LogPowerTerm& f, double N) {
  CompensatedSum acc;
  double factorial = 1.0;  // (2j)!
  for (int j = 1; j <= kCorrections; ++j) {
    factorial *= (2.0 * j - 1.0) * (2.0 * j);
    acc += kBernoulli[static_cast<std::size_t>(j - 1)] / factorial * f.derivative(2 * j - 1, N);
  }
  const int j = kCorrections + 1;
  factorial *= (2.0 * j - 1.0) * (2.0 * j);
  const double next = kBernoulli[static_cast<std::size_t>(j - 1)] / factorial * f.derivative(2 * j - 1, N);
  return {0.5 * f.derivative(0, N), acc.value(), std::fabs(next)};
}

}  // namespace

double StieltjesConstants::laurent(int j) const {
  double factorial = 1.0;
  for (int i = 2; i <= j; ++i) factorial *= i;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * gammas.at(static_cast<std::size_t>(j)) / factorial;
}

std::vector<double> StieltjesConstants::laurent_coefficients() const {
  std::vector<double> c;
  for (int j = 0; j <= max_index(); ++j) c.push_back(laurent(j));
  return c;
}

StieltjesConstants stieltjes(int J, i64 cutoff, double precision_goal) {
  if (J < 0 || J > kMaxStieltjesIndex) {
    throw std::invalid_argument("stieltjes: index must lie in 0.." + std::to_string(kMaxStieltjesIndex));
  }
  if (cutoff < kMinStieltjesCutoff) {
    throw PrecisionError("stieltjes: cutoff " + std::to_string(cutoff) +
                         " is too small to certify the precision goal");
  }
  const double M = static_cast<double>(cutoff);
  const long double logM = std::log(static_cast<long double>(cutoff));
  constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();

  // The partial sums reach ~log^{n+1}(M)/(n+1) before cancelling, so they are
  // accumulated in extended precision.
  std::vector<BasicCompensatedSum<long double>> sums(static_cast<std::size_t>(J + 1));
  sums[0] += 1.0L;
  for (i64 m = 2; m <= cutoff; ++m) {
    const long double x = static_cast<long double>(m);
    const long double L = std::log(x);
    long double term = 1.0L / x;
    for (auto& sum : sums) {
      sum += term;
      term *= L;
    }
  }

  StieltjesConstants out{{}, {}, precision_goal, cutoff};
  for (int n = 0; n <= J; ++n) {
    auto& sum = sums[static_cast<std::size_t>(n)];
    const LogPowerTerm f(n, 1.0, 2 * kCorrections + 2);
    // sum_{m<=M} f(m) = int_1^M f + f(M)/2 + bernoulli(M) + (terms at 1, which the limit keeps)
    const auto b = boundary_terms(f, M);
    long double head = 1.0L;
    for (int i = 0; i <= n; ++i) head *= logM;
    sum += -head / (n + 1);
    sum += -static_cast<long double>(b.half);
    sum += -static_cast<long double>(b.bernoulli);

    const double rounding = static_cast<double>((n + 3) * kLongEps * (sum.magnitude() + head)) +
                            4 * kEps * (std::fabs(b.half) + std::fabs(b.bernoulli));
    const double error = b.error + rounding;
    if (error > precision_goal) {
      throw PrecisionError("stieltjes: gamma_" + std::to_string(n) + " error estimate " +
                           std::to_string(error) + " exceeds the precision goal");
    }
    out.gammas.push_back(static_cast<double>(sum.value()));
    out.errors.push_back(error);
  }
  return out;
}

double log_power_tail_integral(double N, int r, double s) {
  // N^{1-s} sum_i r!/(r-i)! (log N)^{r-i} / (s-1)^{i+1}
  const double L = std::log(N);
  double acc = 0.0;
  double falling = 1.0;
  for (int i = 0; i <= r; ++i) {
    if (i > 0) falling *= (r - i + 1);
    acc += falling * std::pow(L, r - i) / std::pow(s - 1.0, i + 1);
  }
  return std::pow(N, 1.0 - s) * acc;
}

ValueWithError zeta_real(double s, int r, i64 cutoff) {
  if (!(s > 1.0)) throw std::domain_error("zeta_real: requires s > 1");
  if (r < 0) throw std::invalid_argument("zeta_real: derivative order must be >= 0");
  if (cutoff < 10) throw PrecisionError("zeta_real: cutoff must be >= 10");

  CompensatedSum sum;
  sum += (r == 0) ? 1.0 : 0.0;
  for (i64 n = 2; n < cutoff; ++n) {
    const double x = static_cast<double>(n);
    sum += std::pow(std::log(x), r) * std::pow(x, -s);
  }
  const double N = static_cast<double>(cutoff);
  const LogPowerTerm f(r, s, 2 * kCorrections + 2);
  // sum_{n>=N} f(n) = int_N^inf f + f(N)/2 - bernoulli(N) + remainder
  const auto b = boundary_terms(f, N);
  sum += log_power_tail_integral(N, r, s);
  sum += b.half;
  sum += -b.bernoulli;

  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  const double rounding = (r + 4) * kEps * sum.magnitude();
  return {sign * sum.value(), b.error + rounding};
}

ZetaJet zeta_derivatives(int k, int R, i64 cutoff) {
  if (k < 2) throw std::invalid_argument("zeta_derivatives: k must be >= 2");
  if (R < 0 || R > k + 1) throw std::invalid_argument("zeta_derivatives: order must lie in 0..k+1");
  ZetaJet jet{k, R, {}, {}, cutoff};
  for (int r = 0; r <= R; ++r) {
    const auto v = zeta_real(static_cast<double>(k), r, cutoff);
    if (v.error > kZetaPrecisionGoal) {
      throw PrecisionError("zeta_derivatives: zeta^(" + std::to_string(r) + ")(" + std::to_string(k) +
                           ") error estimate exceeds 1e-13");
    }
    jet.derivs.push_back(v.value);
    jet.errors.push_back(v.error);
  }
  return jet;
}

namespace {

std::vector<double> moments_from_derivs(double center, const std::vector<double>& derivs) {
  std::vector<double> taylor;
  double factorial = 1.0;
  for (std::size_t j = 0; j < derivs.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    taylor.push_back(derivs[j] / factorial);
  }
  const auto zeta = TruncSeries::taylor(center, std::move(taylor));
  const auto inv = series_invert(series_mul(zeta, zeta));

  std::vector<double> m;
  factorial = 1.0;
  for (int r = 0; r <= inv.trunc(); ++r) {
    if (r > 0) factorial *= r;
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    m.push_back(sign * factorial * inv.coeff(r));
  }
  return m;
}

}  // namespace

MuMuMoments mu_mu_moments(int k, int R) {
  if (k < 2) throw std::invalid_argument("mu_mu_moments: k must be >= 2");
  if (R < 0 || R > k) throw std::invalid_argument("mu_mu_moments: order must lie in 0..k");
  const auto jet = zeta_derivatives(k, R);
  MuMuMoments out{k, moments_from_derivs(jet.k, jet.derivs), {}};

  // First-order propagation of the jet's error bounds, plus rounding.
  out.errors.assign(out.moments.size(), 0.0);
  for (std::size_t j = 0; j < jet.derivs.size(); ++j) {
    auto bumped = jet.derivs;
    bumped[j] += jet.errors[j];
    const auto m = moments_from_derivs(jet.k, bumped);
    for (std::size_t r = 0; r < m.size(); ++r) out.errors[r] += std::fabs(m[r] - out.moments[r]);
  }
  for (std::size_t r = 0; r < out.moments.size(); ++r) {
    out.errors[r] += 16.0 * kEps * static_cast<double>(r + 1) * std::fabs(out.moments[r]);
  }
  return out;
}

double epsilon_envelope(double x, double C) {
  if (!(x > 5.0)) throw std::domain_error("epsilon_envelope: requires x > 5");
  if (!(C > 0.0)) throw std::domain_error("epsilon_envelope: requires C > 0");
  const double L = std::log(x);
  return std::exp(-C * std::pow(L, 0.6) * std::pow(std::log(L), -0.2));
}

}  // namespace gcdsum
