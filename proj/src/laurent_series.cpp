#include "gcdsum/laurent_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gcdsum {

TruncSeries::TruncSeries(double center, int pole_order, std::vector<double> coeffs)
    : center_(center), pole_order_(pole_order), coeffs_(std::move(coeffs)) {
  if (pole_order_ < 0) throw std::invalid_argument("TruncSeries: negative pole order");
  if (coeffs_.empty()) throw std::invalid_argument("TruncSeries: truncation window exhausted");
}

double TruncSeries::coeff(int power) const {
  if (power < -pole_order_ || power > trunc()) {
    throw std::out_of_range("TruncSeries: power " + std::to_string(power) + " outside [" +
                            std::to_string(-pole_order_) + ", " + std::to_string(trunc()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(power + pole_order_)];
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  if (a.center() != b.center()) throw std::invalid_argument("series_mul: centers differ");
  const int pole = a.pole_order() + b.pole_order();
  const int trunc = std::min(a.trunc() - b.pole_order(), b.trunc() - a.pole_order());
  if (trunc < -pole) throw std::domain_error("series_mul: truncation window exhausted");

  std::vector<double> c(static_cast<std::size_t>(trunc + pole + 1), 0.0);
  for (int m = -pole; m <= trunc; ++m) {
    double acc = 0.0;
    for (int i = -a.pole_order(); i <= a.trunc(); ++i) {
      const int j = m - i;
      if (j < -b.pole_order()) break;
      if (j > b.trunc()) continue;
      acc += a.coeff(i) * b.coeff(j);
    }
    c[static_cast<std::size_t>(m + pole)] = acc;
  }
  return TruncSeries(a.center(), pole, std::move(c));
}

TruncSeries series_pow(const TruncSeries& a, int k) {
  if (k < 1) throw std::invalid_argument("series_pow: k must be >= 1");
  TruncSeries r = a;
  for (int i = 1; i < k; ++i) r = series_mul(r, a);
  return r;
}

TruncSeries series_invert(const TruncSeries& a) {
  if (a.pole_order() != 0) throw std::invalid_argument("series_invert: series has a pole");
  const double c0 = a.coeff(0);
  if (c0 == 0.0) throw std::domain_error("series_invert: zero constant term");
  const int n = a.trunc();
  std::vector<double> b(static_cast<std::size_t>(n + 1), 0.0);
  b[0] = 1.0 / c0;
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc += a.coeff(i) * b[static_cast<std::size_t>(m - i)];
    b[static_cast<std::size_t>(m)] = -acc / c0;
  }
  return TruncSeries::taylor(a.center(), std::move(b));
}

TruncSeries zeta_laurent(const StieltjesConstants& gammas, int trunc) {
  if (trunc > gammas.max_index()) {
    throw std::invalid_argument("zeta_laurent: needs Stieltjes constants through index " +
                                std::to_string(trunc));
  }
  std::vector<double> c{1.0};
  for (int j = 0; j <= trunc; ++j) c.push_back(gammas.laurent(j));
  return TruncSeries(1.0, 1, std::move(c));
}

double MainTermPolynomial::operator()(double log_x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * log_x + *it;
  return acc;
}

MainTermPolynomial residue_main_poly(int k, const StieltjesConstants& gammas) {
  if (k < 2) throw std::invalid_argument("residue_main_poly: k must be >= 2");
  if (gammas.max_index() < k - 2) {
    throw std::invalid_argument("residue_main_poly: k=" + std::to_string(k) +
                                " needs Stieltjes constants through index " + std::to_string(k - 2));
  }
  const int trunc = std::min(gammas.max_index(), k + 1);
  const TruncSeries zeta_k = series_pow(zeta_laurent(gammas, trunc), k);

  // 1/s = 1/(1 + u) around s = 1.
  std::vector<double> geometric(static_cast<std::size_t>(trunc + 2));
  for (std::size_t m = 0; m < geometric.size(); ++m) geometric[m] = (m % 2 == 0) ? 1.0 : -1.0;
  const TruncSeries w = series_mul(zeta_k, TruncSeries::taylor(1.0, std::move(geometric)));

  // x^{s-1} = sum_m (log x)^m u^m / m!, so the u^{-1} coefficient picks w_{-1-m}/m!.
  MainTermPolynomial p{k, std::vector<double>(static_cast<std::size_t>(k))};
  double factorial = 1.0;
  for (int m = 0; m < k; ++m) {
    if (m > 0) factorial *= m;
    p.coeffs[static_cast<std::size_t>(m)] = w.coeff(-1 - m) / factorial;
  }
  return p;
}

}  // namespace gcdsum
