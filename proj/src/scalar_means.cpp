#include "logmean/scalar_means.hpp"

#include <cmath>
#include <string>

namespace logmean {

namespace {

void require_order(int m, int min_m, const char* what) {
  if (m < min_m)
    throw std::domain_error(std::string(what) + ": order m must be >= " + std::to_string(min_m));
}

void require_positive(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error(std::string(what) + ": argument must be finite and > 0");
}

}  // namespace

double log_mean(const PositivePair& p) {
  // evaluate from the smaller argument so d >= 0; the 1+d inside log1p then
  // never cancels and the swapped pair takes the identical path
  const double lo = std::min(p.a, p.b);
  const double hi = std::max(p.a, p.b);
  const double d = (hi - lo) / lo;
  if (d < 1e-8) {
    // relative truncation error of the 3-term series is O(d^3) <= 1e-24 here
    return lo * (1.0 + d / 2.0 - d * d / 12.0);
  }
  return lo * d / std::log1p(d);
}

double geo_mean(const PositivePair& p) { return std::sqrt(p.a * p.b); }

double arith_mean(const PositivePair& p) { return (p.a + p.b) / 2.0; }

double lin_upper(const PositivePair& p) {
  const double m = (std::cbrt(p.a) + std::cbrt(p.b)) / 2.0;
  return m * m * m;
}

double polya_upper(const PositivePair& p) {
  return (2.0 / 3.0) * std::sqrt(p.a * p.b) + (1.0 / 3.0) * (p.a + p.b) / 2.0;
}

double rational_lower(const PositivePair& p) {
  const double t = p.a / p.b;
  const double c = std::cbrt(t);
  return p.b * (t + c) / (1.0 + c);
}

double alpha_m_sum(double t, int m) {
  require_positive(t, "alpha_m");
  require_order(m, 1, "alpha_m");
  if (t == 1.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= m; ++k) s += std::pow(t, double(2 * k - 1) / double(2 * m));
  return s / double(m);
}

double alpha_m_closed(double t, int m) {
  require_positive(t, "alpha_m");
  require_order(m, 1, "alpha_m");
  const double lt = std::log(t);
  // t^(1/m) - 1 via expm1 keeps full precision for large m
  return std::exp(lt / double(2 * m)) * (t - 1.0) / (double(m) * std::expm1(lt / double(m)));
}

double alpha_m(double t, int m) {
  require_positive(t, "alpha_m");
  return std::abs(t - 1.0) <= 1e-6 ? alpha_m_sum(t, m) : alpha_m_closed(t, m);
}

double beta_m_sum(double t, int m) {
  require_positive(t, "beta_m");
  require_order(m, 1, "beta_m");
  if (t == 1.0) return 1.0;
  double s = 0.0;
  for (int k = 0; k <= m; ++k) s += std::pow(t, double(k) / double(m));
  return (s - (t + 1.0) / 2.0) / double(m);
}

double beta_m_closed(double t, int m) {
  require_positive(t, "beta_m");
  require_order(m, 1, "beta_m");
  const double r = std::expm1(std::log(t) / double(m));  // t^(1/m) - 1
  return (r + 2.0) * (t - 1.0) / (2.0 * double(m) * r);
}

double beta_m(double t, int m) {
  require_positive(t, "beta_m");
  return std::abs(t - 1.0) <= 1e-6 ? beta_m_sum(t, m) : beta_m_closed(t, m);
}

double gamma_m(double t, int m) {
  require_positive(t, "gamma_m");
  require_order(m, 1, "gamma_m");
  if (t == 1.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= m; ++k) s += std::pow(t, double(k) / double(m));
  return s / double(m);
}

double delta_m(double t, int m) {
  require_positive(t, "delta_m");
  require_order(m, 1, "delta_m");
  if (t == 1.0) return 1.0;
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += std::pow(t, double(k) / double(m));
  return s / double(m);
}

std::vector<double> lower_exponents(int m) {
  require_order(m, 1, "lower_exponents");
  std::vector<double> e(m);
  for (int k = 1; k <= m; ++k) e[k - 1] = double(2 * k - 1) / double(2 * m);
  return e;
}

std::vector<double> mid_exponents(int m) {
  require_order(m, 1, "mid_exponents");
  std::vector<double> e(m);
  for (int k = 1; k <= m; ++k) e[k - 1] = double(k) / double(m + 1);
  return e;
}

std::vector<double> upper_exponents(int m) {
  require_order(m, 2, "upper_exponents");
  std::vector<double> e(m);
  for (int k = 0; k < m; ++k) e[k] = double(k) / double(m - 1);
  return e;
}

std::vector<double> beta_exponents(int m) {
  require_order(m, 1, "beta_exponents");
  std::vector<double> e(m + 1);
  for (int k = 0; k <= m; ++k) e[k] = double(k) / double(m);
  return e;
}

double pair_power_sum(const PositivePair& p, const std::vector<double>& exponents, double weight) {
  double s = 0.0;
  for (double e : exponents) s += std::pow(p.a, e) * std::pow(p.b, 1.0 - e);
  return weight * s;
}

double lower_sum_pair(const PositivePair& p, int m) {
  return pair_power_sum(p, lower_exponents(m), 1.0 / double(m));
}

double mid_sum_pair(const PositivePair& p, int m) {
  return pair_power_sum(p, mid_exponents(m), 1.0 / double(m));
}

double upper_sum_pair(const PositivePair& p, int m) {
  return pair_power_sum(p, upper_exponents(m), 1.0 / double(m));
}

double pow_int(double x, long long e) {
  if (e < 0) throw std::domain_error("pow_int: exponent must be >= 0");
  double acc = 1.0;
  double base = x;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

double lemma2_expr(double x, int u, int v, int w) {
  require_positive(x, "lemma2_expr");
  if (u < 0 || v < 0 || w < 0) throw std::domain_error("lemma2_expr: exponents must be >= 0");
  if (w < u) throw std::domain_error("lemma2_expr: requires w >= u");
  const double xv = pow_int(x, v);
  return pow_int(x, u) * (1.0 - xv) + pow_int(x, w) * (xv - 1.0);
}

double lemma3_gap(double x, int m) {
  require_positive(x, "lemma3_gap");
  require_order(m, 1, "lemma3_gap");
  double lhs = 0.0, rhs = 0.0;
  for (int k = 1; k <= m; ++k) {
    lhs += pow_int(x, (long long)(2 * k - 1) * (m + 1));
    rhs += pow_int(x, (long long)2 * k * m);
  }
  return lhs - rhs;
}

double lemma5_gap(double x, int m) {
  require_positive(x, "lemma5_gap");
  require_order(m, 2, "lemma5_gap");
  double s = 0.0;
  for (int k = 1; k <= m - 1; ++k)
    s += pow_int(x, (long long)k * m) - pow_int(x, (long long)k * (m - 1));
  return s - (pow_int(x, (long long)m * (m - 1)) - 1.0) / 2.0;
}

double induction_gap(double t, int m) {
  require_positive(t, "induction_gap");
  require_order(m, 2, "induction_gap");
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += pow_int(t, k);
  return double(m) * (pow_int(t, m - 1) + 1.0) / 2.0 - s;
}

}  // namespace logmean
