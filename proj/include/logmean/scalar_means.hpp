// Scalar means, bound families and lemma expressions for the logarithmic mean.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace logmean {

// Two strictly positive finite scalars; the arguments of every scalar mean.
struct PositivePair {
  double a;
  double b;

  PositivePair(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw std::domain_error("PositivePair: arguments must be finite and > 0");
  }
};

// L(a,b) = (a-b)/(log a - log b), L(a,a) = a.
// Evaluated as b*d/log1p(d) with d = (a-b)/b; a 3-term series takes over for
// |d| < 1e-8 so the diagonal is exact and the near-diagonal loses no digits.
double log_mean(const PositivePair& p);

double geo_mean(const PositivePair& p);
double arith_mean(const PositivePair& p);

// ((a^(1/3)+b^(1/3))/2)^3, the power-mean upper bound of L.
double lin_upper(const PositivePair& p);

// (2/3)sqrt(ab) + (1/3)(a+b)/2, the Polya upper bound.
double polya_upper(const PositivePair& p);

// Homogeneous extension of (t+t^(1/3))/(1+t^(1/3)); sits between geo_mean and L.
double rational_lower(const PositivePair& p);

// One-variable sum families.  alpha_m is the midpoint-type lower family,
// beta_m the trapezoid-type upper family, gamma_m/delta_m the right/left
// Riemann sums of the integral of t^nu.  alpha_m and beta_m dispatch between
// the explicit sum (|t-1| <= 1e-6) and the closed form (elsewhere); both
// routes are public for cross-testing.
double alpha_m(double t, int m);
double alpha_m_sum(double t, int m);
double alpha_m_closed(double t, int m);  // t != 1
double beta_m(double t, int m);
double beta_m_sum(double t, int m);
double beta_m_closed(double t, int m);  // t != 1
double gamma_m(double t, int m);
double delta_m(double t, int m);

// Exponent lists of the two-variable sum families; shared with the matrix
// power-sum maps so scalar and 1x1-matrix evaluations follow the same path.
std::vector<double> lower_exponents(int m);  // (2k-1)/(2m), k = 1..m
std::vector<double> mid_exponents(int m);    // k/(m+1),    k = 1..m
std::vector<double> upper_exponents(int m);  // k/(m-1),    k = 0..m-1, m >= 2
std::vector<double> beta_exponents(int m);   // k/m,        k = 0..m

// weight * sum_k a^e_k b^(1-e_k); the scalar counterpart of power_sum_map.
double pair_power_sum(const PositivePair& p, const std::vector<double>& exponents, double weight);

// Two-variable sum families, homogeneous of degree 1, equal to the t-forms at b = 1.
double lower_sum_pair(const PositivePair& p, int m);
double mid_sum_pair(const PositivePair& p, int m);
double upper_sum_pair(const PositivePair& p, int m);  // m >= 2

// x^u(1-x^v) + x^w(x^v-1) for nonnegative integers with w >= u; >= 0 for x > 0.
double lemma2_expr(double x, int u, int v, int w);

// sum_{k=1}^m x^((2k-1)(m+1)) - sum_{k=1}^m x^(2km); >= 0 for x > 0, m >= 1.
double lemma3_gap(double x, int m);

// sum_{k=1}^{m-1}(x^(km) - x^(k(m-1))) - (x^(m(m-1))-1)/2; >= 0 for x > 0, m >= 2.
double lemma5_gap(double x, int m);

// m(t^(m-1)+1)/2 - sum_{k=0}^{m-1} t^k; >= 0 for t > 0, m >= 2.
double induction_gap(double t, int m);

// x^e for integer e >= 0 by repeated squaring; overflow saturates to +inf.
double pow_int(double x, long long e);

}  // namespace logmean
