#include "logmean/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logmean::oracle {

namespace {

// Kahan-compensated accumulator.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: need at least 2 points");
  QuadratureRule rule;
  rule.kind = Kind::GaussLegendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Newton iteration on P_n over [-1,1], mirrored about the midpoint, then
  // mapped to [0,1].
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(std::numbers::pi * (double(i) - 0.25) / (double(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / double(j);
      }
      pp = double(n) * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i - 1] = 0.5 * (1.0 - z);
    rule.nodes[n - i] = 0.5 * (1.0 + z);
    rule.weights[i - 1] = 0.5 * w;
    rule.weights[n - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule QuadratureRule::composite_simpson(int panels) {
  if (panels < 1) throw std::invalid_argument("composite_simpson: need at least 1 panel");
  QuadratureRule rule;
  rule.kind = Kind::CompositeSimpson;
  const int n = 2 * panels + 1;
  const double h = 1.0 / double(2 * panels);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = double(i) * h;
    double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rule.weights[i] = c * h / 3.0;
  }
  return rule;
}

double quad_scalar_integral(double t, const QuadratureRule& rule) {
  if (!(t > 0.0)) throw std::domain_error("quad_scalar_integral: t must be > 0");
  Kahan acc;
  for (int i = 0; i < rule.points(); ++i) acc.add(rule.weights[i] * std::pow(t, rule.nodes[i]));
  return acc.sum;
}

ComplexMatrix quad_matrix_integral(const HermitianPSD& A, const HermitianPSD& B,
                                   const ComplexMatrix& X, const QuadratureRule& rule) {
  if (A.dim() != B.dim() || X.rows() != A.dim() || X.cols() != A.dim())
    throw std::invalid_argument("quad_matrix_integral: dimension mismatch");
  ComplexMatrix acc = ComplexMatrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < rule.points(); ++i) {
    const double nu = rule.nodes[i];
    acc += rule.weights[i] *
           (frac_power(A, nu).matrix() * X * frac_power(B, 1.0 - nu).matrix());
  }
  return acc;
}

ComplexMatrix quad_geomean_integral(const HermitianPSD& A, const HermitianPSD& B,
                                    const QuadratureRule& rule) {
  if (A.dim() != B.dim())
    throw std::invalid_argument("quad_geomean_integral: dimension mismatch");
  const HermitianPSD Ah = frac_power(A, 0.5);
  const HermitianPSD Aih = frac_power(A, -0.5);
  ComplexMatrix Traw = Aih.matrix() * B.matrix() * Aih.matrix();
  const HermitianPSD T(0.5 * (Traw + Traw.adjoint().eval()));
  ComplexMatrix acc = ComplexMatrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < rule.points(); ++i)
    acc += rule.weights[i] * (Ah.matrix() * frac_power(T, rule.nodes[i]).matrix() * Ah.matrix());
  return acc;
}

double brute_sum(SumKind kind, double t, int m) {
  if (!(t > 0.0)) throw std::domain_error("brute_sum: t must be > 0");
  if (m < 1 || m > 64) throw std::domain_error("brute_sum: m must lie in [1, 64]");
  Kahan acc;
  switch (kind) {
    case SumKind::Alpha:
      for (int k = 1; k <= m; ++k) acc.add(std::pow(t, double(2 * k - 1) / double(2 * m)));
      return acc.sum / double(m);
    case SumKind::Beta:
      for (int k = 0; k <= m; ++k) acc.add(std::pow(t, double(k) / double(m)));
      acc.add(-(t + 1.0) / 2.0);
      return acc.sum / double(m);
    case SumKind::Gamma:
      for (int k = 1; k <= m; ++k) acc.add(std::pow(t, double(k) / double(m)));
      return acc.sum / double(m);
    case SumKind::Delta:
      for (int k = 0; k < m; ++k) acc.add(std::pow(t, double(k) / double(m)));
      return acc.sum / double(m);
    case SumKind::Lemma3Left:
      for (int k = 1; k <= m; ++k) acc.add(std::pow(t, double((2 * k - 1) * (m + 1))));
      return acc.sum;
    case SumKind::Lemma3Right:
      for (int k = 1; k <= m; ++k) acc.add(std::pow(t, double(2 * k * m)));
      return acc.sum;
    case SumKind::Lemma5Left:
      if (m < 2) throw std::domain_error("brute_sum: Lemma5Left needs m >= 2");
      for (int k = 1; k <= m - 1; ++k)
        acc.add(std::pow(t, double(k * m)) - std::pow(t, double(k * (m - 1))));
      return acc.sum;
    case SumKind::InductionLeft:
      for (int k = 0; k < m; ++k) acc.add(std::pow(t, double(k)));
      return acc.sum;
  }
  throw std::logic_error("brute_sum: unknown kind");
}

}  // namespace logmean::oracle
