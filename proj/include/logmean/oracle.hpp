// Independent numerical oracles: quadrature of the nu-integrals and naive
// compensated summation of the finite sum families.  These deliberately avoid
// the closed-form code paths they are used to validate.
#pragma once

#include <vector>

#include "logmean/matrix_core.hpp"

namespace logmean::oracle {

// Quadrature rule on [0,1]; weights sum to 1 within 1e-14.
struct QuadratureRule {
  enum class Kind { GaussLegendre, CompositeSimpson };
  Kind kind;
  std::vector<double> nodes;
  std::vector<double> weights;

  int points() const { return int(nodes.size()); }

  // n-point Gauss-Legendre mapped to [0,1]; nodes strictly inside (0,1).
  static QuadratureRule gauss_legendre(int n);
  // composite Simpson with `panels` panels (2*panels+1 nodes, endpoints included)
  static QuadratureRule composite_simpson(int panels);
};

// sum_i w_i t^(x_i); converges to L(t,1).
double quad_scalar_integral(double t, const QuadratureRule& rule);

// sum_i w_i A^(x_i) X B^(1-x_i), built from frac_power products.
ComplexMatrix quad_matrix_integral(const HermitianPSD& A, const HermitianPSD& B,
                                   const ComplexMatrix& X, const QuadratureRule& rule);

// sum_i w_i A^(1/2) T^(x_i) A^(1/2) with T = A^(-1/2) B A^(-1/2).
ComplexMatrix quad_geomean_integral(const HermitianPSD& A, const HermitianPSD& B,
                                    const QuadratureRule& rule);

// The paper sums evaluated term by term with Kahan-compensated accumulation.
enum class SumKind {
  Alpha,          // (1/m) sum_{k=1}^m t^((2k-1)/(2m))
  Beta,           // (1/m) (sum_{k=0}^m t^(k/m) - (t+1)/2)
  Gamma,          // (1/m) sum_{k=1}^m t^(k/m)
  Delta,          // (1/m) sum_{k=0}^{m-1} t^(k/m)
  Lemma3Left,     // sum_{k=1}^m x^((2k-1)(m+1))
  Lemma3Right,    // sum_{k=1}^m x^(2km)
  Lemma5Left,     // sum_{k=1}^{m-1} (x^(km) - x^(k(m-1)))
  InductionLeft,  // sum_{k=0}^{m-1} t^k
};

// m must lie in [1, 64].
double brute_sum(SumKind kind, double t, int m);

}  // namespace logmean::oracle
