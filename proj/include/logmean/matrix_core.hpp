// Hermitian PSD linear algebra: fractional powers, the logarithmic-mean
// integral map, generic power-sum maps and weighted geometric means.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace logmean {

using ComplexMatrix = Eigen::MatrixXcd;

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable Hermitian positive semidefinite matrix with an eagerly computed
// eigendecomposition.  Construction symmetrizes (M+M*)/2, rejects inputs whose
// anti-Hermitian part exceeds 1e-12*||M||_F or whose spectrum dips below
// -1e-10*lambda_max, and clamps rounding-level negative eigenvalues to zero.
// Eigenvalues are stored descending.  Safe to share across threads.
class HermitianPSD {
 public:
  explicit HermitianPSD(const ComplexMatrix& entries);

  int dim() const { return int(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
  const ComplexMatrix& eigenvectors() const { return eigvecs_; }

  double eig_max() const { return eigvals_(0); }
  double eig_min() const { return eigvals_(dim() - 1); }

  // strict positive-definiteness threshold; below it inverses are refused
  double pd_eps() const { return 1e-10 * eig_max(); }
  bool is_positive_definite() const { return eig_min() > 0.0 && eig_min() >= pd_eps(); }

 private:
  ComplexMatrix entries_;
  Eigen::VectorXd eigvals_;
  ComplexMatrix eigvecs_;
};

// sqrt(sum |m_ij|^2)
double frobenius_norm(const ComplexMatrix& M);

// U diag(lambda^p) U*.  0^p = 0 for p > 0 and A^0 = I; p < 0 requires A
// positive definite (throws SingularMatrixError otherwise).
HermitianPSD frac_power(const HermitianPSD& A, double p);

// integral over nu in [0,1] of A^nu X B^(1-nu), evaluated as U (K o Y) V*
// where Y = U*XV and K_ij = L(alpha_i, beta_j); K_ij = 0 whenever an
// eigenvalue is zero.  Linear in X.
ComplexMatrix log_mean_map(const HermitianPSD& A, const HermitianPSD& B, const ComplexMatrix& X);

// weight * sum_k A^(e_k) X B^(1-e_k), applied as a single Hadamard multiplier
// in the shared eigenbasis.  Exponents must be nonempty and lie in [0,1].
ComplexMatrix power_sum_map(const HermitianPSD& A, const HermitianPSD& B, const ComplexMatrix& X,
                            std::span<const double> exponents, double weight);

// A #_nu B = A^(1/2) (A^(-1/2) B A^(-1/2))^nu A^(1/2), nu in [0,1]; A must be
// positive definite.
HermitianPSD weighted_geomean(const HermitianPSD& A, const HermitianPSD& B, double nu);

// integral over nu in [0,1] of A #_nu B, via lambda -> L(lambda,1) on the
// eigenvalues of A^(-1/2) B A^(-1/2) (with the limit value 0 at lambda = 0).
HermitianPSD integral_geomean(const HermitianPSD& A, const HermitianPSD& B);

// One term of a linear combination of operator means of (A,B).
struct MeanTerm {
  enum class Kind {
    Arithmetic,     // (A+B)/2
    WeightedGeo,    // A #_nu B
    InverseBridge,  // 2 ((A #_nu B)^-1 + A^-1)^-1
  };
  Kind kind = Kind::Arithmetic;
  double nu = 0.0;
  double coeff = 1.0;

  static MeanTerm arithmetic(double c) { return {Kind::Arithmetic, 0.0, c}; }
  static MeanTerm weighted_geo(double nu, double c) { return {Kind::WeightedGeo, nu, c}; }
  static MeanTerm inverse_bridge(double nu, double c) { return {Kind::InverseBridge, nu, c}; }
};

// sum_i coeff_i * term_i; Hermitian output.  SingularMatrixError propagates
// from the geometric and inverse-based terms.
ComplexMatrix mean_combination(const HermitianPSD& A, const HermitianPSD& B,
                               std::span<const MeanTerm> terms);

// lambda_min(M2 - M1); M1 <= M2 in Loewner order iff the gap is >= -tol.
double loewner_gap(const ComplexMatrix& M1, const ComplexMatrix& M2);

}  // namespace logmean
