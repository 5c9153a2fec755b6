#include "logmean/matrix_core.hpp"

#include <cmath>
#include <string>

#include "logmean/scalar_means.hpp"

namespace logmean {

namespace {

void require_same_dim(const HermitianPSD& A, const HermitianPSD& B, const ComplexMatrix* X,
                      const char* what) {
  if (A.dim() != B.dim() || (X && (X->rows() != A.dim() || X->cols() != A.dim())))
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_pd(const HermitianPSD& A, const char* what) {
  if (!A.is_positive_definite())
    throw SingularMatrixError(std::string(what) + ": matrix is not positive definite");
}

// L(x,y) extended to the PSD spectrum boundary: 0 whenever an argument is 0.
double eig_pair_log_mean(double x, double y) {
  if (x <= 0.0 || y <= 0.0) return 0.0;
  return log_mean(PositivePair(x, y));
}

// Congruences and power reconstructions are Hermitian in exact arithmetic but
// drift by O(eps * cond) in floating point; absorb that before the type gate.
ComplexMatrix hermitian_part(const ComplexMatrix& M) { return 0.5 * (M + M.adjoint().eval()); }

}  // namespace

HermitianPSD::HermitianPSD(const ComplexMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw std::invalid_argument("HermitianPSD: matrix must be square, dim >= 1");
  if (!entries.allFinite()) throw std::invalid_argument("HermitianPSD: entries must be finite");

  const double scale = entries.norm();
  const double herm_dev = (entries - entries.adjoint()).norm();
  if (herm_dev > 1e-12 * scale)
    throw std::invalid_argument("HermitianPSD: matrix is not Hermitian");
  entries_ = 0.5 * (entries + entries.adjoint());

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(entries_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("HermitianPSD: eigendecomposition failed");

  // Eigen sorts ascending; store descending
  const int n = int(entries_.rows());
  eigvals_.resize(n);
  eigvecs_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    eigvals_(i) = es.eigenvalues()(n - 1 - i);
    eigvecs_.col(i) = es.eigenvectors().col(n - 1 - i);
  }

  const double lam_max = eigvals_(0);
  const double clamp_tol = 1e-10 * std::max(lam_max, 0.0);
  if (eigvals_(n - 1) < -clamp_tol)
    throw std::domain_error("HermitianPSD: matrix is not positive semidefinite");
  for (int i = 0; i < n; ++i) eigvals_(i) = std::max(eigvals_(i), 0.0);
}

double frobenius_norm(const ComplexMatrix& M) { return M.norm(); }

HermitianPSD frac_power(const HermitianPSD& A, double p) {
  if (p < 0.0) require_pd(A, "frac_power");
  const int n = A.dim();
  Eigen::VectorXd powered(n);
  for (int i = 0; i < n; ++i) {
    const double lam = A.eigenvalues()(i);
    if (lam == 0.0)
      powered(i) = (p == 0.0) ? 1.0 : 0.0;
    else
      powered(i) = std::pow(lam, p);
  }
  ComplexMatrix M = A.eigenvectors() * powered.asDiagonal() * A.eigenvectors().adjoint();
  return HermitianPSD(hermitian_part(M));
}

ComplexMatrix log_mean_map(const HermitianPSD& A, const HermitianPSD& B, const ComplexMatrix& X) {
  require_same_dim(A, B, &X, "log_mean_map");
  const int n = A.dim();
  ComplexMatrix Y = A.eigenvectors().adjoint() * X * B.eigenvectors();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Y(i, j) *= eig_pair_log_mean(A.eigenvalues()(i), B.eigenvalues()(j));
  return A.eigenvectors() * Y * B.eigenvectors().adjoint();
}

ComplexMatrix power_sum_map(const HermitianPSD& A, const HermitianPSD& B, const ComplexMatrix& X,
                            std::span<const double> exponents, double weight) {
  require_same_dim(A, B, &X, "power_sum_map");
  if (exponents.empty()) throw std::invalid_argument("power_sum_map: exponents must be nonempty");
  for (double e : exponents)
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("power_sum_map: exponents must lie in [0,1]");

  const int n = A.dim();
  ComplexMatrix Y = A.eigenvectors().adjoint() * X * B.eigenvectors();
  for (int i = 0; i < n; ++i) {
    const double alpha = A.eigenvalues()(i);
    for (int j = 0; j < n; ++j) {
      const double beta = B.eigenvalues()(j);
      double s = 0.0;
      for (double e : exponents) s += std::pow(alpha, e) * std::pow(beta, 1.0 - e);
      Y(i, j) *= weight * s;
    }
  }
  return A.eigenvectors() * Y * B.eigenvectors().adjoint();
}

HermitianPSD weighted_geomean(const HermitianPSD& A, const HermitianPSD& B, double nu) {
  require_same_dim(A, B, nullptr, "weighted_geomean");
  if (!(nu >= 0.0 && nu <= 1.0))
    throw std::invalid_argument("weighted_geomean: nu must lie in [0,1]");
  require_pd(A, "weighted_geomean");

  const HermitianPSD Ah = frac_power(A, 0.5);
  const HermitianPSD Aih = frac_power(A, -0.5);
  const HermitianPSD T(hermitian_part(Aih.matrix() * B.matrix() * Aih.matrix()));
  const HermitianPSD Tn = frac_power(T, nu);
  return HermitianPSD(hermitian_part(Ah.matrix() * Tn.matrix() * Ah.matrix()));
}

HermitianPSD integral_geomean(const HermitianPSD& A, const HermitianPSD& B) {
  require_same_dim(A, B, nullptr, "integral_geomean");
  require_pd(A, "integral_geomean");

  const HermitianPSD Ah = frac_power(A, 0.5);
  const HermitianPSD Aih = frac_power(A, -0.5);
  const HermitianPSD T(hermitian_part(Aih.matrix() * B.matrix() * Aih.matrix()));

  const int n = T.dim();
  Eigen::VectorXd mapped(n);
  for (int i = 0; i < n; ++i) mapped(i) = eig_pair_log_mean(T.eigenvalues()(i), 1.0);
  ComplexMatrix fT = T.eigenvectors() * mapped.asDiagonal() * T.eigenvectors().adjoint();
  return HermitianPSD(hermitian_part(Ah.matrix() * fT * Ah.matrix()));
}

ComplexMatrix mean_combination(const HermitianPSD& A, const HermitianPSD& B,
                               std::span<const MeanTerm> terms) {
  require_same_dim(A, B, nullptr, "mean_combination");
  const int n = A.dim();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (const MeanTerm& term : terms) {
    switch (term.kind) {
      case MeanTerm::Kind::Arithmetic:
        acc += term.coeff * 0.5 * (A.matrix() + B.matrix());
        break;
      case MeanTerm::Kind::WeightedGeo:
        acc += term.coeff * weighted_geomean(A, B, term.nu).matrix();
        break;
      case MeanTerm::Kind::InverseBridge: {
        const HermitianPSD M = weighted_geomean(A, B, term.nu);
        require_pd(M, "mean_combination (inverse bridge)");
        const HermitianPSD S(hermitian_part(frac_power(M, -1.0).matrix() + frac_power(A, -1.0).matrix()));
        acc += term.coeff * 2.0 * frac_power(S, -1.0).matrix();
        break;
      }
    }
  }
  return 0.5 * (acc + acc.adjoint().eval());
}

double loewner_gap(const ComplexMatrix& M1, const ComplexMatrix& M2) {
  if (M1.rows() != M2.rows() || M1.cols() != M2.cols() || M1.rows() != M1.cols())
    throw std::invalid_argument("loewner_gap: dimension mismatch");
  ComplexMatrix D = M2 - M1;
  D = 0.5 * (D + D.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(D, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("loewner_gap: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace logmean
