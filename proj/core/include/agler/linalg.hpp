#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace agler {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance on |H(i,j) - conj(H(j,i))|, scaled by max(1, max|H|).
inline constexpr double kHermitianTolerance = 1e-12;

/// Relative factor of the default PSD tolerance: tol = 1e-9 * max(1, max diag).
inline constexpr double kPsdRelativeTolerance = 1e-9;

/**
 * Dense complex Hermitian matrix.
 *
 * Construction validates the Hermitian invariant. Inputs that are Hermitian up
 * to kHermitianTolerance are replaced by (H + H*)/2 so every stored value is
 * exactly Hermitian; anything further away throws NonHermitianInput.
 */
class HermitianMatrix {
 public:
  static HermitianMatrix from(ComplexMatrix m, double tol = kHermitianTolerance);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix all_ones(Index n);

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double max_diagonal() const;
  double max_abs_entry() const;

  /// Principal submatrix on the leading `n` indices.
  HermitianMatrix leading(Index n) const;

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

struct SpectralReport {
  double min_eig = 0.0;
  double max_eig = 0.0;
  ComplexVector witness_vector;  // unit eigenvector for min_eig
};

SpectralReport min_max_eigenvalues(const HermitianMatrix& h);

/// All eigenvalues in ascending order.
RealVector eigenvalues(const HermitianMatrix& h);

double default_psd_tolerance(const HermitianMatrix& h);

struct PsdCheck {
  bool psd = false;
  double tol = 0.0;
  SpectralReport report;
};

PsdCheck is_psd(const HermitianMatrix& h, double tol);
PsdCheck is_psd(const HermitianMatrix& h);

/// Entrywise (Hadamard) product.
HermitianMatrix schur_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped to 0).
HermitianMatrix project_psd(const HermitianMatrix& h);

struct LeastSquaresResult {
  ComplexVector x;
  double residual_norm = 0.0;
  Index rank = 0;
  bool rank_deficient = false;  // RankDeficiencyWarning, never fatal
};

/// Minimum-norm minimiser of ||A x - b||.
LeastSquaresResult solve_least_squares(const ComplexMatrix& a, const ComplexVector& b);

}  // namespace agler
