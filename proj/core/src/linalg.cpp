#include "agler/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "agler/error.hpp"

namespace agler {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::NotInDisc: return "NotInDisc";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::AdmissibilityFailure: return "AdmissibilityFailure";
    case ErrorCode::DegenerateDiagonal: return "DegenerateDiagonal";
    case ErrorCode::PointMismatch: return "PointMismatch";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::SpecError: return "SpecError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

HermitianMatrix HermitianMatrix::from(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square with dim >= 1");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(defect <= tol * scale)) {
    throw Error(ErrorCode::NonHermitianInput,
                "max |H - H*| = " + std::to_string(defect) + " exceeds tolerance");
  }
  ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::all_ones(Index n) {
  return HermitianMatrix(ComplexMatrix::Ones(n, n));
}

double HermitianMatrix::max_diagonal() const {
  return m_.diagonal().real().maxCoeff();
}

double HermitianMatrix::max_abs_entry() const { return m_.cwiseAbs().maxCoeff(); }

HermitianMatrix HermitianMatrix::leading(Index n) const {
  if (n < 1 || n > dim()) {
    throw Error(ErrorCode::DimensionMismatch, "leading block size out of range");
  }
  return HermitianMatrix(m_.topLeftCorner(n, n));
}

namespace {

// Fix the phase so the largest-modulus component is real and positive; the
// witness is then a deterministic function of the input.
ComplexVector canonical_phase(ComplexVector v) {
  Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

}  // namespace

SpectralReport min_max_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  const RealVector& ev = solver.eigenvalues();
  SpectralReport report;
  report.min_eig = ev(0);
  report.max_eig = ev(ev.size() - 1);
  report.witness_vector = canonical_phase(solver.eigenvectors().col(0));
  return report;
}

RealVector eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double default_psd_tolerance(const HermitianMatrix& h) {
  return kPsdRelativeTolerance * std::max(1.0, h.max_diagonal());
}

PsdCheck is_psd(const HermitianMatrix& h, double tol) {
  PsdCheck check;
  check.tol = tol;
  check.report = min_max_eigenvalues(h);
  check.psd = check.report.min_eig >= -tol;
  return check;
}

PsdCheck is_psd(const HermitianMatrix& h) { return is_psd(h, default_psd_tolerance(h)); }

HermitianMatrix schur_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "schur_product operands differ in dimension");
  }
  return HermitianMatrix::from(a.matrix().cwiseProduct(b.matrix()));
}

HermitianMatrix project_psd(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  const RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
  const ComplexMatrix& q = solver.eigenvectors();
  return HermitianMatrix::from(q * clipped.cast<Complex>().asDiagonal() * q.adjoint());
}

LeastSquaresResult solve_least_squares(const ComplexMatrix& a, const ComplexVector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "least squares: rows(A) != size(b)");
  }
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  LeastSquaresResult result;
  result.x = cod.solve(b);
  result.rank = cod.rank();
  result.rank_deficient = result.rank < std::min(a.rows(), a.cols());
  result.residual_norm = (a * result.x - b).norm();
  return result;
}

}  // namespace agler
