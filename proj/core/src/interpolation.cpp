#include "agler/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "agler/error.hpp"

namespace agler {

namespace {

Route problem_route(const TestFunctionFamily& family) {
  return family.is_grid() ? Route::grid(family.grid_size()) : Route::exact();
}

// sum_ij A(i, j) B(i, j): the pairing under which sum_t Gamma_t o D_t against W
// reduces to sums of entries of Schur products of PSD matrices.
double bilinear_pairing(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b).sum().real();
}

double scaled_min_eigenvalue(const HermitianMatrix& h) {
  return min_max_eigenvalues(h).min_eig / std::max(1.0, h.max_diagonal());
}

}  // namespace

std::string to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

std::string to_string(MinimalNormStatus status) {
  switch (status) {
    case MinimalNormStatus::Converged: return "Converged";
    case MinimalNormStatus::IndeterminateBracket: return "IndeterminateBracket";
    case MinimalNormStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

FeasibilityStatus FeasibilityResult::status() const noexcept {
  switch (outcome.index()) {
    case 0: return FeasibilityStatus::Feasible;
    case 1: return FeasibilityStatus::Infeasible;
    default: return FeasibilityStatus::Indeterminate;
  }
}

InterpolationProblem InterpolationProblem::make(PointConfig points, ComplexVector targets,
                                                double bound, TestFunctionFamily family) {
  if (points.size() == 0) throw Error(ErrorCode::SpecError, "interpolation needs at least one point");
  if (static_cast<std::size_t>(targets.size()) != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one target per point is required");
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::SpecError, "bound C must be positive and finite");
  }
  if (!(points.domain() == family.domain())) {
    throw Error(ErrorCode::DomainMismatch, "points and family live on different domains");
  }
  require_distinct(points);
  return InterpolationProblem(std::move(points), std::move(targets), bound, std::move(family));
}

InterpolationProblem InterpolationProblem::with_bound(double bound) const {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::SpecError, "bound C must be positive and finite");
  }
  return InterpolationProblem(points_, targets_, bound, family_);
}

HermitianMatrix InterpolationProblem::data_matrix() const {
  const Index n = targets_.size();
  const double c2 = bound_ * bound_;
  ComplexMatrix p(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) p(i, j) = c2 - targets_(i) * std::conj(targets_(j));
  }
  return HermitianMatrix::from(std::move(p));
}

std::vector<HermitianMatrix> InterpolationProblem::masks() const {
  std::vector<HermitianMatrix> out;
  out.reserve(family_.size());
  for (std::size_t t = 0; t < family_.size(); ++t) out.push_back(test_function_mask(family_, t, points_));
  return out;
}

HermitianMatrix pick_matrix(const InterpolationProblem& problem, const KernelSample& k) {
  if (!(k.points() == problem.points())) {
    throw Error(ErrorCode::PointMismatch, "kernel sample lives on a different point list");
  }
  return schur_product(problem.data_matrix(), k.gram());
}

CertificateCheck verify_certificate(const AglerCertificate& cert, const InterpolationProblem& problem,
                                    double tol) {
  if (cert.gammas.size() != problem.family().size()) {
    throw Error(ErrorCode::DimensionMismatch, "one slice per test function is required");
  }
  const auto n = static_cast<Index>(problem.size());
  ComplexMatrix residual = problem.data_matrix().matrix();
  CertificateCheck check;
  check.min_slice_eigenvalue = std::numeric_limits<double>::infinity();
  check.scaled_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < cert.gammas.size(); ++t) {
    const HermitianMatrix& gamma = cert.gammas[t];
    if (gamma.dim() != n) throw Error(ErrorCode::DimensionMismatch, "slice dimension != point count");
    residual -= gamma.matrix().cwiseProduct(test_function_mask(problem.family(), t, problem.points()).matrix());
    const double lmin = min_max_eigenvalues(gamma).min_eig;
    check.min_slice_eigenvalue = std::min(check.min_slice_eigenvalue, lmin);
    check.scaled_min_eigenvalue =
        std::min(check.scaled_min_eigenvalue, lmin / std::max(1.0, gamma.max_diagonal()));
  }
  check.residual = residual.cwiseAbs().maxCoeff();
  const double c2 = problem.bound() * problem.bound();
  check.passed = check.residual <= tol * std::max(1.0, c2) &&
                 check.scaled_min_eigenvalue >= -kPsdRelativeTolerance;
  return check;
}

WitnessCheck verify_witness(const DualWitness& witness, const InterpolationProblem& problem,
                            double violation_threshold, double psd_tol) {
  const auto n = static_cast<Index>(problem.size());
  if (witness.W.dim() != n) throw Error(ErrorCode::DimensionMismatch, "witness dimension != point count");
  WitnessCheck check;
  check.trace = witness.W.matrix().trace().real();
  check.min_eigenvalue = min_max_eigenvalues(witness.W).min_eig;
  check.min_masked_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < problem.family().size(); ++t) {
    const HermitianMatrix masked =
        schur_product(witness.W, test_function_mask(problem.family(), t, problem.points()));
    check.min_masked_eigenvalue = std::min(check.min_masked_eigenvalue, min_max_eigenvalues(masked).min_eig);
  }
  check.violation = -bilinear_pairing(problem.data_matrix().matrix(), witness.W.matrix());
  check.passed = std::abs(check.trace - 1.0) <= 1e-9 && check.min_eigenvalue >= -psd_tol &&
                 check.min_masked_eigenvalue >= -psd_tol && check.violation > violation_threshold;
  return check;
}

namespace {

// Iterates of the Dykstra scheme live in a copy of the problem scaled by
// 1 / max(1, C^2); certificates are scaled back before verification.
class AglerSolver {
 public:
  AglerSolver(const InterpolationProblem& problem, const SolverOptions& options)
      : problem_(problem), options_(options), n_(static_cast<Index>(problem.size())),
        slices_(problem.family().size()) {
    const double c2 = problem.bound() * problem.bound();
    scale_ = std::max(1.0, c2);
    data_ = problem.data_matrix().matrix();
    data_scaled_ = data_ / scale_;
    normal_ = Eigen::MatrixXd::Zero(n_, n_);
    masks_.reserve(slices_);
    min_mask_diag_.reserve(slices_);
    for (const HermitianMatrix& d : problem.masks()) {
      masks_.push_back(d.matrix());
      normal_ += d.matrix().cwiseAbs2();
      min_mask_diag_.push_back(d.matrix().diagonal().real().minCoeff());
    }
  }

  FeasibilityResult run() {
    const auto start = std::chrono::steady_clock::now();
    FeasibilityResult result;
    result.route = problem_route(problem_.family());
    result.outcome = search(result.iterations);
    result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
  }

 private:
  using Slices = std::vector<ComplexMatrix>;

  std::variant<AglerCertificate, DualWitness, IndeterminateDiagnostics> search(std::size_t& iterations) {
    if (auto w = diagonal_witness()) return *w;
    if (slices_ == 1) {
      iterations = 1;
      return single_slice();
    }

    Slices x(slices_, ComplexMatrix::Zero(n_, n_));
    Slices q(slices_, ComplexMatrix::Zero(n_, n_));
    Slices y(slices_);
    Slices previous_y;
    IndeterminateDiagnostics diag;
    diag.primal_residual = std::numeric_limits<double>::infinity();
    diag.primal_min_eigenvalue = -std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;

    for (std::size_t k = 1; k <= options_.max_iterations; ++k) {
      iterations = k;
      // Affine step. The normal operator of Gamma -> sum_t Gamma_t o D_t is
      // entrywise multiplication by sum_t |D_t|^2, so the least-squares
      // correction is an entrywise quotient.
      ComplexMatrix r = data_scaled_;
      for (std::size_t t = 0; t < slices_; ++t) r -= x[t].cwiseProduct(masks_[t]);
      const double cone_residual = r.cwiseAbs().maxCoeff();
      if (k > 1 && cone_residual <= 0.5 * options_.residual_target) {
        if (auto cert = try_certificate(x)) return *cert;
      }
      diag.primal_residual = std::min(diag.primal_residual, cone_residual);
      const ComplexMatrix lagrange = r.cwiseQuotient(normal_.cast<Complex>());
      for (std::size_t t = 0; t < slices_; ++t) {
        y[t] = x[t] + masks_[t].conjugate().cwiseProduct(lagrange);
        y[t] = (y[t] + y[t].adjoint()) * 0.5;
      }

      // Spectra of the affine iterate drive both searches.
      Slices negative(slices_);
      double worst_scaled = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < slices_; ++t) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(y[t]);
        const RealVector& ev = es.eigenvalues();
        const double diag_max = std::max(1.0 / scale_, y[t].diagonal().real().maxCoeff());
        worst_scaled = std::min(worst_scaled, ev(0) / diag_max);
        const RealVector neg = (-ev).cwiseMax(0.0);
        negative[t] = es.eigenvectors() * neg.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
      }
      diag.primal_min_eigenvalue = std::max(diag.primal_min_eigenvalue, worst_scaled);
      if (worst_scaled >= -0.5 * kPsdRelativeTolerance) {
        if (auto cert = try_certificate(y)) return *cert;
      }
      if (worst_scaled < 0.0 && (k <= 32 || k % 8 == 0)) {
        double violation = 0.0;
        if (auto w = try_witness(negative, violation)) return *w;
        diag.best_violation = std::max(diag.best_violation, violation);
      }

      // Cone step with Dykstra correction.
      for (std::size_t t = 0; t < slices_; ++t) {
        const ComplexMatrix z = y[t] + q[t];
        x[t] = project_psd(HermitianMatrix::from(z, 1e-8)).matrix();
        q[t] = z - x[t];
      }
      // Under the correction it is x - y, not neg(y), that tracks the gap.
      if (worst_scaled < 0.0 && (k <= 32 || k % 8 == 0)) {
        Slices displacement(slices_);
        for (std::size_t t = 0; t < slices_; ++t) displacement[t] = x[t] - y[t];
        double violation = 0.0;
        if (auto w = try_witness(displacement, violation)) return *w;
        diag.best_violation = std::max(diag.best_violation, violation);
      }

      if (!previous_y.empty()) {
        double change = 0.0;
        for (std::size_t t = 0; t < slices_; ++t) {
          change = std::max(change, (y[t] - previous_y[t]).cwiseAbs().maxCoeff());
        }
        stalled = change <= 1e-15 ? stalled + 1 : 0;
        if (stalled >= options_.stall_window) {
          diag.reason = "stalled: affine iterate stopped moving without a certificate";
          return diag;
        }
      }
      previous_y = y;
    }
    diag.reason = "iteration budget exhausted";
    return diag;
  }

  // |x_i| > C already rules out interpolation: W = e_i e_i^T is admissible.
  std::optional<DualWitness> diagonal_witness() const {
    Index worst = 0;
    const double lowest = data_.diagonal().real().minCoeff(&worst);
    if (-lowest <= options_.violation_threshold) return std::nullopt;
    ComplexMatrix w = ComplexMatrix::Zero(n_, n_);
    w(worst, worst) = 1.0;
    DualWitness witness{HermitianMatrix::from(std::move(w)), -lowest};
    if (!verify_witness(witness, problem_, options_.violation_threshold).passed) return std::nullopt;
    return witness;
  }

  // With one descriptor the decomposition is unique: Gamma = P ./ D, and
  // 1 ./ D is the Szego-type kernel 1 / (1 - a_i conj(a_j)) of the images.
  // A negative direction v of Gamma gives W = (1 ./ D) o conj(v) v^T, whose
  // mask product conj(v) v^T is PSD and whose pairing with P is v* Gamma v.
  std::variant<AglerCertificate, DualWitness, IndeterminateDiagnostics> single_slice() const {
    const ComplexMatrix inverse_mask = masks_[0].cwiseInverse();
    const HermitianMatrix gamma = HermitianMatrix::from(data_.cwiseProduct(inverse_mask), 1e-8);
    AglerCertificate cert{{gamma}, 0.0};
    const CertificateCheck check = verify_certificate(cert, problem_, options_.residual_target);
    if (check.passed) {
      cert.residual = check.residual;
      return cert;
    }
    const SpectralReport spec = min_max_eigenvalues(gamma);
    const ComplexVector& v = spec.witness_vector;
    ComplexMatrix w = inverse_mask.cwiseProduct(v.conjugate() * v.transpose());
    w /= w.trace().real();
    DualWitness witness{HermitianMatrix::from(std::move(w), 1e-8), 0.0};
    const WitnessCheck wcheck = verify_witness(witness, problem_, options_.violation_threshold);
    if (wcheck.passed) {
      witness.violation = wcheck.violation;
      return witness;
    }
    IndeterminateDiagnostics diag;
    diag.reason = "boundary instance: neither the unique slice nor its negative direction certifies";
    diag.primal_residual = check.residual;
    diag.primal_min_eigenvalue = check.scaled_min_eigenvalue;
    diag.best_violation = wcheck.violation;
    return diag;
  }

  std::optional<AglerCertificate> try_certificate(const Slices& scaled) const {
    AglerCertificate cert;
    cert.gammas.reserve(slices_);
    for (const ComplexMatrix& g : scaled) cert.gammas.push_back(HermitianMatrix::from(g * scale_, 1e-8));
    const CertificateCheck check = verify_certificate(cert, problem_, options_.residual_target);
    if (!check.passed) return std::nullopt;
    cert.residual = check.residual;
    return cert;
  }

  // The gap y - P_K(y) = -neg(y) lies (asymptotically) in the range of the
  // adjoint map Y -> (conj(D_t) o Y)_t; its least-squares preimage Y gives
  // W = -conj(Y) with W o D_t = conj(neg_t) >= 0 up to the fitting error.
  std::optional<DualWitness> try_witness(const Slices& negative, double& violation) const {
    ComplexMatrix fit = ComplexMatrix::Zero(n_, n_);
    for (std::size_t t = 0; t < slices_; ++t) fit -= masks_[t].cwiseProduct(negative[t]);
    ComplexMatrix w = -fit.cwiseQuotient(normal_.cast<Complex>()).conjugate();
    w = (w + w.adjoint()) * 0.5;
    violation = -bilinear_pairing(data_, w);
    if (!(violation > 0.0)) return std::nullopt;

    // I o D_t = diag(1 - |psi_t(w_i)|^2), so adding delta I lifts every
    // W o D_t by at least delta * min_i (1 - |psi_t(w_i)|^2).
    double shift = 0.0;
    const HermitianMatrix wh = HermitianMatrix::from(w, 1e-8);
    shift = std::max(shift, -min_max_eigenvalues(wh).min_eig);
    for (std::size_t t = 0; t < slices_; ++t) {
      const HermitianMatrix masked = HermitianMatrix::from(w.cwiseProduct(masks_[t]), 1e-8);
      const double mu = min_max_eigenvalues(masked).min_eig;
      if (mu < 0.0) shift = std::max(shift, -mu / min_mask_diag_[t]);
    }
    if (shift > 0.0) w += ComplexMatrix::Identity(n_, n_) * (shift * (1.0 + 1e-9) + 1e-300);
    const double trace = w.trace().real();
    if (!(trace > 0.0)) return std::nullopt;
    w /= trace;
    violation = -bilinear_pairing(data_, w);
    if (!(violation > options_.violation_threshold)) return std::nullopt;
    DualWitness witness{HermitianMatrix::from(std::move(w), 1e-8), 0.0};
    const WitnessCheck check = verify_witness(witness, problem_, options_.violation_threshold);
    if (!check.passed) return std::nullopt;
    witness.violation = check.violation;
    return witness;
  }

  const InterpolationProblem& problem_;
  SolverOptions options_;
  Index n_;
  std::size_t slices_;
  double scale_ = 1.0;
  ComplexMatrix data_;
  ComplexMatrix data_scaled_;
  Eigen::MatrixXd normal_;
  std::vector<ComplexMatrix> masks_;
  std::vector<double> min_mask_diag_;
};

}  // namespace

FeasibilityResult agler_feasibility(const InterpolationProblem& problem, const SolverOptions& options) {
  return AglerSolver(problem, options).run();
}

MinimalNormResult minimal_norm(const PointConfig& points, const ComplexVector& targets,
                               const TestFunctionFamily& family, double tol,
                               const SolverOptions& options, double bound_cap) {
  if (!(tol > 0.0)) throw Error(ErrorCode::SpecError, "minimal_norm tolerance must be positive");
  if (static_cast<std::size_t>(targets.size()) != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one target per point is required");
  }
  MinimalNormResult result;
  result.route = problem_route(family);
  const double c_lo = targets.cwiseAbs().maxCoeff();
  if (c_lo == 0.0) {
    result.value = result.lower = result.upper = 0.0;
    return result;
  }
  const InterpolationProblem base = InterpolationProblem::make(points, targets, c_lo, family);
  auto decide = [&](double c) {
    ++result.solves;
    return agler_feasibility(base.with_bound(c), options).status();
  };

  double lo = c_lo;
  double hi = std::numeric_limits<double>::infinity();
  if (decide(c_lo) == FeasibilityStatus::Feasible) {
    result.value = result.lower = result.upper = c_lo;
    return result;
  }
  for (double c = std::max(2.0 * c_lo, c_lo + tol); c <= bound_cap; c *= 2.0) {
    const FeasibilityStatus s = decide(c);
    if (s == FeasibilityStatus::Feasible) {
      hi = c;
      break;
    }
    if (s == FeasibilityStatus::Infeasible) lo = c;
  }
  if (!std::isfinite(hi)) {
    result.status = MinimalNormStatus::Unbounded;
    result.lower = lo;
    result.upper = result.value = hi;
    return result;
  }

  auto resolved = [&](double a, double b) {
    return b - a <= tol || b - a <= 8.0 * std::numeric_limits<double>::epsilon() * b;
  };
  while (!resolved(lo, hi)) {
    const double mid = 0.5 * (lo + hi);
    const FeasibilityStatus s = decide(mid);
    if (s == FeasibilityStatus::Feasible) {
      hi = mid;
    } else if (s == FeasibilityStatus::Infeasible) {
      lo = mid;
    } else {
      // Uncertified band around mid: tighten each end separately.
      double band_hi = mid;
      while (!resolved(band_hi, hi)) {
        const double m = 0.5 * (band_hi + hi);
        (decide(m) == FeasibilityStatus::Feasible ? hi : band_hi) = m;
      }
      double band_lo = mid;
      while (!resolved(lo, band_lo)) {
        const double m = 0.5 * (lo + band_lo);
        (decide(m) == FeasibilityStatus::Infeasible ? lo : band_lo) = m;
      }
      break;
    }
  }
  result.lower = lo;
  result.upper = result.value = hi;
  result.status = resolved(lo, hi) ? MinimalNormStatus::Converged : MinimalNormStatus::IndeterminateBracket;
  return result;
}

std::vector<KernelMargin> kernel_necessary_check(const InterpolationProblem& problem,
                                                 std::span<const KernelSample> samples) {
  std::vector<KernelMargin> out;
  out.reserve(samples.size());
  for (const KernelSample& k : samples) {
    out.push_back({k.provenance().label(), min_max_eigenvalues(pick_matrix(problem, k)).min_eig});
  }
  return out;
}

}  // namespace agler
