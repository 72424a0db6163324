#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agler/grammian.hpp"
#include "agler/kernels.hpp"
#include "agler/linalg.hpp"
#include "agler/test_functions.hpp"

namespace agler {

/// Find phi with ||phi||_Psi <= bound and phi(w_j) = x_j.
class InterpolationProblem {
 public:
  static InterpolationProblem make(PointConfig points, ComplexVector targets, double bound,
                                   TestFunctionFamily family);

  const PointConfig& points() const noexcept { return points_; }
  const ComplexVector& targets() const noexcept { return targets_; }
  double bound() const noexcept { return bound_; }
  const TestFunctionFamily& family() const noexcept { return family_; }
  std::size_t size() const noexcept { return points_.size(); }

  InterpolationProblem with_bound(double bound) const;

  /// C^2 J - x x*.
  HermitianMatrix data_matrix() const;
  /// D_t for every descriptor, in family order.
  std::vector<HermitianMatrix> masks() const;

 private:
  InterpolationProblem(PointConfig points, ComplexVector targets, double bound,
                       TestFunctionFamily family)
      : points_(std::move(points)), targets_(std::move(targets)), bound_(bound),
        family_(std::move(family)) {}
  PointConfig points_;
  ComplexVector targets_;
  double bound_;
  TestFunctionFamily family_;
};

/// PSD slices Gamma_t with C^2 J - x x* = sum_t Gamma_t o D_t.
struct AglerCertificate {
  std::vector<HermitianMatrix> gammas;
  double residual = 0.0;  // max |C^2 J - x x* - sum_t Gamma_t o D_t|
};

/**
 * A finite admissible kernel W (trace 1, W and every W o D_t PSD) at which the
 * Pick condition fails: violation = -sum_ij (C^2 - x_i conj(x_j)) W(i, j) > 0.
 */
struct DualWitness {
  HermitianMatrix W = HermitianMatrix::identity(1);
  double violation = 0.0;
};

struct IndeterminateDiagnostics {
  std::string reason;
  double primal_residual = 0.0;        // best scaled residual of a PSD candidate
  double primal_min_eigenvalue = 0.0;  // best scaled slice eigenvalue of an affine candidate
  double best_violation = 0.0;         // best dual violation found
};

enum class FeasibilityStatus { Feasible, Infeasible, Indeterminate };

std::string to_string(FeasibilityStatus status);

struct FeasibilityResult {
  std::variant<AglerCertificate, DualWitness, IndeterminateDiagnostics> outcome;
  std::size_t iterations = 0;
  std::chrono::nanoseconds wall_time{0};
  Route route;

  FeasibilityStatus status() const noexcept;
  bool feasible() const noexcept { return status() == FeasibilityStatus::Feasible; }
  bool infeasible() const noexcept { return status() == FeasibilityStatus::Infeasible; }
  const AglerCertificate* certificate() const { return std::get_if<AglerCertificate>(&outcome); }
  const DualWitness* witness() const { return std::get_if<DualWitness>(&outcome); }
  const IndeterminateDiagnostics* diagnostics() const {
    return std::get_if<IndeterminateDiagnostics>(&outcome);
  }
};

struct SolverOptions {
  std::size_t max_iterations = 50000;
  /// Certificate residual bound, relative to max(1, C^2).
  double residual_target = 1e-9;
  /// A dual witness must beat this violation.
  double violation_threshold = 1e-8;
  /// Iterations without progress in the affine iterate before giving up early.
  std::size_t stall_window = 200;
};

/// (C^2 - x_i conj(x_j)) k(w_i, w_j).
HermitianMatrix pick_matrix(const InterpolationProblem& problem, const KernelSample& k);

/**
 * Decides the finite interpolation problem through its Agler decomposition.
 *
 * Primal search: Dykstra alternating projections between the affine set
 * {sum_t Gamma_t o D_t = C^2 J - x x*} and the product of PSD cones. Dual
 * search: the displacement between the affine iterate and its PSD projection
 * converges to the minimal gap between the two sets; its least-squares
 * preimage is a kernel W, repaired by an identity shift and checked as a
 * DualWitness. Every returned certificate has passed independent verification.
 */
FeasibilityResult agler_feasibility(const InterpolationProblem& problem,
                                    const SolverOptions& options = {});

struct CertificateCheck {
  bool passed = false;
  double residual = 0.0;                 // max-abs residual
  double min_slice_eigenvalue = 0.0;     // raw minimum over slices
  double scaled_min_eigenvalue = 0.0;    // min over t of lambda_min(Gamma_t) / max(1, max diag Gamma_t)
};

/// Recomputes residual and slice spectra with linalg only. Residual must be
/// <= tol * max(1, C^2) and every slice PSD at the default relative tolerance.
CertificateCheck verify_certificate(const AglerCertificate& cert, const InterpolationProblem& problem,
                                    double tol = 1e-8);

struct WitnessCheck {
  bool passed = false;
  double trace = 0.0;
  double min_eigenvalue = 0.0;         // of W
  double min_masked_eigenvalue = 0.0;  // min over t of lambda_min(W o D_t)
  double violation = 0.0;              // recomputed
};

WitnessCheck verify_witness(const DualWitness& witness, const InterpolationProblem& problem,
                            double violation_threshold = 1e-8, double psd_tol = 1e-9);

enum class MinimalNormStatus { Converged, IndeterminateBracket, Unbounded };

std::string to_string(MinimalNormStatus status);

struct MinimalNormResult {
  MinimalNormStatus status = MinimalNormStatus::Converged;
  double value = 0.0;  // certified-feasible upper end of the final bracket
  double lower = 0.0;  // largest bound certified infeasible (or the sup-norm bound)
  double upper = 0.0;  // smallest bound certified feasible (+inf when none)
  std::size_t solves = 0;
  Route route;
};

inline constexpr double kDefaultBoundCap = 1e8;

/**
 * Bisection on C between max|x_j| (since ||phi||_inf <= ||phi||_Psi) and an
 * adaptively doubled upper end. Every bracket end is backed by a certificate.
 */
MinimalNormResult minimal_norm(const PointConfig& points, const ComplexVector& targets,
                               const TestFunctionFamily& family, double tol = 1e-7,
                               const SolverOptions& options = {}, double bound_cap = kDefaultBoundCap);

struct KernelMargin {
  std::string provenance;
  double min_eigenvalue = 0.0;
};

/// Min eigenvalue of the Pick matrix at each supplied kernel; a negative value
/// below tolerance is a proof of infeasibility at the problem's bound.
std::vector<KernelMargin> kernel_necessary_check(const InterpolationProblem& problem,
                                                 std::span<const KernelSample> samples);

}  // namespace agler
