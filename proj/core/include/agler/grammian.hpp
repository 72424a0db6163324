#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agler/kernels.hpp"
#include "agler/linalg.hpp"
#include "agler/test_functions.hpp"

namespace agler {

/// How a "for every admissible kernel" quantity was obtained.
enum class RouteKind { Exact, Sampled, Grid };

struct Route {
  RouteKind kind = RouteKind::Sampled;
  std::size_t grid_size = 0;  // Grid only

  static Route exact() { return {RouteKind::Exact, 0}; }
  static Route sampled() { return {RouteKind::Sampled, 0}; }
  static Route grid(std::size_t m) { return {RouteKind::Grid, m}; }
  /// "EXACT", "SAMPLED", "GRID(64)".
  std::string label() const;
};

/// Route for Grammian bounds: exact on the disc with {z} (Szego is extremal), sampled otherwise.
Route cone_route(const TestFunctionFamily& family);

/// lambda_min at or below this counts as "not bounded below" (N = infinity).
inline constexpr double kLowerBoundFlagTolerance = 1e-14;

struct GrammianDiagnostics {
  HermitianMatrix G = HermitianMatrix::identity(1);
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  double N_estimate = 1.0;  // 1/lambda_min, +infinity when lambda_min <= flag tolerance
  double M_estimate = 1.0;  // lambda_max
  KernelProvenance kernel_provenance;

  bool bounded_below() const noexcept;
};

/// G(i, j) = gram(i, j) / sqrt(gram(i, i) gram(j, j)).
GrammianDiagnostics normalized_grammian(const KernelSample& k);

struct ConeSampleRow {
  std::size_t sample = 0;  // 0 is the base kernel
  std::string provenance;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

struct ConeBounds {
  GrammianDiagnostics base;
  double lambda_min = 1.0;  // min over base and samples
  double lambda_max = 1.0;  // max over base and samples
  bool min_at_base = true;
  bool max_at_base = true;
  Route route;
  std::vector<ConeSampleRow> samples;

  double N_estimate() const;
  double M_estimate() const { return lambda_max; }
};

/**
 * Grammian bounds over the admissible cone: the base kernel of the domain plus
 * n_samples kernels base o G_g with seeded random PSD G_g. Reduction is
 * index-ordered, so the result is bit-stable.
 */
ConeBounds bounds_over_cone(const PointConfig& points, const TestFunctionFamily& family,
                            std::size_t n_samples, std::uint64_t seed);

struct SchurReductionResult {
  bool passed = true;
  double worst_margin = 0.0;
  std::size_t trials = 0;
  std::optional<std::size_t> violating_trial;
};

/// For random PSD G_g checks that c I - G and G - d I stay PSD after scaling
/// the base by G_g, with c, d the extreme eigenvalues of the base Grammian.
SchurReductionResult schur_reduction_check(const KernelSample& base, std::size_t n_trials,
                                           std::uint64_t seed, double tol = 1e-9);

struct TrendRow {
  std::size_t n = 0;
  double lambda_min = 1.0;
  double lambda_max = 1.0;
};

/// Extreme Grammian eigenvalues of the base kernel on every prefix 1..depth.
std::vector<TrendRow> truncation_trend(const PointConfig& sequence, const TestFunctionFamily& family,
                                       std::size_t depth);

}  // namespace agler
