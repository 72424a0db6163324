#include "agler/grammian.hpp"

#include <cmath>
#include <limits>

#include "agler/error.hpp"
#include "agler/random.hpp"

namespace agler {

std::string Route::label() const {
  switch (kind) {
    case RouteKind::Exact: return "EXACT";
    case RouteKind::Sampled: return "SAMPLED";
    case RouteKind::Grid: return "GRID(" + std::to_string(grid_size) + ")";
  }
  return "UNKNOWN";
}

Route cone_route(const TestFunctionFamily& family) {
  const bool disc_z = family.domain().kind() == DomainKind::Disc && family.size() == 1 &&
                      std::holds_alternative<Coordinate>(family.descriptor(0));
  return disc_z ? Route::exact() : Route::sampled();
}

bool GrammianDiagnostics::bounded_below() const noexcept {
  return lambda_min > kLowerBoundFlagTolerance;
}

namespace {

double inverse_or_inf(double lambda_min) {
  return lambda_min > kLowerBoundFlagTolerance ? 1.0 / lambda_min
                                               : std::numeric_limits<double>::infinity();
}

}  // namespace

GrammianDiagnostics normalized_grammian(const KernelSample& k) {
  const ComplexMatrix& gram = k.gram().matrix();
  const Index n = gram.rows();
  RealVector inv_norm(n);
  for (Index i = 0; i < n; ++i) {
    const double d = gram(i, i).real();
    if (d <= 1e-14) throw Error(ErrorCode::DegenerateDiagonal, "kernel diagonal <= 1e-14");
    inv_norm(i) = 1.0 / std::sqrt(d);
  }
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = gram(i, j) * (inv_norm(i) * inv_norm(j));
    g(i, i) = 1.0;
  }
  GrammianDiagnostics diag;
  diag.G = HermitianMatrix::from(std::move(g));
  const SpectralReport spec = min_max_eigenvalues(diag.G);
  diag.lambda_min = spec.min_eig;
  diag.lambda_max = spec.max_eig;
  diag.N_estimate = inverse_or_inf(spec.min_eig);
  diag.M_estimate = spec.max_eig;
  diag.kernel_provenance = k.provenance();
  return diag;
}

double ConeBounds::N_estimate() const { return inverse_or_inf(lambda_min); }

ConeBounds bounds_over_cone(const PointConfig& points, const TestFunctionFamily& family,
                            std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::SpecError, "bounds_over_cone needs n_samples >= 1");
  const KernelSample base = base_kernel(points, family);
  ConeBounds bounds;
  bounds.base = normalized_grammian(base);
  bounds.route = cone_route(family);
  bounds.lambda_min = bounds.base.lambda_min;
  bounds.lambda_max = bounds.base.lambda_max;
  bounds.samples.push_back({0, base.provenance().label(), bounds.base.lambda_min,
                            bounds.base.lambda_max});
  for (std::size_t s = 1; s <= n_samples; ++s) {
    const std::uint64_t sample_seed = mix_seed(seed, s);
    const GrammianDiagnostics d = normalized_grammian(scale_by_random_psd(base, sample_seed));
    bounds.samples.push_back({s, d.kernel_provenance.label(), d.lambda_min, d.lambda_max});
    if (d.lambda_min < bounds.lambda_min) {
      bounds.lambda_min = d.lambda_min;
      bounds.min_at_base = false;
    }
    if (d.lambda_max > bounds.lambda_max) {
      bounds.lambda_max = d.lambda_max;
      bounds.max_at_base = false;
    }
  }
  return bounds;
}

SchurReductionResult schur_reduction_check(const KernelSample& base, std::size_t n_trials,
                                           std::uint64_t seed, double tol) {
  const GrammianDiagnostics gb = normalized_grammian(base);
  const double c = gb.lambda_max;
  const double d = gb.lambda_min;
  const Index n = base.gram().dim();
  SchurReductionResult result;
  result.trials = n_trials;
  result.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n_trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, t);
    const HermitianMatrix gs = normalized_grammian(scale_by_random_psd(base, trial_seed)).G;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const double upper = min_max_eigenvalues(HermitianMatrix::from(c * id - gs.matrix())).min_eig;
    const double lower = min_max_eigenvalues(HermitianMatrix::from(gs.matrix() - d * id)).min_eig;
    const double margin = std::min(upper, lower);
    if (margin < result.worst_margin) result.worst_margin = margin;
    if (margin < -tol && result.passed) {
      result.passed = false;
      result.violating_trial = t;
    }
  }
  if (n_trials == 0) result.worst_margin = 0.0;
  return result;
}

std::vector<TrendRow> truncation_trend(const PointConfig& sequence, const TestFunctionFamily& family,
                                       std::size_t depth) {
  if (depth > sequence.size()) {
    throw Error(ErrorCode::DimensionMismatch, "trend depth exceeds the sequence length");
  }
  std::vector<TrendRow> rows;
  if (depth == 0) return rows;
  const KernelSample full = base_kernel(sequence.prefix(depth), family);
  for (std::size_t n = 1; n <= depth; ++n) {
    const GrammianDiagnostics d = normalized_grammian(full.prefix(n));
    rows.push_back({n, d.lambda_min, d.lambda_max});
  }
  return rows;
}

}  // namespace agler
