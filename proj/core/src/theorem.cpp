#include "agler/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agler/error.hpp"
#include "agler/kernels.hpp"
#include "agler/random.hpp"

namespace agler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlagSlack = 1e-6;

std::string worst_status(const SeparationReport& report) {
  std::string status = to_string(MinimalNormStatus::Converged);
  for (const SeparationDetail& d : report.per_index_detail) {
    if (d.status == to_string(MinimalNormStatus::Unbounded)) return d.status;
    if (d.status != status) status = d.status;
  }
  return status;
}

}  // namespace

bool ConsistencyFlags::consistent() const {
  for (const auto& f : {strong_within_sqrt_mn, interlacing, strong_monotone, carleson_implies_strong}) {
    if (f.has_value() && !*f) return false;
  }
  return true;
}

bool TheoremReport::consistent() const {
  return std::all_of(rows.begin(), rows.end(), [](const TheoremRow& r) { return r.flags.consistent(); });
}

bool TheoremReport::indeterminate() const {
  return std::any_of(rows.begin(), rows.end(), [](const TheoremRow& r) {
    return r.status != "ok" || r.strong_status == to_string(MinimalNormStatus::IndeterminateBracket);
  });
}

TheoremReport verify_theorem(const PointConfig& sequence, const TestFunctionFamily& family,
                             std::size_t depth, const TheoremOptions& options) {
  if (depth < 1 || depth > sequence.size()) {
    throw Error(ErrorCode::DimensionMismatch, "depth must lie in 1..sequence length");
  }
  std::vector<std::size_t> sizes = options.truncations;
  if (sizes.empty()) {
    for (std::size_t n = 1; n <= depth; ++n) sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.front() < 1 || sizes.back() > depth) {
    throw Error(ErrorCode::DimensionMismatch, "truncation sizes must lie in 1..depth");
  }

  const PointConfig points = sequence.prefix(depth);
  const KernelSample base = base_kernel(points, family);
  std::vector<KernelSample> cone{base};
  for (std::size_t s = 1; s <= options.n_samples; ++s) {
    cone.push_back(scale_by_random_psd(base, mix_seed(options.seed, s)));
  }

  TheoremReport report;
  report.solver_route = family.is_grid() ? Route::grid(family.grid_size()) : Route::exact();
  const Route lambda_route = cone_route(family);
  for (std::size_t n : sizes) {
    TheoremRow row;
    row.n = n;
    row.lambda_route = lambda_route;
    try {
      row.lambda_min = kInf;
      row.lambda_max = 0.0;
      for (const KernelSample& k : cone) {
        const GrammianDiagnostics d = normalized_grammian(k.prefix(n));
        row.lambda_min = std::min(row.lambda_min, d.lambda_min);
        row.lambda_max = std::max(row.lambda_max, d.lambda_max);
      }
      row.sqrt_mn =
          row.lambda_min > kLowerBoundFlagTolerance ? std::sqrt(row.lambda_max / row.lambda_min) : kInf;

      const PointConfig truncation = points.prefix(n);
      const SeparationReport strong =
          strong_separation_certificate(truncation, family, options.c_max, options.tol, options.solver);
      row.strong_constant = strong.constant;
      row.strong_status = worst_status(strong);

      row.carleson_epsilon = -1.0;
      for (std::size_t t = 0; t < family.size(); ++t) {
        const SeparationReport c = carleson_products(truncation, family, t);
        if (c.constant > row.carleson_epsilon) {
          row.carleson_epsilon = c.constant;
          row.carleson_descriptor = t;
        }
      }

      const bool converged = row.strong_status == to_string(MinimalNormStatus::Converged);
      if (lambda_route.kind == RouteKind::Exact && converged) {
        row.flags.strong_within_sqrt_mn = row.strong_constant <= row.sqrt_mn * (1.0 + kFlagSlack) + options.tol;
      }
      if (row.carleson_epsilon > kCarlesonTolerance) {
        row.flags.carleson_implies_strong = std::isfinite(row.strong_constant);
      }
      if (!report.rows.empty() && report.rows.back().status == "ok") {
        const TheoremRow& prev = report.rows.back();
        row.flags.interlacing = row.lambda_min <= prev.lambda_min + 1e-12 &&
                                row.lambda_max >= prev.lambda_max - 1e-12;
        const bool prev_converged = prev.strong_status == to_string(MinimalNormStatus::Converged);
        if (converged && prev_converged) {
          row.flags.strong_monotone =
              row.strong_constant >= prev.strong_constant * (1.0 - kFlagSlack) - 2.0 * options.tol;
        }
      }
    } catch (const Error& e) {
      row.status = std::string(to_string(e.code())) + ": " + e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace agler
