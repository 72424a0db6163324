#include "agler/separation.hpp"

#include <cmath>
#include <limits>

#include "agler/error.hpp"

namespace agler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_c_max(double c_max) {
  if (!(c_max >= 1.0)) throw Error(ErrorCode::SpecError, "C_max must be >= 1");
}

SeparationDetail norm_detail(std::size_t i, std::optional<std::size_t> j, const MinimalNormResult& r) {
  const double value = r.status == MinimalNormStatus::Unbounded ? kInf : r.value;
  return {i, j, value, to_string(r.status)};
}

Route family_route(const TestFunctionFamily& family) {
  return family.is_grid() ? Route::grid(family.grid_size()) : Route::exact();
}

}  // namespace

double pseudohyperbolic(Complex z, Complex w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0) {
    throw Error(ErrorCode::NotInDisc, "pseudohyperbolic distance needs |z|, |w| < 1");
  }
  return std::abs(z - w) / std::abs(1.0 - z * std::conj(w));
}

std::string to_string(SeparationKind kind) {
  switch (kind) {
    case SeparationKind::Weak: return "Weak";
    case SeparationKind::Strong: return "Strong";
    case SeparationKind::CarlesonSufficient: return "CarlesonSufficient";
  }
  return "Unknown";
}

SeparationReport carleson_products(const PointConfig& points, const TestFunctionFamily& family,
                                   std::size_t descriptor, double tol) {
  if (descriptor >= family.size()) {
    throw Error(ErrorCode::SpecError, "descriptor index outside the family");
  }
  const ComplexVector z = images(family, descriptor, points);
  SeparationReport report;
  report.kind = SeparationKind::CarlesonSufficient;
  report.route = family_route(family);
  report.descriptor = descriptor;
  report.constant = points.size() == 0 ? 0.0 : kInf;
  for (Index m = 0; m < z.size(); ++m) {
    double log_product = 0.0;
    for (Index j = 0; j < z.size() && std::isfinite(log_product); ++j) {
      if (j != m) log_product += std::log(pseudohyperbolic(z(j), z(m)));
    }
    const double product = std::exp(log_product);
    report.per_index_detail.push_back({static_cast<std::size_t>(m), std::nullopt, product, "ok"});
    report.constant = std::min(report.constant, product);
  }
  // A single point has an empty product.
  if (z.size() == 1) report.constant = 1.0;
  report.verdict = std::isfinite(report.constant) && report.constant > tol;
  return report;
}

SeparationReport weak_separation_constant(const PointConfig& points, const TestFunctionFamily& family,
                                          double c_max, double tol, const SolverOptions& options) {
  require_c_max(c_max);
  if (points.size() < 2) throw Error(ErrorCode::SpecError, "weak separation needs at least two points");
  SeparationReport report;
  report.kind = SeparationKind::Weak;
  report.route = family_route(family);
  ComplexVector targets(2);
  targets << 1.0, 0.0;
  bool complete = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      try {
        const MinimalNormResult r = minimal_norm(points.subset({i, j}), targets, family, tol, options);
        report.per_index_detail.push_back(norm_detail(i, j, r));
      } catch (const Error& e) {
        // Coincident points cannot take two values.
        const bool duplicate = e.code() == ErrorCode::DuplicatePoints;
        report.per_index_detail.push_back({i, j, kInf, duplicate ? "Unbounded" : e.what()});
        complete = complete && duplicate;
      }
      report.constant = std::max(report.constant, report.per_index_detail.back().value);
    }
  }
  report.verdict = complete && std::isfinite(report.constant) && report.constant <= c_max;
  return report;
}

SeparationReport strong_separation_certificate(const PointConfig& points,
                                               const TestFunctionFamily& family, double c_max,
                                               double tol, const SolverOptions& options) {
  require_c_max(c_max);
  if (points.size() == 0) throw Error(ErrorCode::SpecError, "strong separation needs a point");
  SeparationReport report;
  report.kind = SeparationKind::Strong;
  report.route = family_route(family);
  const auto n = static_cast<Index>(points.size());
  for (Index i = 0; i < n; ++i) {
    const ComplexVector targets = ComplexVector::Unit(n, i);
    const MinimalNormResult r = minimal_norm(points, targets, family, tol, options);
    report.per_index_detail.push_back(norm_detail(static_cast<std::size_t>(i), std::nullopt, r));
    report.constant = std::max(report.constant, report.per_index_detail.back().value);
  }
  report.verdict = std::isfinite(report.constant) && report.constant <= c_max;
  return report;
}

}  // namespace agler
