#include "agler/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agler/error.hpp"
#include "agler/random.hpp"

namespace agler {

namespace {

double chordal(Complex z, Complex w) {
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

double chordal(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t m = 0; m < a.coords().size(); ++m) d = std::max(d, chordal(a[m], b[m]));
  return d;
}

void require_domain(const PointConfig& points, DomainKind kind, const char* who) {
  const bool ok = kind == DomainKind::Polydisc ? points.domain().is_polydisc_like()
                                               : points.domain().kind() == kind;
  if (!ok) {
    throw Error(ErrorCode::DomainMismatch,
                std::string(who) + " does not apply to " + points.domain().name());
  }
}

}  // namespace

std::string KernelProvenance::label() const {
  switch (origin) {
    case KernelOrigin::Szego: return "szego";
    case KernelOrigin::ProductSzego: return "product_szego";
    case KernelOrigin::SymmetrizedSzego: return "symmetrized_szego";
    case KernelOrigin::ScaledBy: return "scaled_by(" + std::to_string(seed) + "):" + base;
    case KernelOrigin::UserSupplied: return "user_supplied";
  }
  return "unknown";
}

KernelSample KernelSample::make(PointConfig points, HermitianMatrix gram,
                                KernelProvenance provenance) {
  if (static_cast<std::size_t>(gram.dim()) != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "gram dimension differs from point count");
  }
  if (gram.matrix().diagonal().real().minCoeff() <= 0.0) {
    throw Error(ErrorCode::DegenerateDiagonal, "kernel diagonal must be strictly positive");
  }
  const PsdCheck check = is_psd(gram);
  if (!check.psd) {
    throw Error(ErrorCode::SpecError,
                "kernel gram is not PSD (min eigenvalue " + std::to_string(check.report.min_eig) + ")");
  }
  return KernelSample(std::move(points), std::move(gram), std::move(provenance));
}

KernelSample KernelSample::prefix(std::size_t n) const {
  return KernelSample(points_.prefix(n), gram_.leading(static_cast<Index>(n)), provenance_);
}

void require_distinct(const PointConfig& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (chordal(points[i], points[j]) < kDuplicateChordalDistance) {
        throw Error(ErrorCode::DuplicatePoints,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

Complex szego(Complex z, Complex w) { return 1.0 / (1.0 - z * std::conj(w)); }

KernelSample szego_gram(const PointConfig& points) {
  require_domain(points, DomainKind::Disc, "szego_gram");
  if (points.domain().coordinate_count() != 1) {
    throw Error(ErrorCode::DomainMismatch, "szego_gram needs one coordinate");
  }
  require_distinct(points);
  const auto n = static_cast<Index>(points.size());
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = szego(points[i][0], points[j][0]);
  }
  return KernelSample::make(points, HermitianMatrix::from(std::move(g)), {KernelOrigin::Szego});
}

KernelSample product_szego_gram(const PointConfig& points) {
  require_domain(points, DomainKind::Polydisc, "product_szego_gram");
  require_distinct(points);
  const auto n = static_cast<Index>(points.size());
  const std::size_t dims = points.domain().coordinate_count();
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Complex v = 1.0;
      for (std::size_t m = 0; m < dims; ++m) v *= szego(points[i][m], points[j][m]);
      g(i, j) = v;
    }
  }
  return KernelSample::make(points, HermitianMatrix::from(std::move(g)),
                            {KernelOrigin::ProductSzego});
}

namespace {

std::pair<KernelSample, AdmissibilityReport> symmetrized_from(PointConfig points,
                                                              const std::vector<DiscPair>& pairs,
                                                              const TestFunctionFamily& family,
                                                              double tol) {
  require_distinct(points);
  const auto n = static_cast<Index>(pairs.size());
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto [a1, a2] = pairs[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      const auto [b1, b2] = pairs[static_cast<std::size_t>(j)];
      g(i, j) = szego(a1, b1) * szego(a2, b2) + szego(a1, b2) * szego(a2, b1);
    }
  }
  KernelSample k = KernelSample::make(std::move(points), HermitianMatrix::from(std::move(g)),
                                      {KernelOrigin::SymmetrizedSzego});
  AdmissibilityReport report = verify_admissible(k, family, tol);
  if (!report.admissible) {
    throw Error(ErrorCode::AdmissibilityFailure,
                "symmetrized Szego candidate fails at " +
                    describe(family.descriptor(report.worst.descriptor)) +
                    " (margin " + std::to_string(report.worst.margin) + ")");
  }
  return {std::move(k), std::move(report)};
}

}  // namespace

std::pair<KernelSample, AdmissibilityReport> symmetrized_szego_gram(
    std::span<const DiscPair> pairs, const TestFunctionFamily& family, double tol) {
  std::vector<Point> pts;
  pts.reserve(pairs.size());
  for (const auto& [z1, z2] : pairs) pts.push_back(symmetrize(z1, z2));
  return symmetrized_from(PointConfig(DomainTag::symmetrized_bidisc(), std::move(pts)),
                          std::vector<DiscPair>(pairs.begin(), pairs.end()), family, tol);
}

std::pair<KernelSample, AdmissibilityReport> symmetrized_szego_gram(
    const PointConfig& points, const TestFunctionFamily& family, double tol) {
  require_domain(points, DomainKind::SymmetrizedBidisc, "symmetrized_szego_gram");
  std::vector<DiscPair> pairs;
  pairs.reserve(points.size());
  for (const Point& p : points) pairs.push_back(desymmetrize(p));
  return symmetrized_from(points, pairs, family, tol);
}

KernelSample base_kernel(const PointConfig& points, const TestFunctionFamily& family) {
  switch (points.domain().kind()) {
    case DomainKind::Disc: return szego_gram(points);
    case DomainKind::Polydisc: return product_szego_gram(points);
    case DomainKind::SymmetrizedBidisc: return symmetrized_szego_gram(points, family).first;
  }
  throw Error(ErrorCode::SpecError, "unknown domain");
}

HermitianMatrix random_psd_factor(Index n, std::uint64_t seed, Index rank) {
  const Index r = rank > 0 ? rank : n;
  Rng rng(seed, 0);
  const ComplexMatrix v = rng.gaussian_matrix(r, n);
  ComplexMatrix g = v.adjoint() * v;
  const double mean_diag = g.diagonal().real().mean();
  g /= mean_diag;
  return HermitianMatrix::from(std::move(g));
}

KernelSample scale_by(const KernelSample& base, const HermitianMatrix& g, std::uint64_t seed) {
  KernelProvenance prov{KernelOrigin::ScaledBy, seed, base.provenance().label()};
  return KernelSample::make(base.points(), schur_product(base.gram(), g), std::move(prov));
}

KernelSample scale_by_random_psd(const KernelSample& base, std::uint64_t seed, Index rank) {
  return scale_by(base, random_psd_factor(base.gram().dim(), seed, rank), seed);
}

HermitianMatrix test_function_mask(const TestFunctionFamily& family, std::size_t index,
                                   const PointConfig& points) {
  const ComplexVector a = images(family, index, points);
  const auto n = a.size();
  ComplexMatrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) d(i, j) = 1.0 - a(i) * std::conj(a(j));
  }
  return HermitianMatrix::from(std::move(d));
}

AdmissibilityReport verify_admissible(const KernelSample& k, const TestFunctionFamily& family,
                                      double tol) {
  if (!(k.points().domain() == family.domain())) {
    throw Error(ErrorCode::DomainMismatch, "kernel points and family live on different domains");
  }
  AdmissibilityReport report;
  report.tol = tol;
  report.grid_size = family.grid_size();
  report.admissible = true;
  report.worst.margin = std::numeric_limits<double>::infinity();
  double worst_scaled = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < family.size(); ++t) {
    const HermitianMatrix masked = schur_product(test_function_mask(family, t, k.points()), k.gram());
    const double margin = min_max_eigenvalues(masked).min_eig;
    const double scale = std::max(1.0, masked.max_diagonal());
    report.per_test_margin.push_back({t, margin});
    if (margin < -tol * scale) report.admissible = false;
    if (margin / scale < worst_scaled) {
      worst_scaled = margin / scale;
      report.worst = {t, margin};
    }
  }
  return report;
}

}  // namespace agler
