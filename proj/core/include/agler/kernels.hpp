#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agler/linalg.hpp"
#include "agler/test_functions.hpp"

namespace agler {

enum class KernelOrigin { Szego, ProductSzego, SymmetrizedSzego, ScaledBy, UserSupplied };

struct KernelProvenance {
  KernelOrigin origin = KernelOrigin::UserSupplied;
  std::uint64_t seed = 0;   // ScaledBy only
  std::string base;         // ScaledBy only: label of the kernel that was scaled

  /// "szego", "scaled_by(42):szego", ...
  std::string label() const;
};

/**
 * A positive kernel restricted to a finite point list: gram(i, j) = k(w_i, w_j).
 *
 * Invariants checked at construction: gram is PSD at the default tolerance,
 * its dimension matches the point count and its diagonal is strictly positive.
 */
class KernelSample {
 public:
  static KernelSample make(PointConfig points, HermitianMatrix gram, KernelProvenance provenance);

  const PointConfig& points() const noexcept { return points_; }
  const HermitianMatrix& gram() const noexcept { return gram_; }
  const KernelProvenance& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Restriction to the first n points.
  KernelSample prefix(std::size_t n) const;

 private:
  KernelSample(PointConfig points, HermitianMatrix gram, KernelProvenance provenance)
      : points_(std::move(points)), gram_(std::move(gram)), provenance_(std::move(provenance)) {}
  PointConfig points_;
  HermitianMatrix gram_;
  KernelProvenance provenance_;
};

/// Points closer than this in chordal distance count as duplicates.
inline constexpr double kDuplicateChordalDistance = 1e-10;

/// Throws DuplicatePoints if two points are within kDuplicateChordalDistance.
void require_distinct(const PointConfig& points);

/// 1 / (1 - z conj(w)).
Complex szego(Complex z, Complex w);

KernelSample szego_gram(const PointConfig& points);
KernelSample product_szego_gram(const PointConfig& points);

using DiscPair = std::pair<Complex, Complex>;

struct AdmissibilityMargin {
  std::size_t descriptor = 0;
  double margin = 0.0;  // min eigenvalue of (1 - psi(w_i) conj(psi(w_j))) o gram
};

struct AdmissibilityReport {
  bool admissible = false;
  double tol = 0.0;
  std::size_t grid_size = 0;  // 0 for finite families
  std::vector<AdmissibilityMargin> per_test_margin;
  AdmissibilityMargin worst;
};

/**
 * s(z_i1, z_j1) s(z_i2, z_j2) + s(z_i1, z_j2) s(z_i2, z_j1) on the symmetrized
 * pairs. The candidate is checked against `family` and rejected with
 * AdmissibilityFailure when a grid margin falls below -tol.
 */
std::pair<KernelSample, AdmissibilityReport> symmetrized_szego_gram(
    std::span<const DiscPair> pairs, const TestFunctionFamily& family, double tol = 1e-9);

/// Same kernel on G2 points; the disc pairs are recovered from (s, p).
std::pair<KernelSample, AdmissibilityReport> symmetrized_szego_gram(
    const PointConfig& points, const TestFunctionFamily& family, double tol = 1e-9);

/// Natural base kernel of the domain: Szego, product Szego or symmetrized Szego.
KernelSample base_kernel(const PointConfig& points, const TestFunctionFamily& family);

/// G_g = V* V for a seeded complex Gaussian V (rank x n), rescaled so that
/// diag(G_g) has mean 1. rank == 0 means full rank (rank = n).
HermitianMatrix random_psd_factor(Index n, std::uint64_t seed, Index rank = 0);

/// gram o g, tagged ScaledBy with the given seed.
KernelSample scale_by(const KernelSample& base, const HermitianMatrix& g, std::uint64_t seed);
KernelSample scale_by_random_psd(const KernelSample& base, std::uint64_t seed, Index rank = 0);

/// D_t(i, j) = 1 - psi_t(w_i) conj(psi_t(w_j)).
HermitianMatrix test_function_mask(const TestFunctionFamily& family, std::size_t index,
                                   const PointConfig& points);

/// `tol` is relative: a margin passes when >= -tol * max(1, max diag of the masked matrix).
AdmissibilityReport verify_admissible(const KernelSample& k, const TestFunctionFamily& family,
                                      double tol = kPsdRelativeTolerance);

}  // namespace agler
