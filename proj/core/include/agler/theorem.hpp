#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agler/grammian.hpp"
#include "agler/interpolation.hpp"
#include "agler/separation.hpp"
#include "agler/test_functions.hpp"

namespace agler {

struct TheoremOptions {
  /// Truncation sizes to tabulate; empty means 1..depth.
  std::vector<std::size_t> truncations;
  std::size_t n_samples = 8;
  std::uint64_t seed = 0;
  double c_max = 1e3;
  double tol = 1e-7;
  SolverOptions solver;
};

/// Finite-truncation implications only; nullopt when a flag does not apply to the row.
struct ConsistencyFlags {
  std::optional<bool> strong_within_sqrt_mn;    // EXACT route: strong constant <= sqrt(M N)
  std::optional<bool> interlacing;              // lambda_min non-increasing, lambda_max non-decreasing
  std::optional<bool> strong_monotone;          // strong constant non-decreasing in n
  std::optional<bool> carleson_implies_strong;  // eps > tol => finite strong constant

  bool consistent() const;
};

struct TheoremRow {
  std::size_t n = 0;
  double strong_constant = 0.0;
  std::string strong_status;
  double lambda_min = 0.0;  // worst over base kernel and cone samples
  double lambda_max = 0.0;
  Route lambda_route;
  double sqrt_mn = 0.0;
  double carleson_epsilon = 0.0;  // best over descriptors
  std::size_t carleson_descriptor = 0;
  ConsistencyFlags flags;
  std::string status = "ok";
};

struct TheoremReport {
  std::vector<TheoremRow> rows;
  Route solver_route;
  bool consistent() const;
  bool indeterminate() const;
};

/**
 * Cross-checks the separation, Grammian and Carleson diagnostics on nested
 * truncations of one sequence. Cone samples are drawn once at full depth and
 * restricted, so the rows see nested kernels. Nothing here asserts anything
 * about the infinite sequence.
 */
TheoremReport verify_theorem(const PointConfig& sequence, const TestFunctionFamily& family,
                             std::size_t depth, const TheoremOptions& options = {});

}  // namespace agler
