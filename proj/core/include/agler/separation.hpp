#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agler/grammian.hpp"
#include "agler/interpolation.hpp"
#include "agler/test_functions.hpp"

namespace agler {

/// |z - w| / |1 - z conj(w)|.
double pseudohyperbolic(Complex z, Complex w);

enum class SeparationKind { Weak, Strong, CarlesonSufficient };

std::string to_string(SeparationKind kind);

struct SeparationDetail {
  std::size_t i = 0;
  std::optional<std::size_t> j;  // second index for weak separation pairs
  double value = 0.0;            // product, or minimal norm (+inf when unbounded)
  std::string status;            // "ok", a MinimalNormStatus, or an error message
};

struct SeparationReport {
  SeparationKind kind = SeparationKind::Weak;
  double constant = 0.0;
  std::vector<SeparationDetail> per_index_detail;
  bool verdict = false;
  Route route;
  std::size_t descriptor = 0;  // Carleson only
};

inline constexpr double kCarlesonTolerance = 1e-8;

/// prod_{j != m} rho(psi(w_j), psi(w_m)) for every m, accumulated in log space.
SeparationReport carleson_products(const PointConfig& points, const TestFunctionFamily& family,
                                   std::size_t descriptor, double tol = kCarlesonTolerance);

/// max over ordered pairs of the minimal norm for targets (1, 0) at (w_i, w_j).
SeparationReport weak_separation_constant(const PointConfig& points, const TestFunctionFamily& family,
                                          double c_max, double tol = 1e-7,
                                          const SolverOptions& options = {});

/// max over i of the minimal norm for targets e_i on the whole list.
SeparationReport strong_separation_certificate(const PointConfig& points,
                                               const TestFunctionFamily& family, double c_max,
                                               double tol = 1e-7, const SolverOptions& options = {});

}  // namespace agler
