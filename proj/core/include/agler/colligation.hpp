#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "agler/kernels.hpp"
#include "agler/linalg.hpp"
#include "agler/test_functions.hpp"

namespace agler {

/**
 * Unitary block operator V = [[A, B], [C, D]] on X + U -> X + Y with a diagonal
 * representation: state coordinate i carries test function psi_{rep[i]}.
 *
 * make() checks block shapes and the assignment; unitarity is reported by
 * is_unitary() and required by transfer_eval().
 */
class Colligation {
 public:
  static Colligation make(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d,
                          std::vector<std::size_t> rep_assignment, TestFunctionFamily family);

  Index state_dim() const noexcept { return a_.rows(); }
  Index in_dim() const noexcept { return d_.cols(); }
  Index out_dim() const noexcept { return d_.rows(); }
  const ComplexMatrix& A() const noexcept { return a_; }
  const ComplexMatrix& B() const noexcept { return b_; }
  const ComplexMatrix& C() const noexcept { return c_; }
  const ComplexMatrix& D() const noexcept { return d_; }
  const std::vector<std::size_t>& rep_assignment() const noexcept { return rep_; }
  const TestFunctionFamily& family() const noexcept { return family_; }

  ComplexMatrix block() const;

 private:
  Colligation(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d,
              std::vector<std::size_t> rep, TestFunctionFamily family)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
        rep_(std::move(rep)), family_(std::move(family)) {}
  ComplexMatrix a_, b_, c_, d_;
  std::vector<std::size_t> rep_;
  TestFunctionFamily family_;
};

struct UnitarityReport {
  bool unitary = false;
  double defect = 0.0;  // max(|V*V - I|_max, |VV* - I|_max)
};

UnitarityReport is_unitary(const Colligation& col, double tol = 1e-10);

/// Resolvent solves whose reciprocal condition estimate falls below this raise SingularResolvent.
inline constexpr double kResolventRcond = 1e-12;

/// D + C rho (I - A rho)^{-1} B with rho = diag(psi_{rep[i]}(x)).
ComplexMatrix transfer_eval(const Colligation& col, const Point& x);

/// Haar-approximate V of size state_dim + io_dim; representation indices drawn uniformly.
Colligation random_colligation(Index state_dim, Index io_dim, const TestFunctionFamily& family,
                               std::uint64_t seed);

/// Values of a matrix-valued function on a finite point list.
struct ValueMap {
  PointConfig points;
  std::vector<ComplexMatrix> values;
};

ValueMap transfer_values(const Colligation& col, const PointConfig& points);

struct SampleMargin {
  std::string provenance;
  double min_eigenvalue = 0.0;
};

struct MembershipReport {
  bool passed = true;
  double worst_margin = 0.0;  // +inf with no samples
  std::vector<SampleMargin> per_sample;
};

/// Block matrix [(C^2 I - S(x_i) S(x_j)*) k(x_i, x_j)] per sample; passes when every min eigenvalue >= -tol.
MembershipReport membership_test(const ValueMap& values, const TestFunctionFamily& family,
                                 std::span<const KernelSample> samples, double bound, double tol = 1e-8);

/// Block-diagonal sum of scalar colligations over one family.
Colligation diag_direct_sum(std::span<const Colligation> cols);

/// [[A^t, C^t], [B^t, D^t]] with the same representation; its transfer function is Phi(x)^t.
Colligation transpose(const Colligation& col);

struct ProductResult {
  ValueMap values;
  MembershipReport membership;
};

/// Pointwise f(x) g(x) with its membership at C = 1 on the supplied samples.
ProductResult product(const ValueMap& f, const ValueMap& g, const TestFunctionFamily& family,
                      std::span<const KernelSample> samples, double tol = 1e-8);

}  // namespace agler
