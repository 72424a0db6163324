#include "agler/colligation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "agler/error.hpp"
#include "agler/random.hpp"

namespace agler {

Colligation Colligation::make(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d,
                              std::vector<std::size_t> rep_assignment, TestFunctionFamily family) {
  const Index s = a.rows();
  if (a.cols() != s || b.rows() != s || c.cols() != s || d.rows() != c.rows() || d.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "colligation blocks have inconsistent shapes");
  }
  if (d.rows() < 1 || d.cols() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "input and output spaces must be nonzero");
  }
  if (rep_assignment.size() != static_cast<std::size_t>(s)) {
    throw Error(ErrorCode::DimensionMismatch, "rep_assignment length must equal state_dim");
  }
  for (std::size_t t : rep_assignment) {
    if (t >= family.size()) throw Error(ErrorCode::SpecError, "rep_assignment index outside the family");
  }
  return Colligation(std::move(a), std::move(b), std::move(c), std::move(d), std::move(rep_assignment),
                     std::move(family));
}

ComplexMatrix Colligation::block() const {
  const Index s = state_dim();
  ComplexMatrix v(s + out_dim(), s + in_dim());
  v.topLeftCorner(s, s) = a_;
  v.topRightCorner(s, in_dim()) = b_;
  v.bottomLeftCorner(out_dim(), s) = c_;
  v.bottomRightCorner(out_dim(), in_dim()) = d_;
  return v;
}

UnitarityReport is_unitary(const Colligation& col, double tol) {
  const ComplexMatrix v = col.block();
  UnitarityReport report;
  const ComplexMatrix vv = v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols());
  const ComplexMatrix ww = v * v.adjoint() - ComplexMatrix::Identity(v.rows(), v.rows());
  report.defect = std::max(vv.cwiseAbs().maxCoeff(), ww.cwiseAbs().maxCoeff());
  report.unitary = v.rows() == v.cols() && report.defect <= tol;
  return report;
}

ComplexMatrix transfer_eval(const Colligation& col, const Point& x) {
  if (!(x.domain() == col.family().domain())) {
    throw Error(ErrorCode::DomainMismatch, "point and colligation family live on different domains");
  }
  const UnitarityReport u = is_unitary(col, 1e-8);
  if (!u.unitary) {
    throw Error(ErrorCode::SpecError, "transfer_eval needs a unitary colligation (defect " +
                                          std::to_string(u.defect) + ")");
  }
  const Index s = col.state_dim();
  if (s == 0) return col.D();
  ComplexVector rho(s);
  for (Index i = 0; i < s; ++i) rho(i) = evaluate(col.family(), col.rep_assignment()[i], x);
  const ComplexMatrix resolvent = ComplexMatrix::Identity(s, s) - col.A() * rho.asDiagonal();
  const Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() >= kResolventRcond)) {
    throw Error(ErrorCode::SingularResolvent, "I - A rho(E(x)) is numerically singular");
  }
  return col.D() + col.C() * rho.asDiagonal() * lu.solve(col.B());
}

Colligation random_colligation(Index state_dim, Index io_dim, const TestFunctionFamily& family,
                               std::uint64_t seed) {
  if (state_dim < 0 || io_dim < 1) throw Error(ErrorCode::SpecError, "invalid colligation dimensions");
  Rng rng(seed, 0);
  const ComplexMatrix v = random_unitary(state_dim + io_dim, rng);
  std::vector<std::size_t> rep(static_cast<std::size_t>(state_dim));
  Rng pick(seed, 1);
  for (auto& t : rep) {
    t = std::min(family.size() - 1, static_cast<std::size_t>(pick.uniform() * double(family.size())));
  }
  const Index s = state_dim;
  return Colligation::make(v.topLeftCorner(s, s), v.topRightCorner(s, io_dim), v.bottomLeftCorner(io_dim, s),
                           v.bottomRightCorner(io_dim, io_dim), std::move(rep), family);
}

ValueMap transfer_values(const Colligation& col, const PointConfig& points) {
  ValueMap map{points, {}};
  map.values.reserve(points.size());
  for (const Point& x : points) map.values.push_back(transfer_eval(col, x));
  return map;
}

MembershipReport membership_test(const ValueMap& values, const TestFunctionFamily& family,
                                 std::span<const KernelSample> samples, double bound, double tol) {
  if (values.values.size() != values.points.size() || values.values.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "one value per point is required");
  }
  if (!(values.points.domain() == family.domain())) {
    throw Error(ErrorCode::DomainMismatch, "values and family live on different domains");
  }
  const Index out = values.values.front().rows();
  for (const ComplexMatrix& v : values.values) {
    if (v.rows() != out || v.cols() != values.values.front().cols()) {
      throw Error(ErrorCode::DimensionMismatch, "values must share one shape");
    }
  }
  const auto n = static_cast<Index>(values.points.size());
  const double c2 = bound * bound;
  ComplexMatrix mask(n * out, n * out);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      mask.block(i * out, j * out, out, out) =
          c2 * ComplexMatrix::Identity(out, out) - values.values[i] * values.values[j].adjoint();
    }
  }
  MembershipReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const KernelSample& k : samples) {
    if (!(k.points() == values.points)) {
      throw Error(ErrorCode::PointMismatch, "kernel sample lives on a different point list");
    }
    ComplexMatrix m = mask;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) m.block(i * out, j * out, out, out) *= k.gram()(i, j);
    }
    const double margin = min_max_eigenvalues(HermitianMatrix::from(std::move(m), 1e-8)).min_eig;
    report.per_sample.push_back({k.provenance().label(), margin});
    report.worst_margin = std::min(report.worst_margin, margin);
    if (margin < -tol) report.passed = false;
  }
  return report;
}

Colligation diag_direct_sum(std::span<const Colligation> cols) {
  if (cols.empty()) throw Error(ErrorCode::SpecError, "direct sum of no colligations");
  const TestFunctionFamily& family = cols.front().family();
  Index s = 0;
  for (const Colligation& c : cols) {
    if (!(c.family() == family)) throw Error(ErrorCode::FamilyMismatch, "summands use different families");
    if (c.in_dim() != 1 || c.out_dim() != 1) {
      throw Error(ErrorCode::DimensionMismatch, "direct sum takes scalar colligations");
    }
    s += c.state_dim();
  }
  const auto k = static_cast<Index>(cols.size());
  ComplexMatrix a = ComplexMatrix::Zero(s, s);
  ComplexMatrix b = ComplexMatrix::Zero(s, k);
  ComplexMatrix c = ComplexMatrix::Zero(k, s);
  ComplexMatrix d = ComplexMatrix::Zero(k, k);
  std::vector<std::size_t> rep;
  Index offset = 0;
  for (Index i = 0; i < k; ++i) {
    const Colligation& col = cols[static_cast<std::size_t>(i)];
    const Index si = col.state_dim();
    a.block(offset, offset, si, si) = col.A();
    b.block(offset, i, si, 1) = col.B();
    c.block(i, offset, 1, si) = col.C();
    d(i, i) = col.D()(0, 0);
    rep.insert(rep.end(), col.rep_assignment().begin(), col.rep_assignment().end());
    offset += si;
  }
  return Colligation::make(std::move(a), std::move(b), std::move(c), std::move(d), std::move(rep), family);
}

Colligation transpose(const Colligation& col) {
  return Colligation::make(col.A().transpose(), col.C().transpose(), col.B().transpose(),
                           col.D().transpose(), col.rep_assignment(), col.family());
}

ProductResult product(const ValueMap& f, const ValueMap& g, const TestFunctionFamily& family,
                      std::span<const KernelSample> samples, double tol) {
  if (!(f.points == g.points)) throw Error(ErrorCode::PointMismatch, "factors live on different point lists");
  if (f.values.size() != g.values.size()) throw Error(ErrorCode::DimensionMismatch, "value count mismatch");
  ProductResult result{ValueMap{f.points, {}}, {}};
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i].cols() != g.values[i].rows()) {
      throw Error(ErrorCode::DimensionMismatch, "f(x) g(x) is not composable");
    }
    result.values.values.push_back(f.values[i] * g.values[i]);
  }
  result.membership = membership_test(result.values, family, samples, 1.0, tol);
  return result;
}

}  // namespace agler
