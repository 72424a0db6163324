#include "agler/test_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "agler/error.hpp"

namespace agler {

namespace {

constexpr double kSingularDenominator = 1e-14;

Complex grid_alpha(std::size_t k, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

// Exact open-G2 test: |s - conj(s) p| < 1 - |p|^2.
bool in_g2(Complex s, Complex p) {
  return std::abs(s - std::conj(s) * p) < 1.0 - std::norm(p);
}

}  // namespace

DomainTag DomainTag::polydisc(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::SpecError, "polydisc dimension must be >= 1");
  return DomainTag(DomainKind::Polydisc, n);
}

std::string DomainTag::name() const {
  switch (kind_) {
    case DomainKind::Disc: return "disc";
    case DomainKind::Polydisc: return "polydisc(" + std::to_string(n_) + ")";
    case DomainKind::SymmetrizedBidisc: return "g2";
  }
  return "unknown";
}

Point Point::make(const DomainTag& domain, std::vector<Complex> coords) {
  if (coords.size() != domain.coordinate_count()) {
    throw Error(ErrorCode::DomainMismatch, domain.name() + " point needs " +
                                               std::to_string(domain.coordinate_count()) +
                                               " coordinates");
  }
  for (const Complex& c : coords) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::NotInDisc, "non-finite coordinate");
    }
  }
  if (domain.is_polydisc_like()) {
    for (const Complex& c : coords) {
      if (!(std::abs(c) < 1.0)) {
        throw Error(ErrorCode::NotInDisc, "coordinate modulus must be < 1");
      }
    }
  } else if (!in_g2(coords[0], coords[1])) {
    throw Error(ErrorCode::NotInDisc, "(s, p) is not in the open symmetrized bidisc");
  }
  return Point(domain, std::move(coords));
}

PointConfig::PointConfig(DomainTag domain, std::vector<Point> points)
    : domain_(domain), points_(std::move(points)) {
  for (const Point& p : points_) {
    if (!(p.domain() == domain_)) {
      throw Error(ErrorCode::DomainMismatch, "point of domain " + p.domain().name() +
                                                 " in a " + domain_.name() + " configuration");
    }
  }
}

PointConfig PointConfig::prefix(std::size_t n) const {
  if (n > points_.size()) throw Error(ErrorCode::DimensionMismatch, "prefix longer than sequence");
  return PointConfig(domain_, std::vector<Point>(points_.begin(), points_.begin() + n));
}

PointConfig PointConfig::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Point> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(points_.at(i));
  return PointConfig(domain_, std::move(out));
}

bool operator==(const PointConfig& a, const PointConfig& b) {
  if (!(a.domain_ == b.domain_) || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].coords() != b[i].coords()) return false;
  }
  return true;
}

PointConfig disc_points(const std::vector<Complex>& zs) {
  std::vector<Point> pts;
  pts.reserve(zs.size());
  for (Complex z : zs) pts.push_back(Point::disc(z));
  return PointConfig(DomainTag::disc(), std::move(pts));
}

std::string describe(const TestFunction& t) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* c = std::get_if<Coordinate>(&t)) {
    os << "z" << (c->axis + 1);
  } else {
    const Complex a = std::get<MagicFunction>(t).alpha;
    os << "psi_alpha(" << a.real() << "," << a.imag() << ")";
  }
  return os.str();
}

TestFunctionFamily TestFunctionFamily::disc() {
  return TestFunctionFamily(DomainTag::disc(), {Coordinate{0}}, 0);
}

TestFunctionFamily TestFunctionFamily::polydisc(std::size_t n) {
  std::vector<TestFunction> ds;
  for (std::size_t i = 0; i < n; ++i) ds.emplace_back(Coordinate{i});
  return TestFunctionFamily(DomainTag::polydisc(n), std::move(ds), 0);
}

TestFunctionFamily TestFunctionFamily::g2_grid(std::size_t grid_size) {
  if (grid_size < 1) throw Error(ErrorCode::SpecError, "grid_size must be positive");
  std::vector<TestFunction> ds;
  ds.reserve(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) ds.emplace_back(MagicFunction{grid_alpha(k, grid_size)});
  return TestFunctionFamily(DomainTag::symmetrized_bidisc(), std::move(ds), grid_size);
}

TestFunctionFamily TestFunctionFamily::for_domain(const DomainTag& domain, std::size_t grid_size) {
  switch (domain.kind()) {
    case DomainKind::Disc: return disc();
    case DomainKind::Polydisc: return polydisc(domain.coordinate_count());
    case DomainKind::SymmetrizedBidisc: return g2_grid(grid_size);
  }
  throw Error(ErrorCode::SpecError, "unknown domain");
}

TestFunctionFamily TestFunctionFamily::custom(const DomainTag& domain,
                                              std::vector<TestFunction> descriptors) {
  if (descriptors.empty()) throw Error(ErrorCode::SpecError, "test-function family is empty");
  for (const TestFunction& t : descriptors) {
    if (const auto* c = std::get_if<Coordinate>(&t)) {
      if (!domain.is_polydisc_like() || c->axis >= domain.coordinate_count()) {
        throw Error(ErrorCode::DomainMismatch, "coordinate descriptor does not fit " + domain.name());
      }
    } else {
      const Complex a = std::get<MagicFunction>(t).alpha;
      if (domain.kind() != DomainKind::SymmetrizedBidisc || std::abs(a) > 1.0 + 1e-12) {
        throw Error(ErrorCode::DomainMismatch, "magic function needs g2 and |alpha| <= 1");
      }
    }
  }
  return TestFunctionFamily(domain, std::move(descriptors), 0);
}

Complex evaluate(const TestFunctionFamily& family, const TestFunction& psi, const Point& x) {
  if (!(x.domain() == family.domain())) {
    throw Error(ErrorCode::DomainMismatch,
                "point in " + x.domain().name() + ", family on " + family.domain().name());
  }
  if (const auto* c = std::get_if<Coordinate>(&psi)) return x[c->axis];
  const Complex alpha = std::get<MagicFunction>(psi).alpha;
  const Complex s = x[0];
  const Complex p = x[1];
  const Complex den = 2.0 - alpha * s;
  if (std::abs(den) < kSingularDenominator) {
    throw Error(ErrorCode::SingularDenominator, "|2 - alpha s| vanishes");
  }
  return (2.0 * alpha * p - s) / den;
}

Complex evaluate(const TestFunctionFamily& family, std::size_t index, const Point& x) {
  return evaluate(family, family.descriptor(index), x);
}

ComplexVector e_vector(const TestFunctionFamily& family, const Point& x) {
  ComplexVector e(static_cast<Index>(family.size()));
  for (std::size_t t = 0; t < family.size(); ++t) e(static_cast<Index>(t)) = evaluate(family, t, x);
  return e;
}

ComplexVector images(const TestFunctionFamily& family, std::size_t index, const PointConfig& points) {
  ComplexVector v(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    v(static_cast<Index>(i)) = evaluate(family, index, points[i]);
  }
  return v;
}

Point symmetrize(Complex z1, Complex z2) {
  if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) {
    throw Error(ErrorCode::NotInDisc, "symmetrize needs both arguments in the open disc");
  }
  return Point::make(DomainTag::symmetrized_bidisc(), {z1 + z2, z1 * z2});
}

std::pair<Complex, Complex> desymmetrize(const Point& x) {
  if (x.domain().kind() != DomainKind::SymmetrizedBidisc) {
    throw Error(ErrorCode::DomainMismatch, "desymmetrize needs a g2 point");
  }
  const Complex s = x[0];
  const Complex p = x[1];
  const Complex root = std::sqrt(s * s - 4.0 * p);
  // Pick the larger-modulus root first, recover the second from p to avoid
  // cancellation.
  Complex z1 = (std::abs(s + root) >= std::abs(s - root)) ? (s + root) / 2.0 : (s - root) / 2.0;
  Complex z2 = std::abs(z1) > 0.0 ? p / z1 : s - z1;
  return {z1, z2};
}

MembershipResult membership_check(const DomainTag& domain, const std::vector<Complex>& coords,
                                  std::size_t grid_size) {
  if (grid_size < 8) throw Error(ErrorCode::SpecError, "membership grid must have >= 8 samples");
  if (coords.size() != domain.coordinate_count()) {
    throw Error(ErrorCode::DomainMismatch, "coordinate count does not match domain");
  }
  MembershipResult result;
  if (domain.is_polydisc_like()) {
    for (const Complex& c : coords) result.worst_modulus = std::max(result.worst_modulus, std::abs(c));
    result.inside = result.worst_modulus < 1.0;
    return result;
  }
  const Complex s = coords[0];
  const Complex p = coords[1];
  result.worst_modulus = -1.0;
  for (std::size_t k = 0; k < grid_size; ++k) {
    const Complex alpha = grid_alpha(k, grid_size);
    const Complex den = 2.0 - alpha * s;
    const double modulus = std::abs(den) < kSingularDenominator
                               ? std::numeric_limits<double>::infinity()
                               : std::abs((2.0 * alpha * p - s) / den);
    if (modulus > result.worst_modulus) {
      result.worst_modulus = modulus;
      result.worst_alpha = alpha;
    }
  }
  result.inside = result.worst_modulus < 1.0;
  return result;
}

MembershipResult membership_check(const Point& x, std::size_t grid_size) {
  return membership_check(x.domain(), x.coords(), grid_size);
}

}  // namespace agler
