#include "agler/sequences.hpp"

#include <cmath>
#include <sstream>

#include "agler/error.hpp"

namespace agler {

SequenceSpec SequenceSpec::exponential(double base, std::size_t depth) {
  return {{RadialLaw::Exponential, base}, SequenceLift::Disc, 0.5, depth};
}

SequenceSpec SequenceSpec::polynomial(double power, std::size_t depth) {
  return {{RadialLaw::Polynomial, power}, SequenceLift::Disc, 0.5, depth};
}

SequenceSpec SequenceSpec::lifted(SequenceLift to) const {
  SequenceSpec s = *this;
  s.lift = to;
  return s;
}

std::vector<double> radii(const RadialSpec& radial, std::size_t depth) {
  if (depth < 1) throw Error(ErrorCode::SpecError, "sequence depth must be >= 1");
  const double q = radial.parameter;
  if (radial.law == RadialLaw::Exponential && !(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::SpecError, "exponential base must lie in (0, 1)");
  }
  if (radial.law == RadialLaw::Polynomial && !(q > 0.0 && std::isfinite(q))) {
    throw Error(ErrorCode::SpecError, "polynomial power must be positive");
  }
  std::vector<double> r(depth);
  for (std::size_t j = 1; j <= depth; ++j) {
    const double jd = static_cast<double>(j);
    r[j - 1] = radial.law == RadialLaw::Exponential ? 1.0 - std::pow(q, jd) : 1.0 - std::pow(jd, -q);
    if (!(r[j - 1] < 1.0) || (j > 1 && !(r[j - 1] > r[j - 2]))) {
      throw Error(ErrorCode::SpecError, "radii collapse to 1 at depth " + std::to_string(j));
    }
  }
  return r;
}

PointConfig generate(const SequenceSpec& spec) {
  const std::vector<double> r = radii(spec.radial, spec.depth);
  std::vector<Point> pts;
  pts.reserve(r.size());
  switch (spec.lift) {
    case SequenceLift::Disc:
      for (double x : r) pts.push_back(Point::disc(x));
      return PointConfig(DomainTag::disc(), std::move(pts));
    case SequenceLift::DiagonalBidisc:
      for (double x : r) pts.push_back(Point::make(DomainTag::polydisc(2), {x, x}));
      return PointConfig(DomainTag::polydisc(2), std::move(pts));
    case SequenceLift::SymmetrizedPairs:
      if (!(std::abs(spec.pair_ratio) <= 1.0)) throw Error(ErrorCode::SpecError, "|pair_ratio| must be <= 1");
      for (double x : r) pts.push_back(symmetrize(x, spec.pair_ratio * x));
      return PointConfig(DomainTag::symmetrized_bidisc(), std::move(pts));
  }
  throw Error(ErrorCode::SpecError, "unknown lift");
}

std::string describe(const SequenceSpec& spec) {
  std::ostringstream os;
  os << (spec.radial.law == RadialLaw::Exponential ? "exponential(" : "polynomial(") << spec.radial.parameter
     << ")";
  if (spec.lift == SequenceLift::DiagonalBidisc) os << ":diagonal_bidisc";
  if (spec.lift == SequenceLift::SymmetrizedPairs) os << ":symmetrized_pairs(" << spec.pair_ratio << ")";
  os << "@" << spec.depth;
  return os.str();
}

}  // namespace agler
