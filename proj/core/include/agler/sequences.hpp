#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agler/test_functions.hpp"

namespace agler {

enum class RadialLaw { Exponential, Polynomial };

/// Radii 1 - b^j (Exponential, b in (0, 1)) or 1 - j^-p (Polynomial, p > 0), j = 1, 2, ...
struct RadialSpec {
  RadialLaw law = RadialLaw::Exponential;
  double parameter = 0.5;
};

enum class SequenceLift { Disc, DiagonalBidisc, SymmetrizedPairs };

struct SequenceSpec {
  RadialSpec radial;
  SequenceLift lift = SequenceLift::Disc;
  /// SymmetrizedPairs: the pair is (r_j, pair_ratio * r_j), |pair_ratio| <= 1.
  double pair_ratio = 0.5;
  std::size_t depth = 1;

  static SequenceSpec exponential(double base, std::size_t depth);
  static SequenceSpec polynomial(double power, std::size_t depth);
  SequenceSpec lifted(SequenceLift to) const;
};

std::vector<double> radii(const RadialSpec& radial, std::size_t depth);

/// Throws SpecError for out-of-range parameters or depth 0.
PointConfig generate(const SequenceSpec& spec);

std::string describe(const SequenceSpec& spec);

}  // namespace agler
