#pragma once

#include <cstdint>
#include <random>

#include "agler/linalg.hpp"

namespace agler {

/// SplitMix64 finaliser; maps (seed, stream) pairs to well-mixed 64-bit states.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/**
 * Deterministic generator addressed by (seed, stream). Every sample index gets
 * its own stream, so batch results do not depend on evaluation order.
 */
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

  /// Uniform point in the disc of radius `radius`.
  Complex in_disc(double radius = 1.0);

  ComplexMatrix gaussian_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
};

/// Haar-approximate unitary from the QR factorisation of a Gaussian matrix.
ComplexMatrix random_unitary(Index n, Rng& rng);

}  // namespace agler
