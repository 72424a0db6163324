#include "agler/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace agler {

Complex Rng::in_disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

ComplexMatrix Rng::gaussian_matrix(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

ComplexMatrix random_unitary(Index n, Rng& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix z = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Mezzadri's phase correction makes the distribution Haar.
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace agler
