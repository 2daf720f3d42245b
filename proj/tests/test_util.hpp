#pragma once

#include "edss/density_matrix.hpp"

#include <random>

namespace edss::testutil {

inline double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal(std::mt19937_64& rng) {
  double u1 = uniform(rng);
  while (u1 <= 0.0) u1 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * uniform(rng));
}

inline Matrix ginibre(int dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

inline DensityMatrix random_state(Layout layout, std::mt19937_64& rng) {
  Matrix g = ginibre(layout.dim(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {std::move(rho), std::move(layout)};
}

inline Matrix random_unitary(int dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline Eigen::VectorXcd random_ket(int dim, std::mt19937_64& rng) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace edss::testutil
