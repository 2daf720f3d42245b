#pragma once

#include "edss/density_matrix.hpp"

namespace edss {

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

inline Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

/// Control is the first target label, target qubit the second.
inline Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

inline Matrix cphase() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

// Pauli eigenkets: |k_j> has sigma_k eigenvalue (-1)^j.
inline Eigen::Vector2cd ket_z(int j) {
  return j == 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
}

inline Eigen::Vector2cd ket_x(int j) {
  return Eigen::Vector2cd(1, j == 0 ? 1 : -1) / std::sqrt(2.0);
}

inline Eigen::Vector2cd ket_y(int j) {
  return Eigen::Vector2cd(1, Complex(0, j == 0 ? 1 : -1)) / std::sqrt(2.0);
}

inline Eigen::Vector4cd bell_phi_plus() {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  return v / std::sqrt(2.0);
}

/// |psi><psi| over the given layout.
inline DensityMatrix pure(const Eigen::VectorXcd& psi, Layout layout) {
  return {Matrix(psi * psi.adjoint()), std::move(layout)};
}

inline DensityMatrix maximally_mixed(Layout layout) {
  int d = layout.dim();
  return {Matrix::Identity(d, d) / static_cast<double>(d), std::move(layout)};
}

}  // namespace edss
