#pragma once

#include "edss/density_matrix.hpp"

namespace edss {

struct Bipartition {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

struct DiscordResult {
  double value = 0.0;  // bits
  BlochProjector optimal_measurement;
  std::string measured_subsystem;
};

/// Von Neumann entropy in bits, with 0 log 0 := 0.
double entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

/// Sum_l (|lambda_l| - lambda_l)/2 over eigenvalues of the partial transpose
/// across `cut`. Values below 1e-12 are clamped to 0.
double negativity(const DensityMatrix& rho, const Bipartition& cut);
double negativity(const DensityMatrix& rho, const std::vector<std::string>& transposed);

/// One-sided Ollivier-Zurek discord with a rank-1 projective measurement on
/// the `measured` qubit; the remaining subsystems form the unmeasured side.
/// Deterministic 64x128 grid plus pattern-search refinement.
DiscordResult discord(const DensityMatrix& rho, const std::string& measured);

/// e_final - e_initial <= d_comm + 1e-6
bool check_distribution_bound(double e_initial, double e_final, double d_comm);

}  // namespace edss
