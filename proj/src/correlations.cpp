#include "edss/correlations.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace edss {

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    double l = eigenvalues(i);
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

double entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.data(), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double negativity(const DensityMatrix& rho, const std::vector<std::string>& transposed) {
  Matrix pt = partial_transpose(rho, transposed);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  double n = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    n += (std::abs(l) - l) / 2.0;
  }
  return n < 1e-12 ? 0.0 : n;
}

double negativity(const DensityMatrix& rho, const Bipartition& cut) {
  return negativity(rho, cut.left);
}

namespace {

// Conditional blocks for a measurement on one qubit: Block[a][b] is the
// operator on the unmeasured subsystems with measured-qubit indices (a, b).
struct ConditionalBlocks {
  Matrix block[2][2];
  int other_dim = 1;

  ConditionalBlocks(const DensityMatrix& rho, const std::string& measured) {
    const Layout& layout = rho.layout();
    int mpos = layout.position(measured);
    if (layout.at(mpos).dim != 2)
      throw std::invalid_argument("discord measurement side must be a qubit");
    other_dim = layout.dim() / 2;

    std::vector<int> full_idx[2];
    std::vector<int> d;
    for (int a = 0; a < 2; ++a) full_idx[a].reserve(other_dim);
    for (int idx = 0; idx < layout.dim(); ++idx) {
      layout.digits(idx, d);
      full_idx[d[mpos]].push_back(idx);
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        block[a][b].resize(other_dim, other_dim);
        for (int i = 0; i < other_dim; ++i)
          for (int j = 0; j < other_dim; ++j)
            block[a][b](i, j) = rho.data()(full_idx[a][i], full_idx[b][j]);
      }
  }

  // Average conditional entropy Sum_i p_i S(rho_other | i) for the basis
  // defined by the Bloch angles.
  double conditional_entropy(double theta, double phi) const {
    BlochProjector bp{theta, phi};
    Eigen::Vector2cd kets[2] = {bp.ket(), bp.orthogonal_ket()};
    double s = 0.0;
    Matrix cond(other_dim, other_dim);
    for (const auto& psi : kets) {
      cond = std::norm(psi(0)) * block[0][0] + std::conj(psi(0)) * psi(1) * block[0][1] +
             std::conj(psi(1)) * psi(0) * block[1][0] + std::norm(psi(1)) * block[1][1];
      double p = cond.trace().real();
      if (p > 1e-14) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(cond / p, Eigen::EigenvaluesOnly);
        s += p * entropy_of_spectrum(es.eigenvalues());
      }
    }
    return s;
  }
};

}  // namespace

DiscordResult discord(const DensityMatrix& rho, const std::string& measured) {
  ConditionalBlocks blocks(rho, measured);

  double s_measured = entropy(partial_trace(rho, {measured}));
  double s_total = entropy(rho);

  constexpr int kThetaPoints = 64;
  constexpr int kPhiPoints = 128;
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i < kThetaPoints; ++i) {
    double theta = M_PI * i / (kThetaPoints - 1);
    for (int j = 0; j < kPhiPoints; ++j) {
      double phi = 2.0 * M_PI * j / kPhiPoints;
      double v = blocks.conditional_entropy(theta, phi);
      if (v < best) {
        best = v;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  // Pattern search, fixed move order for reproducibility.
  double step = M_PI / (kThetaPoints - 1);
  while (step > 1e-5) {
    bool improved = false;
    const double moves[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
    for (const auto& mv : moves) {
      double t = best_theta + mv[0];
      if (t < 0.0 || t > M_PI) continue;
      double p = std::fmod(best_phi + mv[1] + 2.0 * M_PI, 2.0 * M_PI);
      double v = blocks.conditional_entropy(t, p);
      if (v < best - 1e-12) {
        best = v;
        best_theta = t;
        best_phi = p;
        improved = true;
      }
    }
    if (!improved) step /= 2.0;
  }

  DiscordResult result;
  result.value = std::max(0.0, s_measured - s_total + best);
  result.optimal_measurement = {best_theta, best_phi};
  result.measured_subsystem = measured;
  return result;
}

bool check_distribution_bound(double e_initial, double e_final, double d_comm) {
  if (e_initial < 0.0 || e_final < 0.0 || d_comm < 0.0)
    throw std::invalid_argument("distribution bound inputs must be non-negative");
  return e_final - e_initial <= d_comm + 1e-6;
}

}  // namespace edss
