#include "edss/sweeps.hpp"

#include "edss/correlations.hpp"
#include "edss/gates.hpp"
#include "edss/protocols.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace edss {

std::string to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::alpha: return "alpha";
    case ProtocolId::beta1: return "beta-1";
    case ProtocolId::beta2: return "beta-2";
    case ProtocolId::beta3: return "beta-3";
    case ProtocolId::beta4: return "beta-4";
    case ProtocolId::ded: return "ded";
  }
  return "?";
}

ProtocolId protocol_id_from_string(const std::string& name) {
  if (name == "alpha") return ProtocolId::alpha;
  if (name == "beta" || name == "beta-1") return ProtocolId::beta1;
  if (name == "beta-2") return ProtocolId::beta2;
  if (name == "beta-3") return ProtocolId::beta3;
  if (name == "beta-4") return ProtocolId::beta4;
  if (name == "ded") return ProtocolId::ded;
  throw std::invalid_argument("unknown protocol: " + name);
}

std::vector<ProtocolId> all_protocol_ids() {
  return {ProtocolId::alpha, ProtocolId::beta1, ProtocolId::beta2,
          ProtocolId::beta3, ProtocolId::beta4, ProtocolId::ded};
}

std::vector<double> linear_grid(int steps) {
  if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = static_cast<double>(i) / (steps - 1);
  return g;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = 0;
  if (const char* env = std::getenv("EDSS_THREADS")) workers = std::atoi(env);
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

namespace {

// Post-decode ABK state reduced to measurement blocks over K: the operator
// conditioned on K-ket psi is sum_ab conj(psi_a) psi_b block[a][b].
struct CarrierBlocks {
  Eigen::Matrix4cd block[2][2];

  explicit CarrierBlocks(const DensityMatrix& rho) {
    const Layout& layout = rho.layout();
    int kpos = layout.position("K");
    int apos = layout.position("A");
    int bpos = layout.position("B");
    if (layout.dim() != 8) throw std::invalid_argument("expected a three-qubit A,B,K state");
    std::vector<int> d;
    std::vector<int> full_idx[2];
    for (int idx = 0; idx < 8; ++idx) {
      layout.digits(idx, d);
      full_idx[d[kpos]].push_back(idx);
    }
    // Remaining index must enumerate (A,B) in row-major order.
    std::vector<int> order(4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int slot = 0; slot < 4; ++slot) {
          layout.digits(full_idx[0][slot], d);
          if (d[apos] == a && d[bpos] == b) order[a * 2 + b] = slot;
        }
    for (int ka = 0; ka < 2; ++ka)
      for (int kb = 0; kb < 2; ++kb)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            block[ka][kb](i, j) = rho.data()(full_idx[ka][order[i]], full_idx[kb][order[j]]);
  }

  // (negativity, probability) of the normalized A:B state after projecting K
  // onto psi.
  std::pair<double, double> postselected_negativity(const Eigen::Vector2cd& psi) const {
    Eigen::Matrix4cd m = std::norm(psi(0)) * block[0][0] +
                         std::conj(psi(0)) * psi(1) * block[0][1] +
                         std::conj(psi(1)) * psi(0) * block[1][0] +
                         std::norm(psi(1)) * block[1][1];
    double p = m.trace().real();
    if (p < 1e-14) return {0.0, p};
    // Partial transpose on A (first qubit of the 2x2 block structure).
    Eigen::Matrix4cd pt;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        pt.block<2, 2>(2 * a, 2 * b) = m.block<2, 2>(2 * b, 2 * a);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
    double n = 0.0;
    for (int i = 0; i < 4; ++i) {
      double l = es.eigenvalues()(i) / p;
      n += (std::abs(l) - l) / 2.0;
    }
    return {n < 1e-12 ? 0.0 : n, p};
  }
};

}  // namespace

OptimalMeasurement optimize_measurement(const DensityMatrix& rho_abk) {
  CarrierBlocks blocks(rho_abk);

  constexpr int kThetaPoints = 64;
  constexpr int kPhiPoints = 128;
  OptimalMeasurement best;
  best.negativity = -1.0;
  for (int i = 0; i < kThetaPoints; ++i) {
    double theta = M_PI * i / (kThetaPoints - 1);
    for (int j = 0; j < kPhiPoints; ++j) {
      double phi = 2.0 * M_PI * j / kPhiPoints;
      BlochProjector bp{theta, phi};
      const Eigen::Vector2cd kets[2] = {bp.ket(), bp.orthogonal_ket()};
      for (int o = 0; o < 2; ++o) {
        auto [n, p] = blocks.postselected_negativity(kets[o]);
        if (p < 1e-14) continue;
        if (n > best.negativity) best = {bp, o, n, p};
      }
    }
  }

  if (best.negativity <= 0.0) {
    // Flat surface: canonical projector keeps output deterministic.
    BlochProjector canonical{0.0, 0.0};
    auto [n, p] = blocks.postselected_negativity(canonical.ket());
    return {canonical, 0, 0.0, p};
  }

  // Refine the selected outcome's Bloch point directly.
  BlochProjector sel = best.selected();
  double theta = sel.theta, phi = sel.phi, value = best.negativity, prob = best.probability;
  double step = M_PI / (kThetaPoints - 1);
  while (step > 1e-6) {
    bool improved = false;
    const double moves[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
    for (const auto& mv : moves) {
      double t = theta + mv[0];
      if (t < 0.0 || t > M_PI) continue;
      double f = std::fmod(phi + mv[1] + 2.0 * M_PI, 2.0 * M_PI);
      auto [n, p] = blocks.postselected_negativity(BlochProjector{t, f}.ket());
      if (p >= 1e-14 && n > value + 1e-12) {
        theta = t;
        phi = f;
        value = n;
        prob = p;
        improved = true;
      }
    }
    if (!improved) step /= 2.0;
  }
  return {BlochProjector{theta, phi}, 0, value, prob};
}

namespace {

SweepRecord make_record(const NoiseScenario& sc, ProtocolId id) {
  SweepRecord rec;
  rec.scenario = sc;
  rec.protocol = id;
  if (id == ProtocolId::ded) {
    ProtocolOutcome out = run_ded(sc);
    rec.negativity = out.negativity_ab;
    rec.success_probability = 1.0;
    return rec;
  }
  ProtocolOutcome out;
  if (id == ProtocolId::alpha) {
    out = run_alpha(sc, Measurement::optimal());
  } else {
    int iterations = 1 + static_cast<int>(id) - static_cast<int>(ProtocolId::beta1);
    out = run_beta(sc, iterations, Measurement::optimal());
  }
  rec.negativity = out.negativity_ab;
  rec.success_probability = out.success_probability;
  rec.optimal_theta = out.measurement.theta;
  rec.optimal_phi = out.measurement.phi;
  return rec;
}

std::vector<SweepRecord> sweep_over(const std::vector<NoiseScenario>& scenarios,
                                    const std::vector<ProtocolId>& protocols) {
  const int per_point = static_cast<int>(protocols.size());
  std::vector<SweepRecord> records(scenarios.size() * protocols.size());
  parallel_for(static_cast<int>(records.size()), [&](int idx) {
    records[idx] = make_record(scenarios[idx / per_point], protocols[idx % per_point]);
  });
  return records;
}

}  // namespace

std::vector<SweepRecord> sweep_single_channel(ChannelKind kind, const std::vector<double>& p_grid,
                                              const std::vector<ProtocolId>& protocols) {
  std::vector<NoiseScenario> scenarios;
  scenarios.reserve(p_grid.size());
  for (double p : p_grid) scenarios.push_back(NoiseScenario::single(kind, p));
  return sweep_over(scenarios, protocols);
}

std::vector<SweepRecord> sweep_multichannel_uniform(ChannelKind memory_kind,
                                                    ChannelKind carrier_kind,
                                                    const std::vector<double>& p_grid,
                                                    const std::vector<ProtocolId>& protocols) {
  std::vector<NoiseScenario> scenarios;
  scenarios.reserve(p_grid.size());
  for (double p : p_grid)
    scenarios.push_back(NoiseScenario::multichannel_uniform(memory_kind, carrier_kind, p));
  return sweep_over(scenarios, protocols);
}

GridSweepResult sweep_grid_delta(ChannelKind memory_kind, ChannelKind carrier_kind,
                                 const std::vector<double>& p1_grid,
                                 const std::vector<double>& p2_grid, double p3,
                                 bool fixed_beta_basis) {
  const int n1 = static_cast<int>(p1_grid.size());
  const int n2 = static_cast<int>(p2_grid.size());
  GridSweepResult result;
  result.records.resize(static_cast<size_t>(n1) * n2 * 3);
  result.deltas.resize(static_cast<size_t>(n1) * n2);

  const Measurement beta_measurement =
      fixed_beta_basis ? Measurement::fixed(BlochProjector{M_PI / 2.0, M_PI})
                       : Measurement::optimal();

  parallel_for(n1 * n2, [&](int idx) {
    double p1 = p1_grid[idx / n2], p2 = p2_grid[idx % n2];
    NoiseScenario sc = NoiseScenario::dissimilar(memory_kind, carrier_kind, p1, p2, p3);

    SweepRecord rec_alpha = make_record(sc, ProtocolId::alpha);
    ProtocolOutcome beta = run_beta(sc, 1, beta_measurement);
    SweepRecord rec_beta{sc, ProtocolId::beta1, beta.negativity_ab, beta.success_probability,
                         beta.measurement.theta, beta.measurement.phi};
    SweepRecord rec_ded = make_record(sc, ProtocolId::ded);

    result.records[3 * idx + 0] = rec_alpha;
    result.records[3 * idx + 1] = rec_beta;
    result.records[3 * idx + 2] = rec_ded;

    DeltaRecord& d = result.deltas[idx];
    d.p1 = p1;
    d.p2 = p2;
    d.p3 = p3;
    d.delta_alpha_beta = rec_beta.negativity - rec_alpha.negativity;
    d.delta_alpha_ded = std::min(0.0, rec_alpha.negativity - rec_ded.negativity);
    d.delta_beta_ded = std::min(0.0, rec_beta.negativity - rec_ded.negativity);
  });
  return result;
}

std::vector<std::pair<double, double>> probability_curves(ProtocolId protocol, ChannelKind kind,
                                                          const std::vector<double>& p_grid) {
  if (protocol == ProtocolId::ded)
    throw std::invalid_argument("probability curves apply to the postselective protocols only");
  std::vector<std::pair<double, double>> curve(p_grid.size());
  parallel_for(static_cast<int>(p_grid.size()), [&](int i) {
    NoiseScenario sc = NoiseScenario::single(kind, p_grid[i]);
    double prob;
    if (protocol == ProtocolId::alpha) {
      prob = run_alpha(sc, Measurement::canonical()).success_probability;
    } else {
      int iterations = 1 + static_cast<int>(protocol) - static_cast<int>(ProtocolId::beta1);
      prob = run_beta(sc, iterations, Measurement::canonical()).iteration_probabilities.front();
    }
    curve[i] = {p_grid[i], prob};
  });
  return curve;
}

}  // namespace edss
