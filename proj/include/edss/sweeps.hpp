#pragma once

#include "edss/channels.hpp"
#include "edss/density_matrix.hpp"

#include <functional>

namespace edss {

enum class ProtocolId { alpha, beta1, beta2, beta3, beta4, ded };

std::string to_string(ProtocolId id);
ProtocolId protocol_id_from_string(const std::string& name);
std::vector<ProtocolId> all_protocol_ids();

struct SweepRecord {
  NoiseScenario scenario;
  ProtocolId protocol = ProtocolId::alpha;
  double negativity = 0.0;
  double success_probability = 0.0;
  double optimal_theta = 0.0;
  double optimal_phi = 0.0;
};

struct DeltaRecord {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double delta_alpha_beta = 0.0;
  double delta_alpha_ded = 0.0;  // min(0, N_alpha - N_ded)
  double delta_beta_ded = 0.0;   // min(0, N_beta - N_ded)
};

struct OptimalMeasurement {
  BlochProjector projector;  // basis-defining Bloch point
  int outcome_index = 0;     // 0: projector itself, 1: orthogonal complement
  double negativity = 0.0;
  double probability = 0.0;

  /// Projector of the outcome actually selected.
  BlochProjector selected() const {
    return outcome_index == 0 ? projector : projector.complement();
  }
};

/// Maximizes the postselected A:B negativity over rank-1 projective
/// measurements on K (both outcomes of each basis), 64x128 grid plus
/// pattern-search refinement. Ties broken toward smaller theta, then phi,
/// then outcome index. A flat all-zero surface reports (0, 0).
OptimalMeasurement optimize_measurement(const DensityMatrix& rho_abk);

struct GridSweepResult {
  std::vector<SweepRecord> records;  // alpha, beta1, ded per grid point
  std::vector<DeltaRecord> deltas;
};

std::vector<SweepRecord> sweep_single_channel(ChannelKind kind, const std::vector<double>& p_grid,
                                              const std::vector<ProtocolId>& protocols);

std::vector<SweepRecord> sweep_multichannel_uniform(ChannelKind memory_kind,
                                                    ChannelKind carrier_kind,
                                                    const std::vector<double>& p_grid,
                                                    const std::vector<ProtocolId>& protocols);

GridSweepResult sweep_grid_delta(ChannelKind memory_kind, ChannelKind carrier_kind,
                                 const std::vector<double>& p1_grid,
                                 const std::vector<double>& p2_grid, double p3,
                                 bool fixed_beta_basis = false);

/// Success probability of the noiseless-optimal outcome under the
/// single-channel model, per noise strength.
std::vector<std::pair<double, double>> probability_curves(ProtocolId protocol, ChannelKind kind,
                                                          const std::vector<double>& p_grid);

std::vector<double> linear_grid(int steps);

/// Deterministic parallel map: results land by index regardless of the
/// worker count (EDSS_THREADS, default hardware concurrency).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace edss
