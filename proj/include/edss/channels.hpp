#pragma once

#include "edss/density_matrix.hpp"

namespace edss {

enum class ChannelKind { identity, depolarizing, dephasing, amplitude_damping };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

/// Qubit Kraus channel M_j(p) with Sum_j M_j^dag M_j = I.
struct KrausChannel {
  ChannelKind kind = ChannelKind::identity;
  double strength = 0.0;
  std::vector<Matrix> kraus;
};

/// Throws std::invalid_argument for p outside [0, 1].
KrausChannel make_channel(ChannelKind kind, double p);

enum class NoiseModel { single_channel, multichannel };

/// Where noise strikes and how strongly. In the single-channel model the one
/// channel (carrier_kind, p3) hits the carrier for EDSS and both Bell-pair
/// qubits for DED. In the multichannel model memories A and B see
/// (memory_kind, p1) and (memory_kind, p2) before encoding and the carrier
/// sees (carrier_kind, p3) between encode and decode; DED sees memory noise
/// only.
struct NoiseScenario {
  NoiseModel model = NoiseModel::single_channel;
  ChannelKind memory_kind = ChannelKind::identity;
  ChannelKind carrier_kind = ChannelKind::identity;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  /// Iterated runs of protocol beta re-expose the memories each iteration
  /// when set; default applies memory noise once, before the first encoding.
  bool memory_noise_each_iteration = false;

  static NoiseScenario noiseless();
  static NoiseScenario single(ChannelKind kind, double p);
  static NoiseScenario multichannel_uniform(ChannelKind memory, ChannelKind carrier, double p);
  static NoiseScenario dissimilar(ChannelKind memory, ChannelKind carrier, double p1, double p2,
                                  double p3);

  /// Memory noise restricted to {dephasing, amplitude damping} and carrier
  /// noise to {depolarizing, amplitude damping}; other combinations are
  /// accepted but flagged in output metadata.
  bool standard_scenario() const;
  void validate() const;
};

/// Local noise on both halves of the Bell pair (labels A, B).
DensityMatrix apply_ded_noise(const DensityMatrix& bell, const NoiseScenario& scenario);

DensityMatrix apply_carrier_noise(const DensityMatrix& rho_abk, const KrausChannel& ch);

DensityMatrix apply_memory_noise(const DensityMatrix& rho_abk, const KrausChannel& mem_ch_a,
                                 const KrausChannel& mem_ch_b);

}  // namespace edss
