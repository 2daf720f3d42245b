#include "edss/channels.hpp"

#include "edss/gates.hpp"

#include <cmath>

namespace edss {

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::identity: return "identity";
    case ChannelKind::depolarizing: return "depolarizing";
    case ChannelKind::dephasing: return "dephasing";
    case ChannelKind::amplitude_damping: return "amplitude-damping";
  }
  return "?";
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "identity" || name == "none") return ChannelKind::identity;
  if (name == "depolarizing") return ChannelKind::depolarizing;
  if (name == "dephasing") return ChannelKind::dephasing;
  if (name == "amplitude-damping" || name == "ad") return ChannelKind::amplitude_damping;
  throw std::invalid_argument("unknown channel kind: " + name);
}

KrausChannel make_channel(ChannelKind kind, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("channel strength must lie in [0, 1]");
  KrausChannel ch{kind, p, {}};
  const Matrix id = Matrix::Identity(2, 2);
  switch (kind) {
    case ChannelKind::identity:
      ch.kraus = {id};
      break;
    case ChannelKind::depolarizing:
      ch.kraus = {std::sqrt(1.0 - p) * id, std::sqrt(p / 3.0) * Matrix(pauli_x()),
                  std::sqrt(p / 3.0) * Matrix(pauli_y()), std::sqrt(p / 3.0) * Matrix(pauli_z())};
      break;
    case ChannelKind::dephasing: {
      Matrix d0 = Matrix::Zero(2, 2), d1 = Matrix::Zero(2, 2);
      d0(0, 0) = 1.0;
      d1(1, 1) = 1.0;
      ch.kraus = {std::sqrt(1.0 - p) * id, std::sqrt(p) * d0, std::sqrt(p) * d1};
      break;
    }
    case ChannelKind::amplitude_damping: {
      Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
      m0(0, 0) = 1.0;
      m0(1, 1) = std::sqrt(1.0 - p);
      m1(0, 1) = std::sqrt(p);
      ch.kraus = {m0, m1};
      break;
    }
  }
  return ch;
}

NoiseScenario NoiseScenario::noiseless() { return {}; }

NoiseScenario NoiseScenario::single(ChannelKind kind, double p) {
  NoiseScenario sc;
  sc.model = NoiseModel::single_channel;
  sc.carrier_kind = kind;
  sc.p3 = p;
  return sc;
}

NoiseScenario NoiseScenario::multichannel_uniform(ChannelKind memory, ChannelKind carrier,
                                                  double p) {
  return dissimilar(memory, carrier, p, p, p);
}

NoiseScenario NoiseScenario::dissimilar(ChannelKind memory, ChannelKind carrier, double p1,
                                        double p2, double p3) {
  NoiseScenario sc;
  sc.model = NoiseModel::multichannel;
  sc.memory_kind = memory;
  sc.carrier_kind = carrier;
  sc.p1 = p1;
  sc.p2 = p2;
  sc.p3 = p3;
  return sc;
}

bool NoiseScenario::standard_scenario() const {
  bool mem_ok = memory_kind == ChannelKind::identity || memory_kind == ChannelKind::dephasing ||
                memory_kind == ChannelKind::amplitude_damping;
  bool car_ok = carrier_kind == ChannelKind::identity ||
                carrier_kind == ChannelKind::depolarizing ||
                carrier_kind == ChannelKind::amplitude_damping;
  return mem_ok && car_ok;
}

void NoiseScenario::validate() const {
  for (double p : {p1, p2, p3})
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("noise strength must lie in [0, 1]");
}

DensityMatrix apply_ded_noise(const DensityMatrix& bell, const NoiseScenario& scenario) {
  scenario.validate();
  KrausChannel ch_a, ch_b;
  if (scenario.model == NoiseModel::single_channel) {
    ch_a = make_channel(scenario.carrier_kind, scenario.p3);
    ch_b = make_channel(scenario.carrier_kind, scenario.p3);
  } else {
    ch_a = make_channel(scenario.memory_kind, scenario.p1);
    ch_b = make_channel(scenario.memory_kind, scenario.p2);
  }
  DensityMatrix out = apply_kraus(bell, ch_a.kraus, "A");
  return apply_kraus(out, ch_b.kraus, "B");
}

DensityMatrix apply_carrier_noise(const DensityMatrix& rho_abk, const KrausChannel& ch) {
  return apply_kraus(rho_abk, ch.kraus, "K");
}

DensityMatrix apply_memory_noise(const DensityMatrix& rho_abk, const KrausChannel& mem_ch_a,
                                 const KrausChannel& mem_ch_b) {
  DensityMatrix out = apply_kraus(rho_abk, mem_ch_a.kraus, "A");
  return apply_kraus(out, mem_ch_b.kraus, "B");
}

}  // namespace edss
