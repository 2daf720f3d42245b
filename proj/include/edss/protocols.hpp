#pragma once

#include "edss/channels.hpp"
#include "edss/correlations.hpp"
#include "edss/density_matrix.hpp"

#include <optional>

namespace edss {

enum class Protocol { alpha, beta };

/// Choice of the postselective measurement on the carrier.
struct Measurement {
  enum class Mode { canonical, optimal, fixed } mode = Mode::canonical;
  BlochProjector projector;  // used when mode == fixed

  static Measurement canonical() { return {}; }
  static Measurement optimal() { return {Mode::optimal, {}}; }
  static Measurement fixed(BlochProjector p) { return {Mode::fixed, p}; }
};

struct StageNegativity {
  std::string stage;
  double carrier_negativity = 0.0;  // K:AB cut
};

struct ProtocolOutcome {
  DensityMatrix final_state;  // labels A, B
  double success_probability = 1.0;
  double negativity_ab = 0.0;
  std::vector<StageNegativity> carrier_negativity_trace;
  BlochProjector measurement;  // outcome projector used on K (last iteration)
  std::vector<double> iteration_probabilities;
};

struct ZalmMapReport {
  std::string outcome_label;  // e.g. "A+A-"
  double outcome_probability = 0.0;
  DensityMatrix final_spin_state;  // labels A, B
  double transfer_error = 0.0;     // trace distance to the input photon state
};

struct AdversaryPoint {
  double theta = 0.0;
  double phi = 0.0;
  double discord_ab = 0.0;
};

/// Classically correlated three-qubit resource of protocol alpha (labels A, B, K).
DensityMatrix build_alpha_initial();

/// Separable Bell-diagonal memory state of protocol beta (labels A, B).
DensityMatrix beta_memory_state();

/// Memory state tensored with the carrier rho_K(c_x) = (I + c_x sigma_x)/2.
DensityMatrix build_beta_initial(double c_x);

ProtocolOutcome run_alpha(const NoiseScenario& noise,
                          const Measurement& measurement = Measurement::canonical());

ProtocolOutcome run_beta(const NoiseScenario& noise, int iterations,
                         const Measurement& measurement = Measurement::canonical(),
                         double c_x = -0.5);

ProtocolOutcome run_ded(const NoiseScenario& noise);

/// Post-measurement A-B discord surface for an eavesdropper projecting the
/// carrier onto the Bloch outcome (theta, phi) right after the encoding
/// operation; the state is conditioned on that outcome.
std::vector<AdversaryPoint> adversary_scan(Protocol protocol, int theta_steps, int phi_steps);

/// Photon-to-spin state transfer: maps an arbitrary two-photon state (labels
/// P_A, P_B) onto the spin memories A, B. Returns one report per beamsplitter
/// outcome pair; the transfer is exact for every outcome.
std::vector<ZalmMapReport> zalm_map(const DensityMatrix& rho_photons);

/// Transfers the protocol's memory resource through the photon-to-spin map,
/// checks the transfer, then runs the protocol under the given scenario.
ProtocolOutcome run_edss_via_zalm(Protocol protocol, const NoiseScenario& noise,
                                  int iterations = 1,
                                  const Measurement& measurement = Measurement::canonical());

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace edss
