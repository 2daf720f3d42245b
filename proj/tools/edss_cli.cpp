// Command-line front end: protocol runs, discord evaluation, adversary
// scans, noise sweeps and figure-data export as deterministic CSV.

#include "edss/correlations.hpp"
#include "edss/gates.hpp"
#include "edss/protocols.hpp"
#include "edss/sweeps.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const std::string& path, const std::string& config_comment,
               const std::string& header, const std::vector<std::string>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << "# " << config_comment << "\n" << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::vector<edss::ProtocolId> parse_protocols(const std::string& csv) {
  std::vector<edss::ProtocolId> ids;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) ids.push_back(edss::protocol_id_from_string(item));
  if (ids.empty()) throw CLI::ValidationError("--protocols", "empty protocol list");
  return ids;
}

struct ScenarioOptions {
  std::string model = "single";
  std::string memory_noise = "identity";
  std::string carrier_noise = "identity";
  double p = -1.0;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  bool memory_noise_each_iteration = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "noise model")->check(CLI::IsMember({"single", "multi"}));
    cmd->add_option("--memory-noise", memory_noise, "memory channel kind (multi model)");
    cmd->add_option("--carrier-noise", carrier_noise, "carrier channel kind");
    cmd->add_option("--p", p, "uniform noise strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p1", p1, "memory A strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p2", p2, "memory B strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p3", p3, "carrier strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--memory-noise-each-iteration", memory_noise_each_iteration,
                  "re-expose memories to noise on every beta iteration");
  }

  edss::NoiseScenario scenario() const {
    edss::NoiseScenario sc;
    if (model == "single") {
      sc = edss::NoiseScenario::single(edss::channel_kind_from_string(carrier_noise),
                                       p >= 0.0 ? p : p3);
    } else {
      double q1 = p >= 0.0 ? p : p1;
      double q2 = p >= 0.0 ? p : p2;
      double q3 = p >= 0.0 ? p : p3;
      sc = edss::NoiseScenario::dissimilar(edss::channel_kind_from_string(memory_noise),
                                           edss::channel_kind_from_string(carrier_noise), q1, q2,
                                           q3);
    }
    sc.memory_noise_each_iteration = memory_noise_each_iteration;
    return sc;
  }
};

// Random two-qubit mixed state from a seeded 64-bit generator: a Ginibre
// matrix G with Box-Muller normals built from the top 53 bits of
// std::mt19937_64 draws, rho = G G^dag / tr. The construction is documented
// so that an independent implementation reproduces it bit for bit.
edss::Matrix random_two_qubit_state(std::mt19937_64& rng) {
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto normal = [&] {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  edss::Matrix g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = edss::Complex(normal(), normal());
  edss::Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

int run_command(const ScenarioOptions& opts, const std::string& protocol, int iterations,
                const std::string& measurement) {
  edss::NoiseScenario sc = opts.scenario();
  edss::Measurement m = measurement == "optimal" ? edss::Measurement::optimal()
                                                 : edss::Measurement::canonical();
  edss::ProtocolOutcome out;
  if (protocol == "alpha") {
    out = edss::run_alpha(sc, m);
  } else if (protocol == "ded") {
    out = edss::run_ded(sc);
  } else {
    out = edss::run_beta(sc, iterations, m);
  }
  std::cout << "protocol: " << protocol << "\n"
            << "negativity_ab: " << fmt(out.negativity_ab) << "\n"
            << "success_probability: " << fmt(out.success_probability) << "\n";
  for (size_t i = 0; i < out.iteration_probabilities.size(); ++i)
    std::cout << "iteration_" << i + 1 << "_probability: " << fmt(out.iteration_probabilities[i])
              << "\n";
  std::cout << "measurement_theta: " << fmt(out.measurement.theta) << "\n"
            << "measurement_phi: " << fmt(out.measurement.phi) << "\n";
  for (const auto& stage : out.carrier_negativity_trace)
    std::cout << "carrier_negativity[" << stage.stage << "]: " << fmt(stage.carrier_negativity)
              << "\n";
  if (!sc.standard_scenario()) std::cout << "note: non-standard noise combination\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement distribution with separable states: simulation toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "single protocol run");
  std::string run_protocol = "alpha";
  int run_iterations = 1;
  std::string run_measurement = "canonical";
  bool allow_extended = false;
  run->add_option("--protocol", run_protocol, "protocol")
      ->check(CLI::IsMember({"alpha", "beta", "ded"}));
  run->add_option("--iterations", run_iterations, "beta iterations")->check(CLI::Range(1, 64));
  run->add_option("--measurement", run_measurement, "carrier measurement")
      ->check(CLI::IsMember({"canonical", "optimal"}));
  run->add_flag("--allow-extended", allow_extended, "allow more than 4 beta iterations");
  ScenarioOptions run_opts;
  run_opts.attach(run);

  // discord
  auto* disc = app.add_subcommand("discord", "discord of the protocol resource states");
  std::string disc_state = "alpha-ab";
  disc->add_option("--state", disc_state, "resource state")
      ->check(CLI::IsMember({"alpha-ab", "beta-ab"}));

  // adversary
  auto* adv = app.add_subcommand("adversary", "post-measurement discord scan");
  std::string adv_protocol = "alpha";
  int adv_theta_steps = 33, adv_phi_steps = 64;
  std::string adv_out;
  adv->add_option("--protocol", adv_protocol)->check(CLI::IsMember({"alpha", "beta"}));
  adv->add_option("--theta-steps", adv_theta_steps)->check(CLI::Range(2, 4096));
  adv->add_option("--phi-steps", adv_phi_steps)->check(CLI::Range(2, 4096));
  adv->add_option("--out", adv_out, "output CSV")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "negativity/probability sweep over noise strength");
  int sweep_steps = 101;
  std::string sweep_protocols = "alpha,beta-1,beta-2,beta-3,beta-4,ded";
  std::string sweep_out;
  ScenarioOptions sweep_opts;
  sweep_opts.attach(sweep);
  sweep->add_option("--steps", sweep_steps)->check(CLI::Range(2, 100000));
  sweep->add_option("--protocols", sweep_protocols, "comma-separated protocol list");
  sweep->add_option("--out", sweep_out, "output CSV")->required();

  // grid
  auto* grid = app.add_subcommand("grid", "dissimilar-strength p1-p2 grid with delta metrics");
  std::string grid_memory = "dephasing", grid_carrier = "depolarizing";
  double grid_p3 = 0.1;
  int grid_steps = 51;
  bool grid_fixed_beta = false;
  std::string grid_out;
  grid->add_option("--memory-noise", grid_memory);
  grid->add_option("--carrier-noise", grid_carrier);
  grid->add_option("--p3", grid_p3)->check(CLI::Range(0.0, 1.0));
  grid->add_option("--steps", grid_steps)->check(CLI::Range(2, 2048));
  grid->add_flag("--fixed-beta-basis", grid_fixed_beta, "fix beta's x-basis measurement");
  grid->add_option("--out", grid_out, "output CSV")->required();

  // probcurves
  auto* prob = app.add_subcommand("probcurves", "success probability vs carrier noise strength");
  std::string prob_protocol = "alpha", prob_channel = "depolarizing";
  int prob_steps = 101;
  std::string prob_out;
  prob->add_option("--protocol", prob_protocol)->check(CLI::IsMember({"alpha", "beta"}));
  prob->add_option("--channel", prob_channel);
  prob->add_option("--steps", prob_steps)->check(CLI::Range(2, 100000));
  prob->add_option("--out", prob_out, "output CSV")->required();

  // zalm-check
  auto* zalm = app.add_subcommand("zalm-check", "randomized photon-to-spin transfer check");
  int zalm_samples = 100;
  std::uint64_t zalm_seed = 1;
  zalm->add_option("--samples", zalm_samples)->check(CLI::Range(1, 100000));
  zalm->add_option("--seed", zalm_seed, "64-bit generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) {
      if (run_iterations > 4 && !allow_extended)
        throw CLI::ValidationError("--iterations", "more than 4 requires --allow-extended");
      return run_command(run_opts, run_protocol, run_iterations, run_measurement);
    }

    if (*disc) {
      edss::DensityMatrix state =
          disc_state == "alpha-ab"
              ? edss::partial_trace(edss::build_alpha_initial(), {"A", "B"})
              : edss::beta_memory_state();
      edss::DiscordResult r = edss::discord(state, "B");
      std::cout << "state: " << disc_state << "\n"
                << "discord: " << fmt(r.value) << "\n"
                << "optimal_theta: " << fmt(r.optimal_measurement.theta) << "\n"
                << "optimal_phi: " << fmt(r.optimal_measurement.phi) << "\n";
      return 0;
    }

    if (*adv) {
      auto points = edss::adversary_scan(
          adv_protocol == "alpha" ? edss::Protocol::alpha : edss::Protocol::beta, adv_theta_steps,
          adv_phi_steps);
      std::vector<std::string> rows;
      rows.reserve(points.size());
      for (const auto& pt : points)
        rows.push_back(fmt(pt.theta) + "," + fmt(pt.phi) + "," + fmt(pt.discord_ab));
      write_csv(adv_out,
                "adversary --protocol " + adv_protocol + " --theta-steps " +
                    std::to_string(adv_theta_steps) + " --phi-steps " +
                    std::to_string(adv_phi_steps),
                "theta,phi,discord", rows);
      return 0;
    }

    if (*sweep) {
      auto ids = parse_protocols(sweep_protocols);
      auto grid_points = edss::linear_grid(sweep_steps);
      std::vector<edss::SweepRecord> records;
      if (sweep_opts.model == "single") {
        records = edss::sweep_single_channel(
            edss::channel_kind_from_string(sweep_opts.carrier_noise), grid_points, ids);
      } else {
        records = edss::sweep_multichannel_uniform(
            edss::channel_kind_from_string(sweep_opts.memory_noise),
            edss::channel_kind_from_string(sweep_opts.carrier_noise), grid_points, ids);
      }
      std::vector<std::string> rows;
      rows.reserve(records.size());
      for (const auto& r : records) {
        double p = sweep_opts.model == "single" ? r.scenario.p3 : r.scenario.p1;
        rows.push_back(fmt(p) + "," + edss::to_string(r.protocol) + "," + fmt(r.negativity) + "," +
                       fmt(r.success_probability) + "," + fmt(r.optimal_theta) + "," +
                       fmt(r.optimal_phi));
      }
      write_csv(sweep_out,
                "sweep --model " + sweep_opts.model + " --memory-noise " +
                    sweep_opts.memory_noise + " --carrier-noise " + sweep_opts.carrier_noise +
                    " --steps " + std::to_string(sweep_steps) + " --protocols " + sweep_protocols,
                "p,protocol,negativity,probability,theta,phi", rows);
      return 0;
    }

    if (*grid) {
      auto axis = edss::linear_grid(grid_steps);
      edss::GridSweepResult result = edss::sweep_grid_delta(
          edss::channel_kind_from_string(grid_memory), edss::channel_kind_from_string(grid_carrier),
          axis, axis, grid_p3, grid_fixed_beta);
      std::vector<std::string> rows;
      rows.reserve(result.deltas.size());
      for (const auto& d : result.deltas)
        rows.push_back(fmt(d.p1) + "," + fmt(d.p2) + "," + fmt(d.p3) + "," +
                       fmt(d.delta_alpha_beta) + "," + fmt(d.delta_alpha_ded) + "," +
                       fmt(d.delta_beta_ded));
      write_csv(grid_out,
                "grid --memory-noise " + grid_memory + " --carrier-noise " + grid_carrier +
                    " --p3 " + fmt(grid_p3) + " --steps " + std::to_string(grid_steps) +
                    (grid_fixed_beta ? " --fixed-beta-basis" : ""),
                "p1,p2,p3,delta_alpha_beta,delta_alpha_ded,delta_beta_ded", rows);
      return 0;
    }

    if (*prob) {
      auto curve = edss::probability_curves(
          prob_protocol == "alpha" ? edss::ProtocolId::alpha : edss::ProtocolId::beta1,
          edss::channel_kind_from_string(prob_channel), edss::linear_grid(prob_steps));
      std::vector<std::string> rows;
      rows.reserve(curve.size());
      for (const auto& [p, probability] : curve) rows.push_back(fmt(p) + "," + fmt(probability));
      write_csv(prob_out,
                "probcurves --protocol " + prob_protocol + " --channel " + prob_channel +
                    " --steps " + std::to_string(prob_steps),
                "p,probability", rows);
      return 0;
    }

    if (*zalm) {
      std::mt19937_64 rng(zalm_seed);
      double max_err = 0.0, max_prob_dev = 0.0;
      for (int s = 0; s < zalm_samples; ++s) {
        edss::DensityMatrix photons{random_two_qubit_state(rng),
                                    edss::Layout{{"P_A", 2}, {"P_B", 2}}};
        for (const auto& rep : edss::zalm_map(photons)) {
          max_err = std::max(max_err, rep.transfer_error);
          max_prob_dev = std::max(max_prob_dev, std::abs(rep.outcome_probability - 0.25));
        }
      }
      std::cout << "samples: " << zalm_samples << "\nseed: " << zalm_seed
                << "\nmax_transfer_error: " << fmt(max_err)
                << "\nmax_probability_deviation: " << fmt(max_prob_dev) << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
