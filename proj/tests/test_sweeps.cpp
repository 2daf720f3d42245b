#include "edss/gates.hpp"
#include "edss/protocols.hpp"
#include "edss/sweeps.hpp"

#include "test_util.hpp"

#include <cstdlib>
#include <doctest.h>

using namespace edss;

TEST_CASE("protocol id names round-trip") {
  for (ProtocolId id : all_protocol_ids()) CHECK(protocol_id_from_string(to_string(id)) == id);
  CHECK(protocol_id_from_string("beta") == ProtocolId::beta1);
  CHECK_THROWS_AS((void)protocol_id_from_string("gamma"), std::invalid_argument);
}

TEST_CASE("linear_grid spans [0,1] inclusively") {
  std::vector<double> g = linear_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(0.0));
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK_THROWS_AS((void)linear_grid(1), std::invalid_argument);
}

TEST_CASE("parallel_for writes every index exactly once, independent of worker count") {
  const int n = 257;
  std::vector<int> serial(n, -1), threaded(n, -1);
  setenv("EDSS_THREADS", "1", 1);
  parallel_for(n, [&](int i) { serial[i] = i * i; });
  setenv("EDSS_THREADS", "7", 1);
  parallel_for(n, [&](int i) { threaded[i] = i * i; });
  unsetenv("EDSS_THREADS");
  CHECK(serial == threaded);
  for (int i = 0; i < n; ++i) CHECK(serial[i] == i * i);
}

TEST_CASE("optimize_measurement recovers the known optima of both protocols") {
  DensityMatrix alpha = build_alpha_initial();
  alpha = apply_unitary(alpha, {cnot(), {"A", "K"}});
  alpha = apply_unitary(alpha, {cnot(), {"B", "K"}});
  OptimalMeasurement ma = optimize_measurement(alpha);
  CHECK(ma.negativity == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(ma.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(ma.selected().theta == doctest::Approx(0.0).epsilon(1e-4));

  DensityMatrix beta = build_beta_initial(-0.5);
  beta = apply_unitary(beta, {cphase(), {"A", "K"}});
  beta = apply_unitary(beta, {cphase(), {"B", "K"}});
  OptimalMeasurement mb = optimize_measurement(beta);
  CHECK(mb.negativity == doctest::Approx(0.1).epsilon(1e-8));
  CHECK(mb.probability == doctest::Approx(5.0 / 8.0).epsilon(1e-8));
  CHECK(mb.selected().theta == doctest::Approx(M_PI / 2.0).epsilon(1e-3));
  CHECK(std::abs(mb.selected().phi - M_PI) < 1e-2);
}

TEST_CASE("optimize_measurement on a flat surface reports the canonical point") {
  DensityMatrix prod = tensor(
      tensor(maximally_mixed(Layout{{"A", 2}}), maximally_mixed(Layout{{"B", 2}})),
      maximally_mixed(Layout{{"K", 2}}));
  OptimalMeasurement m = optimize_measurement(prod);
  CHECK(m.negativity == 0.0);
  CHECK(m.projector.theta == 0.0);
  CHECK(m.projector.phi == 0.0);
}

TEST_CASE("single-channel sweeps agree with direct protocol runs") {
  std::vector<double> grid = {0.0, 0.5};
  std::vector<SweepRecord> recs =
      sweep_single_channel(ChannelKind::depolarizing, grid, {ProtocolId::alpha, ProtocolId::ded});
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].negativity == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(recs[0].success_probability == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(recs[1].negativity == doctest::Approx(0.5).epsilon(1e-12));

  NoiseScenario half = NoiseScenario::single(ChannelKind::depolarizing, 0.5);
  CHECK(recs[2].negativity ==
        doctest::Approx(run_alpha(half, Measurement::optimal()).negativity_ab).epsilon(1e-9));
  CHECK(recs[3].negativity == doctest::Approx(run_ded(half).negativity_ab).epsilon(1e-12));
}

TEST_CASE("multichannel uniform sweeps populate every protocol slot") {
  std::vector<SweepRecord> recs = sweep_multichannel_uniform(
      ChannelKind::dephasing, ChannelKind::depolarizing, {0.2}, {ProtocolId::beta1});
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].scenario.model == NoiseModel::multichannel);
  NoiseScenario sc =
      NoiseScenario::multichannel_uniform(ChannelKind::dephasing, ChannelKind::depolarizing, 0.2);
  CHECK(recs[0].negativity ==
        doctest::Approx(run_beta(sc, 1, Measurement::optimal()).negativity_ab).epsilon(1e-9));
}

TEST_CASE("delta grids compare the protocols pointwise") {
  GridSweepResult res = sweep_grid_delta(ChannelKind::dephasing, ChannelKind::depolarizing,
                                         {0.0, 0.3}, {0.0, 0.3}, 0.0);
  REQUIRE(res.deltas.size() == 4);
  REQUIRE(res.records.size() == 12);

  // Noise-free corner: alpha holds 0.5, beta-1 holds 0.1, DED holds 0.5.
  const DeltaRecord& corner = res.deltas.front();
  CHECK(corner.p1 == doctest::Approx(0.0));
  CHECK(corner.p2 == doctest::Approx(0.0));
  CHECK(corner.delta_alpha_beta == doctest::Approx(-0.4).epsilon(1e-8));
  CHECK(corner.delta_alpha_ded == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(corner.delta_beta_ded == doctest::Approx(-0.4).epsilon(1e-8));
  for (const DeltaRecord& d : res.deltas) {
    CHECK(d.delta_alpha_ded <= 1e-12);
    CHECK(d.delta_beta_ded <= 1e-12);
  }
}

TEST_CASE("probability curves reproduce the closed forms") {
  std::vector<double> grid = {0.0, 0.4, 1.0};
  auto curve = probability_curves(ProtocolId::alpha, ChannelKind::amplitude_damping, grid);
  REQUIRE(curve.size() == 3);
  for (auto [p, prob] : curve) CHECK(prob == doctest::Approx(1.0 / 3.0 + p / 6.0).epsilon(1e-12));

  curve = probability_curves(ProtocolId::beta1, ChannelKind::dephasing, grid);
  for (auto [p, prob] : curve) CHECK(prob == doctest::Approx(5.0 / 8.0 - p / 8.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)probability_curves(ProtocolId::ded, ChannelKind::dephasing, grid),
                  std::invalid_argument);
}
