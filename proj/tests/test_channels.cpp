#include "edss/channels.hpp"
#include "edss/gates.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace edss;

TEST_CASE("channel kind names round-trip") {
  for (ChannelKind kind : {ChannelKind::identity, ChannelKind::depolarizing,
                           ChannelKind::dephasing, ChannelKind::amplitude_damping}) {
    CHECK(channel_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(channel_kind_from_string("ad") == ChannelKind::amplitude_damping);
  CHECK_THROWS_AS((void)channel_kind_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("make_channel rejects strengths outside [0,1]") {
  CHECK_THROWS_AS((void)make_channel(ChannelKind::depolarizing, -0.01), std::invalid_argument);
  CHECK_THROWS_AS((void)make_channel(ChannelKind::dephasing, 1.01), std::invalid_argument);
}

TEST_CASE("kraus operators are complete for every kind and strength") {
  for (ChannelKind kind : {ChannelKind::identity, ChannelKind::depolarizing,
                           ChannelKind::dephasing, ChannelKind::amplitude_damping}) {
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      KrausChannel ch = make_channel(kind, p);
      Matrix sum = Matrix::Zero(2, 2);
      for (const Matrix& k : ch.kraus) sum += k.adjoint() * k;
      CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("depolarizing contracts the Bloch vector by 1 - 4p/3") {
  std::mt19937_64 rng(47);
  for (double p : {0.1, 0.4, 0.75}) {
    KrausChannel ch = make_channel(ChannelKind::depolarizing, p);
    DensityMatrix rho = testutil::random_state(Layout{{"A", 2}}, rng);
    DensityMatrix out = apply_kraus(rho, ch.kraus, "A");
    double scale = 1.0 - 4.0 * p / 3.0;
    for (const Matrix& sigma : {Matrix(pauli_x()), Matrix(pauli_y()), Matrix(pauli_z())}) {
      double before = (sigma * rho.data()).trace().real();
      double after = (sigma * out.data()).trace().real();
      CHECK(after == doctest::Approx(scale * before).epsilon(1e-10));
    }
  }
}

TEST_CASE("dephasing scales coherences by 1 - p") {
  DensityMatrix plus = pure(ket_x(0), Layout{{"A", 2}});
  DensityMatrix out = apply_kraus(plus, make_channel(ChannelKind::dephasing, 0.3).kraus, "A");
  CHECK(out.data()(0, 1).real() == doctest::Approx(0.7 * 0.5).epsilon(1e-12));
  CHECK(out.data()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("amplitude damping decays toward the ground state") {
  DensityMatrix one = pure(ket_z(1), Layout{{"A", 2}});
  DensityMatrix out = apply_kraus(one, make_channel(ChannelKind::amplitude_damping, 1.0).kraus, "A");
  CHECK((out.data() - pure(ket_z(0), out.layout()).data()).cwiseAbs().maxCoeff() < 1e-12);

  DensityMatrix ground = pure(ket_z(0), Layout{{"A", 2}});
  out = apply_kraus(ground, make_channel(ChannelKind::amplitude_damping, 0.6).kraus, "A");
  CHECK((out.data() - ground.data()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scenario factories populate the expected slots") {
  NoiseScenario s = NoiseScenario::single(ChannelKind::depolarizing, 0.3);
  CHECK(s.model == NoiseModel::single_channel);
  CHECK(s.carrier_kind == ChannelKind::depolarizing);
  CHECK(s.p3 == doctest::Approx(0.3));

  NoiseScenario m = NoiseScenario::multichannel_uniform(ChannelKind::dephasing,
                                                        ChannelKind::depolarizing, 0.2);
  CHECK(m.model == NoiseModel::multichannel);
  CHECK(m.p1 == doctest::Approx(0.2));
  CHECK(m.p2 == doctest::Approx(0.2));
  CHECK(m.p3 == doctest::Approx(0.2));

  NoiseScenario d = NoiseScenario::dissimilar(ChannelKind::amplitude_damping,
                                              ChannelKind::depolarizing, 0.1, 0.2, 0.3);
  CHECK(d.p1 == doctest::Approx(0.1));
  CHECK(d.p2 == doctest::Approx(0.2));
  CHECK(d.p3 == doctest::Approx(0.3));
  CHECK(d.standard_scenario());

  NoiseScenario bad = NoiseScenario::single(ChannelKind::dephasing, 1.5);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("ded noise is local on both halves of the Bell pair") {
  DensityMatrix bell = pure(bell_phi_plus(), Layout{{"A", 2}, {"B", 2}});

  DensityMatrix same = apply_ded_noise(bell, NoiseScenario::noiseless());
  CHECK((same.data() - bell.data()).cwiseAbs().maxCoeff() < 1e-14);

  // Local dephasing with strength p on each qubit scales the |00><11|
  // coherence by (1-p)^2.
  double p = 0.4;
  DensityMatrix out = apply_ded_noise(bell, NoiseScenario::single(ChannelKind::dephasing, p));
  CHECK(out.data()(0, 3).real() == doctest::Approx(0.5 * (1 - p) * (1 - p)).epsilon(1e-12));
  CHECK(out.data()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("carrier noise touches only K; memory noise only A and B") {
  std::mt19937_64 rng(53);
  DensityMatrix rho = testutil::random_state(Layout{{"A", 2}, {"B", 2}, {"K", 2}}, rng);

  DensityMatrix carrier_hit =
      apply_carrier_noise(rho, make_channel(ChannelKind::depolarizing, 0.7));
  CHECK((partial_trace(carrier_hit, {"A", "B"}).data() -
         partial_trace(rho, {"A", "B"}).data())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  DensityMatrix memory_hit = apply_memory_noise(
      rho, make_channel(ChannelKind::amplitude_damping, 0.3),
      make_channel(ChannelKind::dephasing, 0.8));
  CHECK((partial_trace(memory_hit, {"K"}).data() - partial_trace(rho, {"K"}).data())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}
