#include <doctest.h>

#include <array>

#include "qtk/errors.hpp"
#include "qtk/simulator.hpp"
#include "qtk/widgets.hpp"
#include "test_util.hpp"

using namespace qtk;
using namespace qtk::testing;

TEST_CASE("basic gate application") {
  StateVector s(2);
  s.apply(primitive_matrix("INC"), {0});
  CHECK(std::abs(s.amplitude(1) - 1.0) < 1e-15);
  StateVector t = StateVector::basis(2, 2 + 3 * 2);
  t.apply(primitive_matrix("SUM"), {0, 1});
  CHECK(std::abs(t.amplitude(2 + 3 * 1) - 1.0) < 1e-15);
  StateVector h(1);
  h.apply(primitive_matrix("H"), {0});
  h.apply(primitive_matrix("H").adjoint(), {0});
  CHECK(std::abs(h.amplitude(0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(h.apply(primitive_matrix("SUM"), {0, 0}), WireError);
  CHECK_THROWS_AS(StateVector(3).apply(primitive_matrix("SUM"), {0, 3}), WireError);
}

TEST_CASE("measurement statistics") {
  Rng rng(1);
  CHECK(StateVector::basis(1, 1).measure(0, rng) == 1);
  std::array<int, 3> hist{};
  StateVector plus(1);
  plus.apply(primitive_matrix("H"), {0});
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    StateVector s = plus;
    ++hist[s.measure(0, rng)];
  }
  for (int v : hist) CHECK(std::abs(v / double(n) - 1.0 / 3.0) < 0.02);
  // psi (x) generic input, then SUM: first wire reads 0 with probability 1/3
  Rng r2(8);
  const StateVector in = StateVector::random(1, r2);
  std::vector<cplx> amps(9, 0.0);
  const double q = 1 / std::sqrt(3.0);
  const std::array<cplx, 3> psi{q, q, -q};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) amps[a + 3 * b] = psi[a] * in.amplitude(b);
  StateVector joint = StateVector::from_amplitudes(2, amps);
  joint.apply(primitive_matrix("SUM"), {1, 0});
  CHECK(joint.probability(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  StateVector zero(1);
  CHECK_THROWS_AS(zero.collapse(0, 2), SimulationError);
}

TEST_CASE("run: empty circuit, determinism, norm") {
  Rng rng(4);
  const StateVector in = StateVector::random(2, rng);
  CHECK(distance_up_to_phase(run(Circuit(2), in, 1).state, in) == 0.0);
  const Circuit w = r2_injection_rus();
  const StateVector in1 = StateVector::random(1, rng).extended(1);
  const auto a = run(w, in1, 42), b = run(w, in1, 42);
  CHECK(a.slots == b.slots);
  CHECK(a.rus_trials == b.rus_trials);
  CHECK(a.state.amplitudes() == b.state.amplitudes());
  RunOptions opts;
  bool normed = true;
  opts.on_step = [&](const StateVector& s) { normed = normed && std::abs(s.norm() - 1.0) < 1e-10; };
  run(appendix_a_state_prep(PrepTarget::psi), StateVector(4), 5, opts);
  CHECK(normed);
}

TEST_CASE("ideal and injected modes agree on widgets") {
  Rng rng(21);
  for (const Circuit& c : {c1z_from_p9(), cnot_emulated(true), toffoli_emulated(ToffoliMode::one_clean)}) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      StateVector in = StateVector::random(c.width(), rng);
      const auto ideal = run(c, in, i);
      const auto inj = run(c, in, i, GateMode::injected);
      worst = std::max(worst, distance_up_to_phase(ideal.state, inj.state));
      CHECK(inj.consumed.at("mu") == count_resources(c).p9_count);
    }
    CHECK(worst < 1e-9);
  }
  Circuit r(2);
  r.gate("R2", {0}).gate("SUM", {0, 1}).gate("R2", {1});
  for (int i = 0; i < 20; ++i) {
    StateVector in = StateVector::random(2, rng);
    CHECK(distance_up_to_phase(run(r, in, i).state, run(r, in, i, GateMode::injected).state) < 1e-9);
  }
}

TEST_CASE("RUS cap raises non-termination with the trial log") {
  Circuit c(1);
  RusData d;
  d.body.push_back({MeasureOp{0, 0}});
  d.slot = 0;
  d.value = 1;
  d.max_iterations = 7;
  c.rus(d);
  try {
    run(c, StateVector(1), 0);
    CHECK(false);
  } catch (const NonTerminationError& e) {
    CHECK(e.trial_log == std::vector<int>(7, 0));
  }
}

TEST_CASE("sparse and dense agree") {
  const Circuit c = toffoli_emulated(ToffoliMode::one_clean_stacked);
  for (std::uint64_t b = 0; b < 27; b += 4) {
    const auto dense = run(c, StateVector::basis(c.width(), b), 0).state;
    const auto sparse = run(c, SparseState::basis(c.width(), b), 0).state;
    for (const auto& [idx, a] : sparse.entries()) CHECK(std::abs(dense.amplitude(idx) - a) < 1e-12);
    CHECK(sparse.norm() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(StateVector(max_dense_width() + 1), SizeError);
}
