#include "qtk/widgets.hpp"

#include "qtk/errors.hpp"

namespace qtk {

using namespace emit;

Circuit p9_injection_widget() {
  Circuit c(2);
  c.declare_ancilla(1);
  c.prep(ResourceState::mu, 1);
  c.gate("L(INCdg)", {0, 1});
  c.measure(1, 0);
  c.cc(0, 1, "Q", {0});
  c.cc(0, 2, "Q", {0});
  c.cc(0, 2, "Q", {0});
  c.cc(0, 2, "Z", {0});
  c.cc(0, 1, "INCdg", {1});
  c.cc(0, 2, "INC", {1});
  return c;
}

// Slots: c0 outcome, c1 chain state (0 start, 1 first component flipped, 2 second flipped), c2 success.
Circuit r2_injection_rus() {
  Circuit body(2);
  body.prep(ResourceState::psi, 1);
  body.gate("SUM", {0, 1});
  body.measure(1, 0);
  body.cc(0, 1, "INCdg", {1});
  body.cc(0, 2, "INC", {1});
  body.table(2, 1, 0, {1, 0, 0, 0, 0, 1, 0, 1, 0});
  body.table(1, 1, 0, {0, 1, 2, 2, 0, 0, 1, 0, 0});
  Circuit c(2);
  c.declare_ancilla(1);
  c.table(1, 1, 1, {0, 0, 0, 0, 0, 0, 0, 0, 0});
  c.rus(RusData{body.instructions(), 2, 1, {}, 1000, {3, 1}});
  return c;
}

Circuit c1z_network() {
  Circuit c(2);
  for (int i = 0; i < 3; ++i) {
    c.gate("P9", {1});
    c.gate("L(INC)", {0, 1});
  }
  return c;
}

Circuit c1z_depth_one_network() {
  Circuit c(3);
  c.declare_ancilla(2);
  c.gate("L(INCdg)", {0, 2});
  c.gate("L(INC)", {1, 0});
  c.gate("L(INC)", {1, 2});
  c.gate("P9", {0});
  c.gate("P9", {1});
  c.gate("P9", {2});
  c.gate("L(INCdg)", {1, 2});
  c.gate("L(INCdg)", {1, 0});
  c.gate("L(INC)", {0, 2});
  return c;
}

namespace {

// C_level(Z) up to the target Clifford frame: raw network conjugated on the target by INC, control by TAU[0,level].
void c_z_core(Circuit& c, int level, int ctrl, int tgt, std::optional<int> scratch) {
  c.gate("INC", {tgt});
  if (level != 0) c.gate(level == 1 ? kTau01 : kTau02, {ctrl});
  if (scratch) {
    c.append(c1z_depth_one_network(), {ctrl, tgt, *scratch});
  } else {
    c.append(c1z_network(), {ctrl, tgt});
  }
  c.gate("INCdg", {tgt});
  if (level != 0) c.gate(level == 1 ? kTau01 : kTau02, {ctrl});
}

}  // namespace

Circuit c1z_from_p9() {
  Circuit c(2);
  c_z_core(c, 1, 0, 1, std::nullopt);
  return c;
}

Circuit c1z_depth_one() {
  Circuit c(3);
  c.declare_ancilla(2);
  c_z_core(c, 1, 0, 1, 2);
  return c;
}

namespace emit {

void c_inc(Circuit& c, int level, int ctrl, int tgt, std::optional<int> scratch, bool dagger) {
  if (level < 0 || level > 2) throw SizeError("control level outside 0..2");
  Circuit local(scratch ? 3 : 2);
  local.gate("H", {1});
  c_z_core(local, level, 0, 1, scratch ? std::optional<int>(2) : std::nullopt);
  local.gate("Hdg", {1});
  if (dagger) local = inverse(local);
  if (scratch)
    c.append(local, {ctrl, tgt, *scratch});
  else
    c.append(local, {ctrl, tgt});
}

void cnot(Circuit& c, int ctrl, int tgt, std::optional<int> scratch) {
  c.gate("SUMdg", {tgt, ctrl});
  c.gate(kTau12, {ctrl});
  c.gate(kTau12, {tgt});
  c_inc(c, 1, ctrl, tgt, scratch, true);
  c_inc(c, 1, tgt, ctrl, scratch, false);
  c.gate("TSWAP", {ctrl, tgt});
  c.gate(kTau12, {ctrl});
  c.gate(kTau12, {tgt});
  c.gate("SUM", {tgt, ctrl});
}

void toffoli(Circuit& c, int c1, int c2, int tgt, int anc, std::optional<int> scratch) {
  c.gate("SUM", {c1, c2});
  c_inc(c, 2, c2, anc, scratch, false);
  cnot(c, anc, tgt, scratch);
  c_inc(c, 2, c2, anc, scratch, true);
  c.gate("SUMdg", {c1, c2});
}

void tau_02_20(Circuit& c, int w0, int w1) {
  c_inc(c, 1, w1, w0);
  c_inc(c, 1, w0, w1);
  c_inc(c, 1, w1, w0);
  c_inc(c, 1, w0, w1);
  c_inc(c, 1, w1, w0);
  c.gate("TSWAP", {w0, w1});
}

void tau_20_21(Circuit& c, int w0, int w1) {
  c.gate("INCdg", {w1});
  c.gate("SUMdg", {w1, w0});
  tau_02_20(c, w0, w1);
  c.gate("SUM", {w1, w0});
  c.gate("INC", {w1});
}

void tau_01_20(Circuit& c, int w0, int w1) {
  c.gate(kTau12, {w1});
  tau_02_20(c, w0, w1);
  c.gate(kTau12, {w1});
}

void toffoli_ancilla_free(Circuit& c, int c1, int c2, int tgt) {
  c.gate("SUM", {c1, c2});
  tau_20_21(c, c2, tgt);
  c.gate("SUMdg", {c1, c2});
}

void cccnot(Circuit& c, int c1, int c2, int c3, int tgt, int anc1, int anc2, std::optional<int> scratch) {
  c.gate("SUM", {c1, c3});
  c_inc(c, 2, c3, anc2, scratch, false);
  toffoli(c, anc2, c2, tgt, anc1, scratch);
  c_inc(c, 2, c3, anc2, scratch, true);
  c.gate("SUMdg", {c1, c3});
}

void multi_controlled_not(Circuit& c, const std::vector<int>& ctrls, int tgt, const std::vector<int>& ancillas,
                          std::optional<int> scratch) {
  switch (ctrls.size()) {
    case 0: c.gate(kTau01, {tgt}); return;
    case 1: cnot(c, ctrls[0], tgt, scratch); return;
    case 2:
      if (ancillas.empty()) throw SizeError("controlled-controlled NOT needs one clean ancilla");
      toffoli(c, ctrls[0], ctrls[1], tgt, ancillas[0], scratch);
      return;
    case 3:
      if (ancillas.size() < 2) throw SizeError("triply controlled NOT needs two clean ancillas");
      cccnot(c, ctrls[0], ctrls[1], ctrls[2], tgt, ancillas[0], ancillas[1], scratch);
      return;
    default: throw SizeError("at most three binary controls");
  }
}

}  // namespace emit

Circuit c_binary_inc(int level, bool depth_one) {
  Circuit c(depth_one ? 3 : 2);
  if (depth_one) c.declare_ancilla(2);
  c_inc(c, level, 0, 1, depth_one ? std::optional<int>(2) : std::nullopt);
  return c;
}

Circuit cnot_emulated(bool depth_one) {
  Circuit c(depth_one ? 3 : 2);
  if (depth_one) c.declare_ancilla(2);
  cnot(c, 0, 1, depth_one ? std::optional<int>(2) : std::nullopt);
  return c;
}

Circuit toffoli_emulated(ToffoliMode mode) {
  switch (mode) {
    case ToffoliMode::none: {
      Circuit c(3);
      toffoli_ancilla_free(c, 0, 1, 2);
      return c;
    }
    case ToffoliMode::one_clean: {
      Circuit c(4);
      c.declare_ancilla(3);
      toffoli(c, 0, 1, 2, 3);
      return c;
    }
    case ToffoliMode::one_clean_stacked: {
      Circuit c(5);
      c.declare_ancilla(3);
      c.declare_ancilla(4);
      toffoli(c, 0, 1, 2, 3, 4);
      return c;
    }
  }
  throw SizeError("unknown Toffoli mode");
}

Circuit cccnot_emulated(CccnotMode mode) {
  switch (mode) {
    case CccnotMode::one_clean: {
      Circuit c(5);
      c.declare_ancilla(4);
      c.gate("SUM", {0, 2});
      c_inc(c, 2, 2, 4);
      toffoli_ancilla_free(c, 4, 1, 3);
      c_inc(c, 2, 2, 4, std::nullopt, true);
      c.gate("SUMdg", {0, 2});
      return c;
    }
    case CccnotMode::two_clean: {
      Circuit c(6);
      c.declare_ancilla(4);
      c.declare_ancilla(5);
      cccnot(c, 0, 1, 2, 3, 4, 5);
      return c;
    }
    case CccnotMode::two_clean_stacked: {
      Circuit c(7);
      for (int a : {4, 5, 6}) c.declare_ancilla(a);
      cccnot(c, 0, 1, 2, 3, 4, 5, 6);
      return c;
    }
  }
  return Circuit(4);
}

Circuit add_binary_control(const Circuit& c, int control_wire, std::optional<int> scratch) {
  const int w = c.width();
  if (control_wire < 0 || control_wire >= w) throw WireError("control wire not declared in the emulation");
  if (scratch && (*scratch < 0 || *scratch >= w || *scratch == control_wire)) throw WireError("bad scratch wire");
  const int new_ctrl = w;
  const int anc = w + 1;
  Circuit out(w + 2);
  out.declare_ancilla(anc);
  out.gate("SUM", {control_wire, new_ctrl});
  c_inc(out, 2, new_ctrl, anc, scratch, false);
  std::vector<int> map(w);
  for (int i = 0; i < w; ++i) map[i] = i == control_wire ? anc : i;
  out.append(c, map);
  c_inc(out, 2, new_ctrl, anc, scratch, true);
  out.gate("SUMdg", {control_wire, new_ctrl});
  return out;
}

Circuit horner_gates(HornerKind kind, int f) {
  if (f < 0 || f > 2) throw SizeError("selector value outside 0..2");
  const std::string cf = "C" + std::to_string(f) + "(SUM)";
  switch (kind) {
    case HornerKind::lambda_sum: {
      Circuit c(3);
      c.gate("LSUM", {0, 1, 2});
      return c;
    }
    case HornerKind::lambda_lambda_sum: {
      Circuit c(5);
      c.declare_ancilla(4);
      c.gate("LSUM", {0, 1, 4});
      c.gate("LSUM", {2, 4, 3});
      c.gate("LSUMdg", {0, 1, 4});
      return c;
    }
    case HornerKind::cf_lambda_sum: {
      Circuit c(5);
      c.declare_ancilla(4);
      c.gate("LSUM", {1, 2, 4});
      c.gate(cf, {0, 4, 3});
      c.gate("LSUMdg", {1, 2, 4});
      return c;
    }
    case HornerKind::cf_sum: {
      Circuit c(3);
      c.gate(cf, {0, 1, 2});
      return c;
    }
  }
  return Circuit(3);
}

namespace {

// |0> -> |2> -> H or Hdg, then flag the |2> branch with C_2(INC).
void plus_trial(Circuit& c, bool omega_squared, int out, int flag) {
  c.gate("INCdg", {out});
  c.gate(omega_squared ? "H" : "Hdg", {out});
  c_inc(c, 2, out, flag);
}

void reset_by_measure(std::vector<Correction>& corr, int when, int wire, int slot) {
  corr.push_back({when, {MeasureOp{wire, slot}}});
  corr.push_back({when, {CondGateOp{slot, 1, GateOp{gate("INCdg"), {wire}}}}});
  corr.push_back({when, {CondGateOp{slot, 2, GateOp{gate("INC"), {wire}}}}});
}

Circuit eta_circuit(int width) {
  Circuit body(width);
  plus_trial(body, false, 0, 2);
  plus_trial(body, true, 1, 3);
  body.measure(2, 0);
  body.measure(3, 1);
  body.table(2, 0, 1, {1, 0, 0, 0, 0, 0, 0, 0, 0});
  RusData d{body.instructions(), 2, 1, {}, 1000, {9, 4}};
  d.corrections.push_back({0, {CondGateOp{0, 1, GateOp{gate("INCdg"), {2}}}}});
  d.corrections.push_back({0, {CondGateOp{1, 1, GateOp{gate("INCdg"), {3}}}}});
  reset_by_measure(d.corrections, 0, 0, 3);
  reset_by_measure(d.corrections, 0, 1, 4);
  Circuit c(width);
  for (int a : {2, 3}) c.declare_ancilla(a);
  c.rus(std::move(d));
  return c;
}

}  // namespace

Circuit appendix_a_state_prep(PrepTarget target) {
  switch (target) {
    case PrepTarget::plus_w3:
    case PrepTarget::plus_w3sq: {
      Circuit body(2);
      plus_trial(body, target == PrepTarget::plus_w3sq, 0, 1);
      body.measure(1, 0);
      RusData d{body.instructions(), 0, 0, {}, 1000, {3, 2}};
      d.corrections.push_back({1, {GateOp{gate("INCdg"), {1}}}});
      d.corrections.push_back({1, {GateOp{gate("INC"), {0}}}});
      Circuit c(2);
      c.declare_ancilla(1);
      c.rus(std::move(d));
      return c;
    }
    case PrepTarget::eta: return eta_circuit(4);
    case PrepTarget::psi: {
      // Outcome 2 of the final measurement leaves a state outside the psi Clifford orbit: retry.
      Circuit body = eta_circuit(4);
      body.gate("SUM", {0, 1});
      body.gate("Hdg", {0});
      body.measure(0, 5);
      body.cc(5, 1, "Zdg", {1});
      body.cc(5, 1, "INCdg", {0});
      body.cc(5, 2, "INC", {0});
      body.table(6, 5, 5, {1, 0, 0, 0, 1, 0, 0, 0, 0});
      RusData d{body.instructions(), 6, 1, {}, 1000, {2, 1}};
      reset_by_measure(d.corrections, 0, 1, 7);
      Circuit c(4);
      for (int a : {0, 2, 3}) c.declare_ancilla(a);
      c.rus(std::move(d));
      return c;
    }
  }
  return Circuit(1);
}

}  // namespace qtk
