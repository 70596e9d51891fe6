#include <string>

#include "qtk/arithmetic.hpp"
#include "qtk/errors.hpp"
#include "qtk/widgets.hpp"

namespace qtk {

namespace {

int trit(std::uint64_t v, int i) {
  for (int k = 0; k < i; ++k) v /= 3;
  return static_cast<int>(v % 3);
}

void check_register(std::uint64_t value, const TernaryWires& w, const char* what) {
  const int m = static_cast<int>(w.data.size());
  if (m < 1 || m > 39) throw SizeError(std::string(what) + ": register must hold 1..39 trits");
  if (value >= pow3u(m))
    throw ArithmeticError(std::string(what) + ": constant " + std::to_string(value) + " does not fit in " +
                          std::to_string(m) + " trits");
  if (w.top < 0) throw WireError(std::string(what) + ": missing top wire");
  int needed = 0;
  for (int i = 0; i < m; ++i) needed += trit(value, i) != 1;
  if (static_cast<int>(w.carry_ancillas.size()) < needed)
    throw SizeError(std::string(what) + ": needs " + std::to_string(needed) + " carry ancillas");
  if (w.control.select && !w.control.horner_ancilla && w.control.multiplier)
    throw SizeError(std::string(what) + ": selector with multiplier needs a clean ancilla");
}

// dst += sign * (control factor) * src
void accumulate(Circuit& c, const TernaryGate& g, int src, int dst, int sign) {
  const bool dg = sign < 0;
  if (!g.select) {
    if (g.multiplier)
      c.gate(dg ? "LSUMdg" : "LSUM", {*g.multiplier, src, dst});
    else
      c.gate(dg ? "SUMdg" : "SUM", {src, dst});
    return;
  }
  const std::string sel = "C" + std::to_string(g.select_level) + "(SUM)" + (dg ? "dg" : "");
  if (!g.multiplier) {
    c.gate(sel, {*g.select, src, dst});
    return;
  }
  const int anc = *g.horner_ancilla;
  c.gate("LSUM", {*g.multiplier, src, anc});
  c.gate(sel, {*g.select, anc, dst});
  c.gate("LSUMdg", {*g.multiplier, src, anc});
}

struct Ladder {
  std::uint64_t a;
  const TernaryWires& w;
  std::vector<int> carry;  // carry[i] = wire holding c_i once gates 0..i-1 ran
  std::vector<int> anc;    // ancilla of digit i, or -1

  Ladder(std::uint64_t value, const TernaryWires& wires) : a(value), w(wires) {
    const int m = static_cast<int>(w.data.size());
    carry.push_back(w.top);
    std::size_t next = 0;
    for (int i = 0; i < m; ++i) {
      if (trit(a, i) == 1) {
        anc.push_back(-1);
        carry.push_back(w.data[i]);
      } else {
        anc.push_back(w.carry_ancillas[next++]);
        carry.push_back(anc.back());
      }
    }
  }

  int digits() const { return static_cast<int>(w.data.size()); }

  void gate(Circuit& c, int i, bool undo) const {
    const int ai = trit(a, i);
    Circuit g(ai == 1 ? 2 : 3);
    // local wires: 0 carry in, 1 data digit, 2 ancilla
    if (ai == 1) {
      g.gate("TSWAP", {0, 1});
      emit::tau_01_20(g, 0, 1);
    } else {
      if (ai == 2) {
        g.gate(emit::kTau01, {0});
        g.gate(emit::kTau02, {1});
      }
      g.gate("C2(SUM)", {1, 0, 2});
      if (ai == 2) {
        g.gate(emit::kTau02, {1});
        g.gate(emit::kTau01, {0});
        g.gate(emit::kTau01, {2});
      }
    }
    if (undo) g = inverse(g);
    if (ai == 1) {
      c.append(g, {carry[i], w.data[i]});
    } else {
      c.append(g, {carry[i], w.data[i], anc[i]});
    }
  }

  void forward(Circuit& c) const {
    for (int i = 0; i < digits(); ++i) gate(c, i, false);
  }

  void copy(Circuit& c, CarryCopy mode, int sign) const {
    if (mode == CarryCopy::none) return;
    if (w.out < 0) throw WireError("ternary shift: carry copy needs an output wire");
    const int cw = carry.back();
    if (mode == CarryCopy::not_carry) c.gate(emit::kTau01, {cw});
    accumulate(c, w.control, cw, w.out, sign);
    if (mode == CarryCopy::not_carry) c.gate(emit::kTau01, {cw});
  }
};

}  // namespace

int ternary_weight_one(std::uint64_t v, int digits) {
  int ones = 0;
  for (int i = 0; i < digits; ++i) ones += trit(v, i) == 1;
  return ones;
}

void emit_ternary_shift(Circuit& c, std::uint64_t a, const TernaryWires& w, CarryCopy copy, int copy_sign) {
  check_register(a, w, "ternary shift");
  const Ladder l(a, w);
  l.forward(c);
  l.copy(c, copy, copy_sign);
  for (int i = l.digits() - 1; i >= 0; --i) {
    l.gate(c, i, true);
    const int cw = l.carry[i];
    const int ai = trit(a, i);
    for (int k = 0; k < ai; ++k) c.gate("INC", {cw});
    accumulate(c, w.control, cw, w.data[i], +1);
    for (int k = 0; k < ai; ++k) c.gate("INCdg", {cw});
  }
}

void emit_ternary_compare(Circuit& c, std::uint64_t t, const TernaryWires& w, int sign) {
  const int m = static_cast<int>(w.data.size());
  if (m >= 1 && m <= 39 && t >= pow3u(m)) return;
  check_register(t, w, "ternary compare");
  if (w.out < 0) throw WireError("ternary compare: missing result wire");
  // value >= t  iff  (3^m - 1 - value) + t has no top carry
  for (int q : w.data) c.gate(emit::kTau02, {q});
  const Ladder l(t, w);
  l.forward(c);
  l.copy(c, CarryCopy::not_carry, sign);
  for (int i = m - 1; i >= 0; --i) l.gate(c, i, true);
  for (int q : w.data) c.gate(emit::kTau02, {q});
}

ModShiftStats emit_ternary_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus, const TernaryWires& w,
                                     const std::vector<ModTerm>& terms) {
  const int m = static_cast<int>(w.data.size());
  if (m < 1 || m > 39 || modulus < 2 || pow3u(m) < 2 * modulus)
    throw ArithmeticError("ternary modular shift needs 3^m >= 2N");
  if (a >= modulus) throw ArithmeticError("modular shift constant must be below the modulus");
  if (w.out < 0) throw WireError("modular shift: missing flag wire");
  if (w.control.multiplier || w.control.select) throw ArithmeticError("modular shift takes its controls as terms");
  if (terms.empty()) throw ArithmeticError("modular shift needs at least one term");
  const std::uint64_t full = pow3u(m);
  const bool small = 2 * a < modulus;
  ModShiftStats stats;

  auto gated = [&](const std::optional<int>& wire) {
    TernaryWires v = w;
    v.control.multiplier = wire;
    return v;
  };

  // Speculative b + g(a - N); the flag collects "result negative" for the active term.
  for (const ModTerm& t : terms) {
    const std::uint64_t g = static_cast<std::uint64_t>(t.multiplier);
    const std::uint64_t k = (full + g * a - g * modulus) % full;
    emit_ternary_shift(c, k, gated(t.indicator), CarryCopy::not_carry, +1);
    ++stats.ladders;
  }
  ++stats.blocks;

  // With 2a < N the doubled term still needs +N before its sign is known.
  for (const ModTerm& t : terms) {
    if (!small || t.multiplier != 2) continue;
    emit_ternary_shift(c, modulus, gated(t.indicator), CarryCopy::carry, -1);
    ++stats.ladders;
    ++stats.blocks;
  }

  emit_ternary_shift(c, modulus, gated(w.out), CarryCopy::none);
  ++stats.ladders;
  ++stats.blocks;

  // The flag was set exactly when the result is at or above the term's threshold.
  for (const ModTerm& t : terms) {
    std::uint64_t threshold = a;
    if (t.multiplier == 2) threshold = small ? 2 * a : 2 * a - modulus;
    emit_ternary_compare(c, threshold, gated(t.indicator), -1);
    ++stats.ladders;
  }
  ++stats.blocks;
  return stats;
}

ModShiftStats emit_ternary_controlled_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus,
                                                const TernaryWires& w, const TernaryModControl& ctl) {
  if (ctl.multiplier < 0 || ctl.indicators[0] < 0 || ctl.indicators[1] < 0)
    throw WireError("controlled modular shift: missing multiplier or indicator wires");
  if (ctl.select && ctl.tmp < 0) throw WireError("controlled modular shift: selector needs a tmp wire");
  if (ctl.select_level < 0 || ctl.select_level > 2) throw ArithmeticError("selector level outside 0..2");
  // indicator_g = [multiplier == g] (and selector on its level)
  Circuit ind(c.width());
  if (ctl.select) {
    emit::c_inc(ind, ctl.select_level, *ctl.select, ctl.tmp);
    for (int g = 1; g <= 2; ++g)
      ind.gate("C" + std::to_string(g) + "(SUM)", {ctl.multiplier, ctl.tmp, ctl.indicators[g - 1]});
  } else {
    for (int g = 1; g <= 2; ++g) emit::c_inc(ind, g, ctl.multiplier, ctl.indicators[g - 1]);
  }
  c.append(ind);
  const ModShiftStats stats =
      emit_ternary_mod_shift(c, a, modulus, w, {{ctl.indicators[0], 1}, {ctl.indicators[1], 2}});
  c.append(inverse(ind));
  return stats;
}

}  // namespace qtk
