#include <string>

#include "qtk/arithmetic.hpp"
#include "qtk/errors.hpp"
#include "qtk/widgets.hpp"

namespace qtk {

namespace {

int bit(std::uint64_t v, int j) { return static_cast<int>((v >> j) & 1u); }

void check_register(std::uint64_t value, const BinaryWires& w, const char* what) {
  const int n = static_cast<int>(w.data.size());
  if (n < 1 || n > 62) throw SizeError(std::string(what) + ": register must hold 1..62 bits");
  if (value >> n) throw ArithmeticError(std::string(what) + ": constant " + std::to_string(value) +
                                        " does not fit in " + std::to_string(n) + " bits");
  if (w.top < 0) throw WireError(std::string(what) + ": missing top wire");
  if (w.controls.size() > 2) throw SizeError(std::string(what) + ": at most two controls");
  if (w.ancillas.size() < w.controls.size()) throw SizeError(std::string(what) + ": one clean ancilla per control");
}

// Binary Y0/Y1 on (carry, data): data ends with the next carry.
void emit_y(Circuit& c, int a_bit, int cw, int bw, bool undo) {
  Circuit y(2);
  if (a_bit == 0) {
    y.gate(emit::kTau01, {0});
    y.gate("SUM", {1, 0});
    emit::c_inc(y, 2, 0, 1, std::nullopt, true);
  } else {
    y.gate(emit::kTau01, {1});
    y.gate("SUM", {1, 0});
    y.gate(emit::kTau01, {1});
    emit::c_inc(y, 2, 0, 1);
  }
  c.append(undo ? inverse(y) : y, {cw, bw});
}

// Wire holding c_j during the ladder. c_0 = 0 lives on top; c_1 is either 0 (top) or b_0 itself,
// so the first Y gate is never needed.
int carry_wire(std::uint64_t a, const BinaryWires& w, int j) {
  if (j == 0) return w.top;
  if (j == 1) return bit(a, 0) ? w.data[0] : w.top;
  return w.data[j - 1];
}

void ladder(Circuit& c, std::uint64_t a, const BinaryWires& w, bool undo, int j) {
  emit_y(c, bit(a, j), carry_wire(a, w, j), w.data[j], undo);
}

std::vector<int> with(std::vector<int> v, int extra) {
  v.push_back(extra);
  return v;
}

void copy_top_carry(Circuit& c, std::uint64_t a, const BinaryWires& w, bool negate) {
  const int n = static_cast<int>(w.data.size());
  const int cw = carry_wire(a, w, n);
  if (negate) c.gate(emit::kTau01, {cw});
  emit::multi_controlled_not(c, with(w.controls, cw), w.out, w.ancillas);
  if (negate) c.gate(emit::kTau01, {cw});
}

}  // namespace

Circuit y_gate(int a_bit) {
  if (a_bit != 0 && a_bit != 1) throw ArithmeticError("binary digit must be 0 or 1");
  Circuit c(2);
  emit_y(c, a_bit, 0, 1, false);
  return c;
}

void emit_binary_shift(Circuit& c, std::uint64_t a, const BinaryWires& w, CarryCopy copy) {
  check_register(a, w, "binary shift");
  const int n = static_cast<int>(w.data.size());
  for (int j = 1; j < n; ++j) ladder(c, a, w, false, j);
  if (copy != CarryCopy::none) {
    if (w.out < 0) throw WireError("binary shift: carry copy needs an output wire");
    copy_top_carry(c, a, w, copy == CarryCopy::not_carry);
  }
  for (int j = n - 1; j >= 1; --j) {
    ladder(c, a, w, true, j);
    // b_j ^= controls & (c_j ^ a_j)
    const int cw = carry_wire(a, w, j);
    if (bit(a, j)) c.gate(emit::kTau01, {cw});
    emit::multi_controlled_not(c, with(w.controls, cw), w.data[j], w.ancillas);
    if (bit(a, j)) c.gate(emit::kTau01, {cw});
  }
  if (bit(a, 0)) emit::multi_controlled_not(c, w.controls, w.data[0], w.ancillas);
}

void emit_binary_compare(Circuit& c, std::uint64_t t, const BinaryWires& w) {
  const int n = static_cast<int>(w.data.size());
  if (n >= 1 && n <= 62 && (t >> n)) return;  // no register value reaches t
  check_register(t, w, "binary compare");
  if (w.out < 0) throw WireError("binary compare: missing result wire");
  // value >= t  iff  (2^n - 1 - value) + t has no top carry
  for (int q : w.data) c.gate(emit::kTau01, {q});
  for (int j = 1; j < n; ++j) ladder(c, t, w, false, j);
  copy_top_carry(c, t, w, true);
  for (int j = n - 1; j >= 1; --j) ladder(c, t, w, true, j);
  for (int q : w.data) c.gate(emit::kTau01, {q});
}

void emit_binary_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus, const BinaryWires& w) {
  const int n = static_cast<int>(w.data.size());
  if (n < 1 || n > 62 || modulus < 2 || (modulus >> n)) throw ArithmeticError("modulus must satisfy 2 <= N < 2^n");
  if (a >= modulus) throw ArithmeticError("modular shift constant must be below the modulus");
  if (w.out < 0) throw WireError("modular shift: missing flag wire");
  if (w.ancillas.empty()) throw SizeError("modular shift: needs at least one clean ancilla");
  const std::uint64_t full = std::uint64_t{1} << n;
  // flag = controls & (b + a < N), from the top carry of b + a + 2^n - N
  emit_binary_shift(c, a + full - modulus, w, CarryCopy::not_carry);
  BinaryWires fix = w;
  fix.controls = {w.out};
  emit_binary_shift(c, modulus, fix, CarryCopy::none);
  // the result is >= a exactly when the correction fired
  emit_binary_compare(c, a, w);
}

}  // namespace qtk
