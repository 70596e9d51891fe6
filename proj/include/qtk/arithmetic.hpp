#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qtk/circuit.hpp"
#include "qtk/gate_matrix.hpp"

namespace qtk {

enum class Encoding { binary, ternary };

// Trits needed for n bits.
int ternary_digits_for_bits(int bits);
// Smallest m with 3^m >= 2N, the headroom the ternary modular shift relies on.
int ternary_digits_for_modulus(std::uint64_t modulus);
// Smallest n with 2^n > N.
int binary_digits_for_modulus(std::uint64_t modulus);
// Number of 1 digits of v in base 3.
int ternary_weight_one(std::uint64_t v, int digits);

enum class CarryCopy { none, carry, not_carry };

// Two-wire (carry, data) gate leaving the next carry on the data wire for binary inputs.
Circuit y_gate(int a_bit);

// ----- emulated binary -----

// Wires for the binary ripple shift. Data wires hold b_0..b_{n-1}; `top` starts in |0>.
// Every listed control must be 1 for the shift to act; `ancillas` are clean workspace,
// one per control.
struct BinaryWires {
  std::vector<int> data;
  int top = -1;
  int out = -1;  // receives the (optionally negated) top carry, xor'ed, when copying
  std::vector<int> controls;
  std::vector<int> ancillas;
};

// b -> b + a mod 2^n, acting only when all controls are 1.
void emit_binary_shift(Circuit& c, std::uint64_t a, const BinaryWires& w, CarryCopy copy = CarryCopy::carry);
// Flips `out` iff all controls are 1 and the register value is >= t. Register restored.
void emit_binary_compare(Circuit& c, std::uint64_t t, const BinaryWires& w);
// b -> (b + a) mod N for b < N; `out` is the clean flag ancilla, restored.
void emit_binary_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus, const BinaryWires& w);

// ----- ternary -----

// A control for ternary digit sums: none, a single wire whose value multiplies the sum,
// or a strict selector (acts only when `select` == select_level) combined with a multiplier wire.
struct TernaryGate {
  std::optional<int> multiplier;
  std::optional<int> select;
  int select_level = 1;
  std::optional<int> horner_ancilla;  // needed with a selector
};

struct TernaryWires {
  std::vector<int> data;
  int top = -1;
  int out = -1;
  std::vector<int> carry_ancillas;  // one per digit with a_i != 1; the first ones are used
  TernaryGate control;
};

// Digit-wise b_i += m * (a_i + c_i) with c the carries of a + b and m the control value.
// This is the shift by a for control values 0 and 1. `copy_sign` = +1 adds the carry to
// `out`, -1 subtracts it.
void emit_ternary_shift(Circuit& c, std::uint64_t a, const TernaryWires& w, CarryCopy copy = CarryCopy::carry,
                        int copy_sign = +1);
// out += sign * m * [value >= t]. Register restored.
void emit_ternary_compare(Circuit& c, std::uint64_t t, const TernaryWires& w, int sign = +1);

// Strict indicator wires for the modular shift: value g in {1,2} multiplies the constant.
struct ModTerm {
  std::optional<int> indicator;  // none: unconditional
  int multiplier = 1;
};

struct ModShiftStats {
  int blocks = 0;   // additive-shift boxes of the top-level layout
  int ladders = 0;  // ripple ladders actually emitted
};

// b -> (b + sum_g [indicator_g] * g * a) mod N for b < N, at most one indicator set.
// `w.out` is the clean flag; `w.control` must be empty.
ModShiftStats emit_ternary_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus, const TernaryWires& w,
                                     const std::vector<ModTerm>& terms);

// A ternary multiplier wire (value g multiplies the constant), optionally gated by a strict
// selector. Indicator and tmp wires are clean workspace.
struct TernaryModControl {
  int multiplier = -1;
  std::optional<int> select;
  int select_level = 1;
  std::array<int, 2> indicators{-1, -1};
  int tmp = -1;  // needed with a selector
};

// b -> (b + [select] * m * a) mod N with m the multiplier value.
ModShiftStats emit_ternary_controlled_mod_shift(Circuit& c, std::uint64_t a, std::uint64_t modulus,
                                                const TernaryWires& w, const TernaryModControl& ctl);

// ----- standalone circuits -----

enum class ControlKind { none, single, doubly };

struct ShiftSpec {
  Encoding encoding = Encoding::binary;
  int digits = 1;
  std::uint64_t a = 0;
  std::optional<std::uint64_t> modulus;
  ControlKind control = ControlKind::none;
  // Ternary only. single: Ternary{} multiplies by the control value, Binary{l} acts on value l.
  // doubly: the second control is a strict selector on `select_level`.
  ControlMode mode = Ternary{};
  int select_level = 1;
};

// Wire roles of a built shift; unused roles are -1 or empty.
struct ShiftLayout {
  std::vector<int> data;
  int top = -1;
  int out = -1;
  std::vector<int> controls;  // doubly: {multiplier, selector}
  std::vector<int> ancillas;  // all clean workspace
};

struct ShiftCircuit {
  Circuit circuit;
  ShiftLayout layout;
  ModShiftStats stats;
};

ShiftCircuit ripple_add_const(const ShiftSpec& spec, CarryCopy copy = CarryCopy::carry);
ShiftCircuit ripple_add_const_ternary(const ShiftSpec& spec, CarryCopy copy = CarryCopy::carry);
ShiftCircuit compare_to_threshold(std::uint64_t t, Encoding encoding, int digits);
ShiftCircuit mod_add_const(const ShiftSpec& spec);

}  // namespace qtk
