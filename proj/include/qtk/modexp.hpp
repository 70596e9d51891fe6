#pragma once

#include <cstdint>
#include <vector>

#include "qtk/arithmetic.hpp"
#include "qtk/circuit.hpp"

namespace qtk {

enum class ControlStrategy { full_register, semiclassical };

struct ModExpSpec {
  std::uint64_t base = 2;
  std::uint64_t modulus = 15;
  Encoding encoding = Encoding::binary;
  int exponent_digits = 0;  // 0: 2n (binary) or 2m (ternary)
  ControlStrategy strategy = ControlStrategy::full_register;
};

// Wire roles. `result` is whichever of the two work registers ends up holding a^k mod N
// (the multiply step swaps their roles); `scratch` is the other one and returns to 0.
struct ModExpLayout {
  std::vector<int> exponent;  // semiclassical: a single control wire
  std::vector<int> x;         // starts at 1
  std::vector<int> y;         // starts at 0
  std::vector<int> result;
  std::vector<int> scratch;
  std::vector<int> workspace;  // clean ancillas of the shifts
  int width = 0;
};

struct ModExpTally {
  int forward_shifts = 0;     // shifts building the product
  int uncompute_shifts = 0;   // shifts clearing the old factor
  int skipped_shifts = 0;     // constant 0 mod N
};

struct ModExpCircuit {
  Circuit circuit;
  ModExpLayout layout;
  ModExpTally tally;
};

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t n);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n);  // throws if not invertible

// Digits of the work registers for a modulus.
int modexp_register_digits(Encoding encoding, std::uint64_t modulus);
int default_exponent_digits(Encoding encoding, std::uint64_t modulus);

// Full register: |k>|1>|0> -> |k>|a^k mod N>|0> with k read from the exponent wires.
ModExpCircuit modexp_circuit(const ModExpSpec& spec);

// One controlled multiplication by `factor`, shared layout with the semiclassical rounds:
// wire 0 is the control; value f multiplies by factor^f (a binary control only uses f = 1).
// `x_holds_value` says which work register holds the input; the output lands in the other.
ModExpCircuit controlled_multiply(std::uint64_t factor, std::uint64_t modulus, Encoding encoding,
                                  bool x_holds_value = true);

}  // namespace qtk
