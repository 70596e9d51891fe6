#include "qtk/modexp.hpp"

#include <numeric>
#include <utility>

#include "qtk/errors.hpp"

namespace qtk {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  if (n == 1) return 0;
  unsigned __int128 result = 1, b = a % n;
  while (e) {
    if (e & 1) result = result * b % n;
    b = b * b % n;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ArithmeticError("value has no inverse modulo " + std::to_string(n));
  if (t < 0) t += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t);
}

int modexp_register_digits(Encoding encoding, std::uint64_t modulus) {
  return encoding == Encoding::binary ? binary_digits_for_modulus(modulus) : ternary_digits_for_modulus(modulus);
}

int default_exponent_digits(Encoding encoding, std::uint64_t modulus) {
  return 2 * modexp_register_digits(encoding, modulus);
}

namespace {

struct Builder {
  Encoding encoding;
  std::uint64_t modulus;
  int digits;
  ModExpLayout layout;
  // workspace roles
  int top = -1, flag = -1;
  std::vector<int> helpers;  // binary: two control ancillas; ternary: m carries, 2 indicators, tmp
  bool value_in_x = true;
  ModExpTally tally;

  Builder(Encoding enc, std::uint64_t n, int exponent_wires) : encoding(enc), modulus(n) {
    if (modulus < 3) throw ArithmeticError("modulus must be at least 3");
    digits = modexp_register_digits(enc, modulus);
    int next = 0;
    auto take = [&](int k) {
      std::vector<int> v(k);
      std::iota(v.begin(), v.end(), next);
      next += k;
      return v;
    };
    layout.exponent = take(exponent_wires);
    layout.x = take(digits);
    layout.y = take(digits);
    top = take(1)[0];
    flag = take(1)[0];
    helpers = take(enc == Encoding::binary ? 2 : digits + 3);
    layout.workspace = {top, flag};
    layout.workspace.insert(layout.workspace.end(), helpers.begin(), helpers.end());
    layout.width = next;
  }

  Circuit blank() const {
    Circuit c(layout.width);
    for (int q : layout.workspace) c.declare_ancilla(q);
    return c;
  }

  std::uint64_t radix_power(int l) const { return pow_mod(encoding == Encoding::binary ? 2 : 3, l, modulus); }

  // dst += [ctrl == level] * sum_l src_l * constant_l  (mod N)
  void shift_sum(Circuit& c, int ctrl, int level, const std::vector<int>& src, const std::vector<int>& dst,
                 std::uint64_t factor, int& counter) {
    for (int l = 0; l < digits; ++l) {
      const auto k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(factor) * radix_power(l) % modulus);
      if (k == 0) {
        ++tally.skipped_shifts;
        continue;
      }
      ++counter;
      if (encoding == Encoding::binary) {
        BinaryWires w{dst, top, flag, {ctrl, src[l]}, helpers};
        emit_binary_mod_shift(c, k, modulus, w);
      } else {
        TernaryWires w;
        w.data = dst;
        w.top = top;
        w.out = flag;
        w.carry_ancillas.assign(helpers.begin(), helpers.begin() + digits);
        TernaryModControl ctl;
        ctl.multiplier = src[l];
        ctl.select = ctrl;
        ctl.select_level = level;
        ctl.indicators = {helpers[digits], helpers[digits + 1]};
        ctl.tmp = helpers[digits + 2];
        emit_ternary_controlled_mod_shift(c, k, modulus, w, ctl);
      }
    }
  }

  // value -> c * value when ctrl == level; the value moves to the other work register either way.
  void multiply(Circuit& c, int ctrl, int level, std::uint64_t factor) {
    factor %= modulus;
    if (factor == 1) {
      tally.skipped_shifts += 2 * digits;
      return;
    }
    const auto& src = value_in_x ? layout.x : layout.y;
    const auto& dst = value_in_x ? layout.y : layout.x;
    for (int i = 0; i < digits; ++i) c.gate("SUM", {src[i], dst[i]});
    shift_sum(c, ctrl, level, src, dst, (factor + modulus - 1) % modulus, tally.forward_shifts);
    // old = new - (c-1)/c * new = new * c^-1
    const std::uint64_t clear = (1 + modulus - inverse_mod(factor, modulus)) % modulus;
    shift_sum(c, ctrl, level, dst, src, clear, tally.uncompute_shifts);
    for (int i = 0; i < digits; ++i) c.gate("SUMdg", {dst[i], src[i]});
    value_in_x = !value_in_x;
  }

  // Multiply by factor^f under control value f for every nonzero f the encoding allows.
  void controlled_power(Circuit& c, int ctrl, std::uint64_t factor) {
    const int levels = encoding == Encoding::binary ? 1 : 2;
    for (int f = 1; f <= levels; ++f) multiply(c, ctrl, f, pow_mod(factor, f, modulus));
  }

  ModExpCircuit finish(Circuit c) {
    layout.result = value_in_x ? layout.x : layout.y;
    layout.scratch = value_in_x ? layout.y : layout.x;
    return {std::move(c), layout, tally};
  }
};

void check_base(std::uint64_t a, std::uint64_t n) {
  if (a == 0 || a >= n) throw ArithmeticError("base must satisfy 0 < a < N");
  if (std::gcd(a, n) != 1) throw ArithmeticError("base shares a factor with the modulus");
}

}  // namespace

ModExpCircuit modexp_circuit(const ModExpSpec& spec) {
  check_base(spec.base, spec.modulus);
  if (spec.strategy == ControlStrategy::semiclassical)
    throw ArithmeticError("semiclassical exponentiation is built round by round with controlled_multiply");
  const int exponent_digits =
      spec.exponent_digits > 0 ? spec.exponent_digits : default_exponent_digits(spec.encoding, spec.modulus);
  Builder b(spec.encoding, spec.modulus, exponent_digits);
  Circuit c = b.blank();
  const std::uint64_t radix = spec.encoding == Encoding::binary ? 2 : 3;
  std::uint64_t factor = spec.base % spec.modulus;  // a^(d^e)
  for (int e = 0; e < exponent_digits; ++e) {
    b.controlled_power(c, b.layout.exponent[e], factor);
    factor = pow_mod(factor, radix, spec.modulus);
  }
  return b.finish(std::move(c));
}

ModExpCircuit controlled_multiply(std::uint64_t factor, std::uint64_t modulus, Encoding encoding,
                                  bool x_holds_value) {
  check_base(factor % modulus, modulus);
  Builder b(encoding, modulus, 1);
  b.value_in_x = x_holds_value;
  Circuit c = b.blank();
  b.controlled_power(c, b.layout.exponent[0], factor);
  return b.finish(std::move(c));
}

}  // namespace qtk
