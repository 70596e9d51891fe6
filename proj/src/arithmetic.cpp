#include <cmath>

#include "qtk/arithmetic.hpp"
#include "qtk/errors.hpp"
#include "qtk/widgets.hpp"

namespace qtk {

int ternary_digits_for_bits(int bits) {
  if (bits < 1) throw ArithmeticError("bit count must be positive");
  // ceil(bits * log3(2)) computed exactly: smallest m with 3^m >= 2^bits
  int m = 0;
  long double p = 1.0L;
  const long double target = std::ldexp(1.0L, bits);
  while (p < target) {
    p *= 3.0L;
    ++m;
  }
  return m;
}

int ternary_digits_for_modulus(std::uint64_t modulus) {
  int m = 1;
  while (pow3u(m) < 2 * modulus) ++m;
  return m;
}

int binary_digits_for_modulus(std::uint64_t modulus) {
  int n = 1;
  while ((std::uint64_t{1} << n) <= modulus) ++n;
  return n;
}

namespace {

// Hands out consecutive wires.
struct Allocator {
  int next = 0;
  int take() { return next++; }
  std::vector<int> take(int k) {
    std::vector<int> v;
    for (int i = 0; i < k; ++i) v.push_back(next++);
    return v;
  }
};

int control_count(ControlKind k) { return k == ControlKind::none ? 0 : k == ControlKind::single ? 1 : 2; }

Circuit with_ancillas(int width, const std::vector<int>& clean) {
  Circuit c(width);
  for (int q : clean) c.declare_ancilla(q);
  return c;
}

ShiftLayout binary_layout(int n, int controls, int workspace, BinaryWires& w) {
  Allocator alloc;
  ShiftLayout l;
  l.data = alloc.take(n);
  l.top = alloc.take();
  l.out = alloc.take();
  l.controls = alloc.take(controls);
  const auto anc = alloc.take(workspace);
  l.ancillas = anc;
  l.ancillas.insert(l.ancillas.begin(), l.top);
  w.data = l.data;
  w.top = l.top;
  w.out = l.out;
  w.controls = l.controls;
  w.ancillas = anc;
  return l;
}

int width_of(const ShiftLayout& l) {
  int w = std::max(l.top, l.out) + 1;
  for (const auto* v : {&l.data, &l.controls, &l.ancillas})
    for (int q : *v) w = std::max(w, q + 1);
  return w;
}

}  // namespace

ShiftCircuit ripple_add_const(const ShiftSpec& spec, CarryCopy copy) {
  if (spec.encoding != Encoding::binary) return ripple_add_const_ternary(spec, copy);
  const int k = control_count(spec.control);
  BinaryWires w;
  ShiftLayout l = binary_layout(spec.digits, k, k, w);
  Circuit c = with_ancillas(width_of(l), l.ancillas);
  emit_binary_shift(c, spec.a, w, copy);
  return {std::move(c), std::move(l), {1, 1}};
}

ShiftCircuit ripple_add_const_ternary(const ShiftSpec& spec, CarryCopy copy) {
  const int m = spec.digits;
  if (m < 1) throw SizeError("ternary shift needs at least one trit");
  Allocator alloc;
  ShiftLayout l;
  TernaryWires w;
  l.data = w.data = alloc.take(m);
  l.top = w.top = alloc.take();
  l.out = w.out = alloc.take();
  if (spec.control == ControlKind::single) {
    const int ctl = alloc.take();
    l.controls = {ctl};
    if (const auto* b = std::get_if<Binary>(&spec.mode)) {
      w.control.select = ctl;
      w.control.select_level = b->level;
    } else {
      w.control.multiplier = ctl;
    }
  } else if (spec.control == ControlKind::doubly) {
    l.controls = alloc.take(2);
    w.control.multiplier = l.controls[0];
    w.control.select = l.controls[1];
    w.control.select_level = spec.select_level;
  }
  const int needed = m - ternary_weight_one(spec.a, m);
  w.carry_ancillas = alloc.take(needed);
  l.ancillas = w.carry_ancillas;
  if (spec.control == ControlKind::doubly) {
    w.control.horner_ancilla = alloc.take();
    l.ancillas.push_back(*w.control.horner_ancilla);
  }
  l.ancillas.insert(l.ancillas.begin(), l.top);
  Circuit c = with_ancillas(width_of(l), l.ancillas);
  emit_ternary_shift(c, spec.a, w, copy);
  return {std::move(c), std::move(l), {1, 1}};
}

ShiftCircuit compare_to_threshold(std::uint64_t t, Encoding encoding, int digits) {
  if (encoding == Encoding::binary) {
    BinaryWires w;
    ShiftLayout l = binary_layout(digits, 0, 0, w);
    Circuit c = with_ancillas(width_of(l), l.ancillas);
    emit_binary_compare(c, t, w);
    return {std::move(c), std::move(l), {1, 1}};
  }
  Allocator alloc;
  ShiftLayout l;
  TernaryWires w;
  l.data = w.data = alloc.take(digits);
  l.top = w.top = alloc.take();
  l.out = w.out = alloc.take();
  const bool reachable = t < pow3u(digits);
  w.carry_ancillas = alloc.take(reachable ? digits - ternary_weight_one(t, digits) : 0);
  l.ancillas = w.carry_ancillas;
  l.ancillas.insert(l.ancillas.begin(), l.top);
  Circuit c = with_ancillas(width_of(l), l.ancillas);
  emit_ternary_compare(c, t, w);
  return {std::move(c), std::move(l), {1, 1}};
}

ShiftCircuit mod_add_const(const ShiftSpec& spec) {
  if (!spec.modulus) throw ArithmeticError("modular shift needs a modulus");
  const std::uint64_t modulus = *spec.modulus;
  const int k = control_count(spec.control);
  if (spec.encoding == Encoding::binary) {
    BinaryWires w;
    ShiftLayout l = binary_layout(spec.digits, k, std::max(1, k), w);
    l.ancillas.push_back(l.out);
    Circuit c = with_ancillas(width_of(l), l.ancillas);
    emit_binary_mod_shift(c, spec.a, modulus, w);
    return {std::move(c), std::move(l), {3, 3}};
  }

  const int m = spec.digits;
  Allocator alloc;
  ShiftLayout l;
  TernaryWires w;
  l.data = w.data = alloc.take(m);
  l.top = w.top = alloc.take();
  l.out = w.out = alloc.take();
  l.controls = alloc.take(k);
  w.carry_ancillas = alloc.take(m);
  l.ancillas = w.carry_ancillas;
  l.ancillas.insert(l.ancillas.begin(), l.top);
  l.ancillas.push_back(l.out);

  Circuit body = Circuit(1);
  ModShiftStats stats;
  if (spec.control == ControlKind::none) {
    body = with_ancillas(width_of(l), l.ancillas);
    stats = emit_ternary_mod_shift(body, spec.a, modulus, w, {{std::nullopt, 1}});
  } else if (spec.control == ControlKind::single && std::holds_alternative<Binary>(spec.mode)) {
    const int level = std::get<Binary>(spec.mode).level;
    if (level < 0 || level > 2) throw ArithmeticError("control level outside 0..2");
    const int ind = alloc.take();
    l.ancillas.push_back(ind);
    body = with_ancillas(width_of(l), l.ancillas);
    emit::c_inc(body, level, l.controls[0], ind);
    stats = emit_ternary_mod_shift(body, spec.a, modulus, w, {{ind, 1}});
    emit::c_inc(body, level, l.controls[0], ind, std::nullopt, true);
  } else {
    TernaryModControl ctl;
    ctl.multiplier = l.controls[0];
    ctl.indicators = {alloc.take(), alloc.take()};
    l.ancillas.push_back(ctl.indicators[0]);
    l.ancillas.push_back(ctl.indicators[1]);
    if (spec.control == ControlKind::doubly) {
      ctl.select = l.controls[1];
      ctl.select_level = spec.select_level;
      ctl.tmp = alloc.take();
      l.ancillas.push_back(ctl.tmp);
    }
    body = with_ancillas(width_of(l), l.ancillas);
    stats = emit_ternary_controlled_mod_shift(body, spec.a, modulus, w, ctl);
  }
  return {std::move(body), std::move(l), stats};
}

}  // namespace qtk
