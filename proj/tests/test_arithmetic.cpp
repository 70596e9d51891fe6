#include <doctest.h>

#include <random>

#include "qtk/arithmetic.hpp"
#include "qtk/errors.hpp"
#include "test_util.hpp"

using namespace qtk;
using namespace qtk::testing;

namespace {

std::uint64_t radix_of(Encoding e) { return e == Encoding::binary ? 2 : 3; }

void put(std::vector<int>& in, const std::vector<int>& wires, std::uint64_t v, std::uint64_t radix) {
  for (int q : wires) {
    in[q] = static_cast<int>(v % radix);
    v /= radix;
  }
}

std::uint64_t get(const std::vector<int>& out, const std::vector<int>& wires, std::uint64_t radix) {
  std::uint64_t v = 0, p = 1;
  for (int q : wires) {
    v += static_cast<std::uint64_t>(out[q]) * p;
    p *= radix;
  }
  return v;
}

struct Outcome {
  std::uint64_t value;
  int out;
  bool clean;  // ancillas in |0>, controls untouched, exact basis image
};

Outcome evaluate(const ShiftCircuit& s, Encoding e, std::uint64_t b, const std::vector<int>& controls = {},
                 int top = 0) {
  std::vector<int> in(s.circuit.width(), 0);
  put(in, s.layout.data, b, radix_of(e));
  for (std::size_t i = 0; i < controls.size(); ++i) in[s.layout.controls[i]] = controls[i];
  in[s.layout.top] = top;
  const auto img = basis_image(s.circuit, in);
  bool clean = std::abs(img.magnitude - 1.0) < 1e-10;
  for (int q : s.layout.ancillas)
    if (q != s.layout.top) clean = clean && img.digits[q] == 0;
  clean = clean && img.digits[s.layout.top] == top;
  for (std::size_t i = 0; i < controls.size(); ++i) clean = clean && img.digits[s.layout.controls[i]] == controls[i];
  return {get(img.digits, s.layout.data, radix_of(e)), s.layout.out >= 0 ? img.digits[s.layout.out] : 0, clean};
}

// Control values for which a binary-encoded shift must act.
bool all_ones(const std::vector<int>& v) {
  for (int x : v)
    if (x != 1) return false;
  return true;
}

std::vector<std::vector<int>> binary_control_values(int k) {
  std::vector<std::vector<int>> all;
  std::vector<int> radix(k, 2);
  if (k == 0) return {{}};
  for_each_input(radix, [&](const std::vector<int>& v) { all.push_back(v); });
  return all;
}

}  // namespace

TEST_CASE("Y gates compute the binary carry") {
  for (int a = 0; a < 2; ++a) {
    const Circuit y = y_gate(a);
    CHECK(count_resources(y).p9_count == 3);
    for_each_input({2, 2}, [&](const std::vector<int>& v) {
      const auto img = basis_image(y, v);
      CHECK(img.magnitude == doctest::Approx(1.0));
      CHECK(img.digits[1] == (v[0] + v[1] + a >= 2 ? 1 : 0));
      CHECK(basis_image(inverse(y), img.digits).digits == v);
    });
  }
  CHECK(basis_image(y_gate(1), {1, 1}).digits[1] == 1);
  CHECK(basis_image(y_gate(0), {0, 0}).digits[1] == 0);
  CHECK_THROWS_AS(y_gate(2), ArithmeticError);
}

TEST_CASE("binary ripple shift, exhaustive at n=4") {
  for (ControlKind kind : {ControlKind::none, ControlKind::single, ControlKind::doubly}) {
    const int k = kind == ControlKind::none ? 0 : kind == ControlKind::single ? 1 : 2;
    for (std::uint64_t a = 0; a < 16; ++a) {
      const auto s = ripple_add_const({Encoding::binary, 4, a, std::nullopt, kind});
      CHECK(s.circuit.width() == 6 + 2 * k);
      for (const auto& ctl : binary_control_values(k))
        for (std::uint64_t b = 0; b < 16; ++b) {
          const auto r = evaluate(s, Encoding::binary, b, ctl);
          const std::uint64_t sum = b + (all_ones(ctl) ? a : 0);
          CHECK(r.clean);
          CHECK(r.value == sum % 16);
          CHECK(r.out == static_cast<int>(sum / 16));
        }
    }
  }
  CHECK_THROWS_AS(ripple_add_const({Encoding::binary, 4, 16}), ArithmeticError);
}

TEST_CASE("binary ripple shift counts") {
  std::mt19937_64 eng(17);
  for (int n = 8; n <= 16; n += 4) {
    for (int rep = 0; rep < 3; ++rep) {
      const std::uint64_t a = eng() % (std::uint64_t{1} << n);
      const int a0 = static_cast<int>(a & 1);
      const int p0 = count_resources(ripple_add_const({Encoding::binary, n, a}).circuit).p9_count;
      const int p1 =
          count_resources(ripple_add_const({Encoding::binary, n, a, std::nullopt, ControlKind::single}).circuit).p9_count;
      const int p2 =
          count_resources(ripple_add_const({Encoding::binary, n, a, std::nullopt, ControlKind::doubly}).circuit).p9_count;
      CHECK(p0 == 12 * n - 6);
      CHECK(p1 == 18 * n - 6 + 6 * a0);
      CHECK(p2 == 24 * n - 6 + 12 * a0);
      CHECK(std::abs(p0 - 12.0 * n) <= n);
      CHECK(std::abs(p1 - 18.0 * n) <= n);
      CHECK(std::abs(p2 - 24.0 * n) <= n);
    }
  }
}

TEST_CASE("ternary carry gates match the truth tables") {
  // rows (c_i, b_i) = (0,0) (0,1) (0,2) (1,0) (1,1) (1,2)
  const int table_a1[6] = {0, 0, 1, 0, 1, 1};
  const int table_a0[6] = {0, 0, 0, 0, 0, 1};
  for (int a = 0; a < 3; ++a) {
    const auto s = ripple_add_const_ternary({Encoding::ternary, 1, static_cast<std::uint64_t>(a)});
    int row = 0;
    for (int c = 0; c < 2; ++c)
      for (int b = 0; b < 3; ++b, ++row) {
        const auto r = evaluate(s, Encoding::ternary, b, {}, c);
        CHECK(r.clean);
        CHECK(r.out == (c + b + a >= 3 ? 1 : 0));
        CHECK(r.value == static_cast<std::uint64_t>((c + b + a) % 3));
        if (a == 1) CHECK(r.out == table_a1[row]);
        if (a == 0) CHECK(r.out == table_a0[row]);
      }
  }
}

TEST_CASE("ternary ripple shift, exhaustive at m=3") {
  for (std::uint64_t a = 0; a < 27; ++a) {
    const auto s = ripple_add_const_ternary({Encoding::ternary, 3, a});
    CHECK(s.circuit.width() == 2 * 3 - ternary_weight_one(a, 3) + 2);
    const auto single = ripple_add_const_ternary({Encoding::ternary, 3, a, std::nullopt, ControlKind::single});
    const auto strict =
        ripple_add_const_ternary({Encoding::ternary, 3, a, std::nullopt, ControlKind::single, Binary{2}});
    const auto dbl =
        ripple_add_const_ternary({Encoding::ternary, 3, a, std::nullopt, ControlKind::doubly, Ternary{}, 2});
    for (std::uint64_t b = 0; b < 27; ++b) {
      const auto r = evaluate(s, Encoding::ternary, b);
      CHECK(r.clean);
      CHECK(r.value == (a + b) % 27);
      CHECK(r.out == static_cast<int>((a + b) / 27));
      for (int c = 0; c < 2; ++c) {
        const auto rc = evaluate(single, Encoding::ternary, b, {c});
        CHECK(rc.clean);
        CHECK(rc.value == (b + c * a) % 27);
        CHECK(rc.out == static_cast<int>((b + c * a) / 27));
      }
      for (int c = 0; c < 3; ++c) {
        const auto rc = evaluate(strict, Encoding::ternary, b, {c});
        CHECK(rc.clean);
        CHECK(rc.value == (b + (c == 2 ? a : 0)) % 27);
      }
      for (int c = 0; c < 2; ++c)
        for (int sel = 0; sel < 3; ++sel) {
          const auto rc = evaluate(dbl, Encoding::ternary, b, {c, sel});
          CHECK(rc.clean);
          CHECK(rc.value == (b + (sel == 2 ? c * a : 0)) % 27);
        }
    }
  }
  // a = 7 is 021 in base 3
  const auto s7 = ripple_add_const_ternary({Encoding::ternary, 3, 7});
  CHECK(evaluate(s7, Encoding::ternary, 25).value == 5);
}

TEST_CASE("ternary multiplier control 2 doubles digit-wise, not the constant") {
  const auto s = ripple_add_const_ternary({Encoding::ternary, 2, 2, std::nullopt, ControlKind::single});
  // digits of 0 + 2*(2 + carries of 2+0) = 1, while the shift by 4 would give 4
  CHECK(evaluate(s, Encoding::ternary, 0, {2}).value == 1);
}

TEST_CASE("ternary ripple shift counts") {
  std::mt19937_64 eng(23);
  for (int m = 8; m <= 16; m += 4) {
    const std::uint64_t a = eng() % pow3u(m);
    auto count = [&](ControlKind k) {
      return count_resources(
                 ripple_add_const_ternary({Encoding::ternary, m, a, std::nullopt, k}, CarryCopy::none).circuit)
          .p9_count;
    };
    CHECK(count(ControlKind::none) == 30 * m);
    CHECK(count(ControlKind::single) == 34 * m);
    CHECK(count(ControlKind::doubly) == 53 * m);
    const auto rc = count_resources(
        ripple_add_const_ternary({Encoding::ternary, m, a, std::nullopt, ControlKind::doubly}, CarryCopy::none).circuit);
    CHECK(rc.costed_primitive_tally.at("C_f(SUM)") >= m);
  }
}

TEST_CASE("comparators") {
  for (std::uint64_t t = 0; t <= 16; ++t) {
    const auto s = compare_to_threshold(t, Encoding::binary, 4);
    for (std::uint64_t b = 0; b < 16; ++b) {
      const auto r = evaluate(s, Encoding::binary, b);
      CHECK(r.clean);
      CHECK(r.value == b);
      CHECK(r.out == (b >= t ? 1 : 0));
    }
  }
  for (std::uint64_t t = 0; t <= 27; ++t) {
    const auto s = compare_to_threshold(t, Encoding::ternary, 3);
    for (std::uint64_t b = 0; b < 27; ++b) {
      const auto r = evaluate(s, Encoding::ternary, b);
      CHECK(r.clean);
      CHECK(r.value == b);
      CHECK(r.out == (b >= t ? 1 : 0));
    }
  }
  const auto nine = compare_to_threshold(9, Encoding::binary, 4);
  for (std::uint64_t b = 0; b < 16; ++b) CHECK(evaluate(nine, Encoding::binary, b).out == (b >= 9));
}

TEST_CASE("binary modular shift, exhaustive at N=13 and N=15") {
  for (std::uint64_t modulus : {13u, 15u}) {
    const int n = binary_digits_for_modulus(modulus);
    CHECK(n == 4);
    for (ControlKind kind : {ControlKind::none, ControlKind::single, ControlKind::doubly}) {
      const int k = kind == ControlKind::none ? 0 : kind == ControlKind::single ? 1 : 2;
      for (std::uint64_t a = 0; a < modulus; ++a) {
        const auto s = mod_add_const({Encoding::binary, n, a, modulus, kind});
        for (const auto& ctl : binary_control_values(k))
          for (std::uint64_t b = 0; b < modulus; ++b) {
            const auto r = evaluate(s, Encoding::binary, b, ctl);
            CHECK(r.clean);
            CHECK(r.value == (b + (all_ones(ctl) ? a : 0)) % modulus);
          }
      }
    }
  }
  const auto s = mod_add_const({Encoding::binary, 4, 9, 13u});
  CHECK(evaluate(s, Encoding::binary, 7).value == 3);
  CHECK_THROWS_AS(mod_add_const({Encoding::binary, 4, 13, 13u}), ArithmeticError);
}

TEST_CASE("ternary modular shift, exhaustive at N=13 and N=15") {
  for (std::uint64_t modulus : {13u, 15u}) {
    const int m = ternary_digits_for_modulus(modulus);
    CHECK(m == (modulus == 13 ? 3 : 4));
    bool saw_small = false, saw_large = false;
    for (std::uint64_t a = 0; a < modulus; ++a) {
      const bool small = 2 * a < modulus;
      (small ? saw_small : saw_large) = true;
      const auto plain = mod_add_const({Encoding::ternary, m, a, modulus});
      CHECK(plain.stats.blocks == 3);
      const auto single = mod_add_const({Encoding::ternary, m, a, modulus, ControlKind::single});
      CHECK(single.stats.blocks == (small ? 4 : 3));
      const int level = modulus == 13 ? 2 : 1;
      const auto dbl = mod_add_const({Encoding::ternary, m, a, modulus, ControlKind::doubly, Ternary{}, level});
      CHECK(dbl.stats.blocks == (small ? 4 : 3));
      for (std::uint64_t b = 0; b < modulus; ++b) {
        const auto r = evaluate(plain, Encoding::ternary, b);
        CHECK(r.clean);
        CHECK(r.value == (a + b) % modulus);
        for (int c = 0; c < 3; ++c) {
          const auto rs = evaluate(single, Encoding::ternary, b, {c});
          CHECK(rs.clean);
          CHECK(rs.value == (b + c * a) % modulus);
          for (int sel = 0; sel < 3; ++sel) {
            const auto rd = evaluate(dbl, Encoding::ternary, b, {c, sel});
            CHECK(rd.clean);
            CHECK(rd.value == (b + (sel == level ? c * a : 0)) % modulus);
          }
        }
      }
    }
    CHECK(saw_small);
    CHECK(saw_large);
  }
  const auto s = mod_add_const({Encoding::ternary, 3, 9, 13u});
  CHECK(evaluate(s, Encoding::ternary, 7).value == 3);
  CHECK_THROWS_AS(mod_add_const({Encoding::ternary, 2, 3, 13u}), ArithmeticError);
}

TEST_CASE("digit counts") {
  CHECK(ternary_digits_for_bits(8) == 6);
  CHECK(ternary_digits_for_bits(1) == 1);
  CHECK(ternary_digits_for_bits(1024) == 647);
  CHECK(ternary_weight_one(7, 3) == 1);
  CHECK(ternary_weight_one(13, 3) == 3);
}
