#include <doctest.h>

#include <cmath>

#include "qtk/budget.hpp"
#include "qtk/cost_model.hpp"
#include "qtk/errors.hpp"

using namespace qtk;

namespace {

Scenario scenario(int n, Encoding e, AdderKind adder, Platform p, int level = 0) {
  Scenario s;
  s.n = n;
  s.encoding = e;
  s.adder = adder;
  s.platform = p;
  s.control_level = level;
  return s;
}

const CostReport& row(const std::vector<CostReport>& rows, Platform p, Encoding e, std::size_t skip = 0) {
  for (const auto& r : rows)
    if (r.platform == p && r.encoding == e && skip-- == 0) return r;
  throw std::runtime_error("row missing");
}

}  // namespace

TEST_CASE("ripple shift costs") {
  CHECK(ripple_shift_costs(scenario(16, Encoding::binary, AdderKind::ripple, Platform::mtqc_p9_preparation, 2)).count ==
        384);
  CHECK(ripple_shift_costs(scenario(16, Encoding::ternary, AdderKind::ripple, Platform::mtqc_p9_preparation, 0)).count ==
        304);
  const auto t = ripple_shift_costs(scenario(16, Encoding::ternary, AdderKind::ripple, Platform::mtqc_p9_preparation, 2));
  CHECK(t.per_trit_coefficient == 53);
  CHECK(t.per_trit_count == 53 * 11);
  for (int level = 0; level < 3; ++level) {
    const auto b = ripple_shift_costs(scenario(8, Encoding::binary, AdderKind::ripple, Platform::mtqc_inline, level));
    CHECK(b.per_bit_coefficient == 12 + 6 * level);
  }
  CHECK_THROWS_AS(ripple_shift_costs(scenario(8, Encoding::binary, AdderKind::lookahead, Platform::mtqc_inline)),
                  ArithmeticError);
}

TEST_CASE("per-trit and per-bit ternary coefficients agree to rounding") {
  const double r = std::log(2.0) / std::log(3.0);
  const int bits[3] = {19, 21, 33}, trits[3] = {30, 34, 53};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(trits[i] * r - bits[i]) < 0.5);
}

TEST_CASE("lookahead costs") {
  const auto b = lookahead_costs(scenario(1024, Encoding::binary, AdderKind::lookahead, Platform::mtqc_inline));
  CHECK(b.depth_units == doctest::Approx(40.0));
  CHECK(b.widget_p9 == 15);
  for (int n : {64, 128, 1024, 4096}) {
    const auto bb = lookahead_costs(scenario(n, Encoding::binary, AdderKind::lookahead, Platform::mtqc_inline));
    const auto tt = lookahead_costs(scenario(n, Encoding::ternary, AdderKind::lookahead, Platform::mtqc_inline));
    CHECK(std::abs(tt.width / bb.width - std::log(2.0) / std::log(3.0)) <= 0.02);
  }
}

TEST_CASE("modular exponentiation rows") {
  const auto r = modexp_cost(scenario(10, Encoding::binary, AdderKind::ripple, Platform::mtqc_p9_preparation));
  CHECK(r.depth == doctest::Approx(48000));
  CHECK(r.coefficient_derived);
  CHECK(r.width == 14);
  const auto l = modexp_cost(scenario(10, Encoding::binary, AdderKind::lookahead, Platform::mtqc_p9_preparation));
  CHECK(l.depth == doctest::Approx(120 * 100 * std::log2(10.0)));
  CHECK(std::round(l.depth) == 39863);
  const auto ref = modexp_cost(scenario(10, Encoding::binary, AdderKind::ripple, Platform::binary_clifford_t_reference));
  CHECK(ref.depth == doctest::Approx(160000));
  CHECK(ref.basis == CountBasis::t);
  CHECK(ref.prep_width_average.has_value());
  CHECK_THROWS_AS(modexp_cost(scenario(10, Encoding::ternary, AdderKind::ripple, Platform::binary_clifford_t_reference)),
                  ArithmeticError);
  const auto lit = modexp_cost(scenario(10, Encoding::ternary, AdderKind::ripple, Platform::mtqc_p9_preparation));
  CHECK_FALSE(lit.coefficient_derived);
  CHECK(lit.depth == doctest::Approx(76350));
}

TEST_CASE("table rows in printed order") {
  const auto ripple = table_rows(AdderKind::ripple, 16);
  CHECK(ripple.size() == 7);
  CHECK(ripple[4].depth_formula == "432 n^3 log_3(n)");
  CHECK(ripple[0].prep_formula == "54 log_3(n)");
  CHECK(ripple[1].prep_width == doctest::Approx(3 * std::pow(12.0, 3)));
  const auto la = table_rows(AdderKind::lookahead, 16);
  CHECK(la.size() == 8);
  const auto& ds = row(la, Platform::binary_clifford_t_reference, Encoding::binary);
  const auto& kutin = row(la, Platform::binary_clifford_t_reference, Encoding::binary, 1);
  CHECK(ds.depth == doctest::Approx(72 * 256 * 4.0));
  CHECK(kutin.depth == doctest::Approx(144 * 256 * 4.0));
  CHECK(ds.prep_width == doctest::Approx(3 * 16 * std::pow(24.0, log3_15())));
  // the ternary distillation row reuses the binary factory formula
  CHECK(row(la, Platform::generic_p9_distillation, Encoding::ternary).prep_formula ==
        row(la, Platform::generic_p9_distillation, Encoding::binary).prep_formula);
}

TEST_CASE("costs are monotone in n") {
  for (AdderKind t : {AdderKind::ripple, AdderKind::lookahead}) {
    auto prev = table_rows(t, 4);
    for (int n = 5; n <= 256; n *= 2) {
      const auto cur = table_rows(t, n);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        CHECK(cur[i].depth >= prev[i].depth);
        CHECK(cur[i].prep_width >= prev[i].prep_width);
      }
      prev = cur;
    }
  }
}

TEST_CASE("CSV output is stable") {
  const auto a = format_table_csv(table_rows(AdderKind::ripple, 32), 32);
  CHECK(a == format_table_csv(table_rows(AdderKind::ripple, 32), 32));
  CHECK(a.find("MTQC-inline,binary") != std::string::npos);
  CHECK(a.find("432 n^3 log_3(n)") != std::string::npos);
  CHECK(a.rfind("platform,", 0) == 0);
}

TEST_CASE("synthesis costs") {
  CHECK(synthesis_cost(SynthesisKind::reflection_r, std::pow(3.0, -20)).r == doctest::Approx(160));
  CHECK(synthesis_cost(SynthesisKind::mu_prep_r, std::pow(3.0, -10)).r == doctest::Approx(60));
  CHECK(synthesis_cost(SynthesisKind::phase_gate_r40, 1.0 / 3).r == doctest::Approx(40));
  const auto mixed = synthesis_cost(SynthesisKind::phase_gate_r24_plus_p9, 1.0 / 9);
  CHECK(mixed.r == doctest::Approx(48));
  CHECK(mixed.p9 == 30);
  CHECK(synthesis_cost(SynthesisKind::t_phase_reference, 1.0 / 1024).t == doctest::Approx(30));
  CHECK_THROWS_AS(synthesis_cost(SynthesisKind::reflection_r, 1.5), ArithmeticError);
  double prev = 0;
  for (double d = 0.5; d > 1e-12; d /= 7) {
    const double r = synthesis_cost(SynthesisKind::reflection_r, d).r;
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("fidelity budget") {
  const auto b = fidelity_budget(0.04, 0.05, 10);
  CHECK(b.useful_lower_bound == doctest::Approx(0.02));
  CHECK(b.per_gate_delta == doctest::Approx(0.005));
  const auto h = fidelity_budget(0.36, std::sqrt(0.36) / 4, 1);
  CHECK(h.useful_lower_bound == doctest::Approx(0.18));
  CHECK(h.half_likelihood_eps == doctest::Approx(0.15));
  CHECK(fidelity_budget(0.3, 0.0, 1).useful_lower_bound == doctest::Approx(0.3));
  CHECK_THROWS_AS(fidelity_budget(0.0, 0.1, 1), ArithmeticError);
  CHECK_THROWS_AS(fidelity_budget(0.5, 0.1, 0), ArithmeticError);
}

TEST_CASE("perturbed products stay within d delta") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto t = perturbed_product_trial(1 + i % 8, 1 + i % 2, 0.05, rng);
    CHECK(t.factor_sum <= t.bound + 1e-12);
    CHECK(t.distance <= t.factor_sum + 1e-12);
  }
  const Matrix u = random_unitary(9, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(9, 9)).norm() < 1e-12);
}

TEST_CASE("useful-probability bound") {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto t = useful_probability_trial(27, 1 + i % 9, 0.1, rng);
    CHECK(t.projected >= t.bound - 1e-12);
  }
}
