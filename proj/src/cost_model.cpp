#include "qtk/cost_model.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "qtk/errors.hpp"

namespace qtk {

namespace {

double lg2(double x) { return std::log2(x); }
double lg3(double x) { return std::log(x) / std::log(3.0); }

struct Row {
  AdderKind table;
  Platform platform;
  Encoding encoding;
  std::optional<LookaheadReference> reference;
  std::string label;
  CountBasis basis;
};

// Printed order of both tables.
const std::vector<Row>& rows() {
  using A = AdderKind;
  using P = Platform;
  using E = Encoding;
  static const std::vector<Row> all = {
      {A::ripple, P::mtqc_p9_preparation, E::binary, {}, "emulated binary, metaplectic P9 preparation", CountBasis::p9},
      {A::ripple, P::generic_p9_distillation, E::binary, {}, "emulated binary, P9 distillation", CountBasis::p9},
      {A::ripple, P::mtqc_p9_preparation, E::ternary, {}, "ternary, metaplectic P9 preparation", CountBasis::p9},
      {A::ripple, P::generic_p9_distillation, E::ternary, {}, "ternary, P9 distillation", CountBasis::p9},
      {A::ripple, P::mtqc_inline, E::binary, {}, "emulated binary, MTQC inline", CountBasis::r},
      {A::ripple, P::mtqc_inline, E::ternary, {}, "ternary, MTQC inline", CountBasis::r},
      {A::ripple, P::binary_clifford_t_reference, E::binary, {}, "binary Clifford+T reference", CountBasis::t},
      {A::lookahead, P::mtqc_p9_preparation, E::binary, {}, "emulated binary, metaplectic P9 preparation", CountBasis::p9},
      {A::lookahead, P::generic_p9_distillation, E::binary, {}, "emulated binary, P9 distillation", CountBasis::p9},
      {A::lookahead, P::mtqc_p9_preparation, E::ternary, {}, "ternary, metaplectic P9 preparation", CountBasis::p9},
      {A::lookahead, P::generic_p9_distillation, E::ternary, {}, "ternary, P9 distillation", CountBasis::p9},
      {A::lookahead, P::mtqc_inline, E::binary, {}, "emulated binary, MTQC inline", CountBasis::r},
      {A::lookahead, P::mtqc_inline, E::ternary, {}, "ternary, MTQC inline", CountBasis::r},
      {A::lookahead, P::binary_clifford_t_reference, E::binary, LookaheadReference::draper_svore,
       "binary Clifford+T reference (lookahead adder)", CountBasis::t},
      {A::lookahead, P::binary_clifford_t_reference, E::binary, LookaheadReference::kutin,
       "binary Clifford+T reference (rotation-based)", CountBasis::t},
  };
  return all;
}

CostReport evaluate(const Row& row, const Scenario& s) {
  const double n = s.n;
  const double m = s.m();
  const double w1n = digit_ones(static_cast<std::uint64_t>(s.n), 2);
  const double w1m = digit_ones(static_cast<std::uint64_t>(s.m()), 3);
  const double distill = 3.0 * std::pow(3.0 * lg2(n), 3);  // P9 distillation factory
  const double clifford_t = std::pow(6.0 * lg2(n), s.gamma);
  const bool ternary = row.encoding == Encoding::ternary;
  CostReport r;
  r.row = row.label;
  r.platform = row.platform;
  r.encoding = row.encoding;
  r.basis = row.basis;

  if (row.table == AdderKind::ripple) {
    if (row.platform == Platform::binary_clifford_t_reference) {
      r.width = 2 * n + 6, r.width_formula = "2n + 6";
      r.depth = 160 * n * n * n, r.depth_formula = "160 n^3";
      r.prep_width = n * clifford_t, r.prep_formula = "n (6 log_2(n))^g";
      r.prep_width_average = n / lg2(n) * clifford_t;
      return r;
    }
    if (ternary) r.width = 2 * m - w1m, r.width_formula = "2m - w1(m)";
    else r.width = n + 4, r.width_formula = "n + 4";
    if (row.platform == Platform::mtqc_inline) {
      if (ternary) r.depth = 506.3 * n * n * n * lg3(n), r.depth_formula = "506.3 n^3 log_3(n)";
      else r.depth = 432 * n * n * n * lg3(n), r.depth_formula = "432 n^3 log_3(n)";
      r.prep_width = 3, r.prep_formula = "3";
      return r;
    }
    if (ternary) {
      r.depth = 76.35 * n * n * n, r.depth_formula = "76.35 n^3";
    } else {
      // 6 n^2 doubly controlled shifts, each 24n P9 at a third of that depth
      r.depth = 6.0 * (24.0 / 3.0) * n * n * n, r.depth_formula = "48 n^3";
      r.coefficient_derived = true;
    }
    if (row.platform == Platform::mtqc_p9_preparation) r.prep_width = 54 * lg3(n), r.prep_formula = "54 log_3(n)";
    else r.prep_width = distill, r.prep_formula = "3 (3 log_2(n))^3";
    return r;
  }

  if (row.platform == Platform::binary_clifford_t_reference) {
    r.prep_width = 3 * n * clifford_t, r.prep_formula = "3n (6 log_2(n))^g";
    r.coefficient_derived = true;
    if (row.reference == LookaheadReference::draper_svore) {
      r.width = 4 * n - w1n, r.width_formula = "4n - w1(n)";
      // 2n^2 modular additions, 3 additions each, T-depth 12 log2(n) per addition
      r.depth = 2.0 * 3.0 * 12.0 * n * n * lg2(n), r.depth_formula = "72 n^2 log_2(n)";
    } else {
      r.width = 3 * n + 6 * lg2(n), r.width_formula = "3n + 6 log_2(n)";
      // 12 n^2 depth, each rotation 12 log2(n) T-depth
      r.depth = 12.0 * 12.0 * n * n * lg2(n), r.depth_formula = "144 n^2 log_2(n)";
    }
    return r;
  }
  if (row.platform == Platform::mtqc_inline) {
    if (ternary) {
      r.width = 3 * m - w1m, r.width_formula = "3m - w1(m)";
      r.depth = 1630.5 * n * n * lg3(2) * lg2(n) * lg2(n), r.depth_formula = "1630.5 n^2 log_3(2) (log_2(n))^2";
      r.prep_width = 3 * m, r.prep_formula = "3m";
    } else {
      r.width = 3 * n - w1n, r.width_formula = "3n - w1(n)";
      r.depth = 384 * n * n * lg3(2) * lg2(n) * lg2(n), r.depth_formula = "384 n^2 log_3(2) (log_2(n))^2";
      r.prep_width = 3 * n, r.prep_formula = "3n";
    }
    return r;
  }
  if (ternary) {
    r.width = 4 * m - w1m, r.width_formula = "4m - w1(m)";
    r.depth = 127.4 * n * n * lg2(n), r.depth_formula = "127.4 n^2 log_2(n)";
    if (row.platform == Platform::mtqc_p9_preparation) r.prep_width = 54 * m * lg3(m), r.prep_formula = "54 m log_3(m)";
    // the ternary row repeats the binary factory formula in n
    else r.prep_width = 12 * n * std::pow(3.0 * lg2(n), 3), r.prep_formula = "12n (3 log_2(n))^3";
  } else {
    r.width = 4 * n - w1n, r.width_formula = "4n - w1(n)";
    r.depth = 120 * n * n * lg2(n), r.depth_formula = "120 n^2 log_2(n)";
    if (row.platform == Platform::mtqc_p9_preparation) r.prep_width = 54 * n * lg3(n), r.prep_formula = "54 n log_3(n)";
    else r.prep_width = 12 * n * std::pow(3.0 * lg2(n), 3), r.prep_formula = "12n (3 log_2(n))^3";
  }
  return r;
}

void check(const Scenario& s) {
  if (s.n < 2) throw ArithmeticError("bit size must be at least 2");
  if (!(s.epsilon > 0 && s.epsilon < 1) || !(s.delta > 0 && s.delta < 1))
    throw ArithmeticError("precisions must lie in (0, 1)");
  if (s.control_level < 0 || s.control_level > 2) throw ArithmeticError("control level outside 0..2");
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string platform_name(Platform p) {
  switch (p) {
    case Platform::generic_p9_distillation: return "generic-P9-distillation";
    case Platform::mtqc_p9_preparation: return "MTQC-P9-preparation";
    case Platform::mtqc_inline: return "MTQC-inline";
    case Platform::binary_clifford_t_reference: return "binary-CliffordT-reference";
  }
  return "?";
}

std::optional<Platform> platform_from_name(const std::string& s) {
  for (Platform p : {Platform::generic_p9_distillation, Platform::mtqc_p9_preparation, Platform::mtqc_inline,
                     Platform::binary_clifford_t_reference})
    if (platform_name(p) == s) return p;
  return std::nullopt;
}

double log3_15() { return std::log(15.0) / std::log(3.0); }
double log2_3() { return std::log2(3.0); }

int Scenario::m() const { return ternary_digits_for_bits(n); }

std::string basis_name(CountBasis b) { return b == CountBasis::p9 ? "P9" : b == CountBasis::r ? "R" : "T"; }

int digit_ones(std::uint64_t v, int radix) {
  int c = 0;
  for (; v; v /= static_cast<std::uint64_t>(radix)) c += v % static_cast<std::uint64_t>(radix) == 1;
  return c;
}

ShiftCost ripple_shift_costs(const Scenario& s) {
  check(s);
  if (s.adder != AdderKind::ripple) throw ArithmeticError("ripple shift costs need the ripple adder");
  static constexpr int binary[3] = {12, 18, 24};
  static constexpr int ternary_bits[3] = {19, 21, 33};
  static constexpr int ternary_trits[3] = {30, 34, 53};
  ShiftCost c;
  if (s.encoding == Encoding::binary) {
    c.per_bit_coefficient = binary[s.control_level];
  } else {
    c.per_bit_coefficient = ternary_bits[s.control_level];
    c.per_trit_coefficient = ternary_trits[s.control_level];
    c.per_trit_count = static_cast<double>(c.per_trit_coefficient) * s.m();
  }
  c.count = static_cast<double>(c.per_bit_coefficient) * s.n;
  return c;
}

LookaheadCost lookahead_costs(const Scenario& s) {
  check(s);
  if (s.adder != AdderKind::lookahead) throw ArithmeticError("lookahead costs need the lookahead adder");
  const bool ternary = s.encoding == Encoding::ternary;
  const int digits = ternary ? s.m() : s.n;
  LookaheadCost c;
  c.depth_units = 4.0 * lg2(digits);
  c.width = 4.0 * digits - digit_ones(static_cast<std::uint64_t>(digits), ternary ? 3 : 2);
  return c;
}

double controlled_shift_blocks(const Scenario& s) {
  check(s);
  const double d = s.encoding == Encoding::binary ? s.n : s.m();
  return (s.encoding == Encoding::binary ? 6.0 : 16.0) * d * d;
}

CostReport modexp_cost(const Scenario& s) {
  check(s);
  for (const Row& row : rows()) {
    if (row.table != s.adder || row.platform != s.platform || row.encoding != s.encoding) continue;
    if (row.reference && *row.reference != s.reference) continue;
    return evaluate(row, s);
  }
  throw ArithmeticError("no table row for platform " + platform_name(s.platform) + " with this encoding");
}

SynthesisCount synthesis_cost(SynthesisKind kind, double delta) {
  if (!(delta > 0 && delta < 1)) throw ArithmeticError("precision must lie in (0, 1)");
  const double l3 = lg3(1.0 / delta);
  SynthesisCount c;
  switch (kind) {
    case SynthesisKind::reflection_r: c.r = 8 * l3; break;
    case SynthesisKind::mu_prep_r: c.r = 6 * l3; break;
    case SynthesisKind::phase_gate_r40: c.r = 40 * l3; break;
    case SynthesisKind::phase_gate_r24_plus_p9:
      c.r = 24 * l3;
      c.p9 = 30;  // upper bound
      break;
    case SynthesisKind::t_phase_reference: c.t = 3 * lg2(1.0 / delta); break;
  }
  return c;
}

std::vector<CostReport> table_rows(AdderKind table, int n, double gamma) {
  std::vector<CostReport> out;
  for (const Row& row : rows()) {
    if (row.table != table) continue;
    Scenario s;
    s.n = n;
    s.adder = table;
    s.platform = row.platform;
    s.encoding = row.encoding;
    s.gamma = gamma;
    if (row.reference) s.reference = *row.reference;
    out.push_back(evaluate(row, s));
  }
  return out;
}

std::string format_table_text(const std::vector<CostReport>& rows, int n) {
  std::ostringstream os;
  os << "n = " << n << "  (g = distillation exponent)\n";
  os << std::left << std::setw(48) << "platform" << std::setw(18) << "width" << std::setw(36) << "depth"
     << std::setw(16) << "depth value" << std::setw(22) << "prep width" << "prep value\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(48) << r.row << std::setw(18) << r.width_formula << std::setw(36)
       << r.depth_formula << std::setw(16) << fixed(r.depth) << std::setw(22) << r.prep_formula << fixed(r.prep_width)
       << "\n";
  }
  return os.str();
}

std::string format_table_csv(const std::vector<CostReport>& rows, int n) {
  std::ostringstream os;
  os << "platform,encoding,row,n,width,width-value,depth-formula,depth-value,prep-width,prep-width-value,basis\n";
  for (const auto& r : rows) {
    os << platform_name(r.platform) << ',' << (r.encoding == Encoding::binary ? "binary" : "ternary") << ",\""
       << r.row << "\"," << n << ',' << r.width_formula << ',' << fixed(r.width) << ',' << r.depth_formula
       << ',' << fixed(r.depth) << ',' << r.prep_formula << ',' << fixed(r.prep_width) << ',' << basis_name(r.basis)
       << "\n";
  }
  return os.str();
}

}  // namespace qtk
