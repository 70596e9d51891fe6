#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtk/arithmetic.hpp"

namespace qtk {

// Closed-form resource model. Every formula keeps only its leading term.

enum class AdderKind { ripple, lookahead };
enum class Platform { generic_p9_distillation, mtqc_p9_preparation, mtqc_inline, binary_clifford_t_reference };
// The reduced-depth table carries two binary references.
enum class LookaheadReference { draper_svore, kutin };

std::string platform_name(Platform p);
std::optional<Platform> platform_from_name(const std::string& s);

double log3_15();  // default distillation exponent
double log2_3();

struct Scenario {
  int n = 16;  // bits
  Encoding encoding = Encoding::binary;
  AdderKind adder = AdderKind::ripple;
  Platform platform = Platform::mtqc_p9_preparation;
  int control_level = 0;  // number of controls on a shift
  double epsilon = 0.1;   // end-to-end precision
  double delta = 1e-3;    // per-gate precision
  double gamma = log3_15();
  LookaheadReference reference = LookaheadReference::draper_svore;

  int m() const;  // trits for n bits
};

enum class CountBasis { p9, r, t };
std::string basis_name(CountBasis b);

struct CostReport {
  std::string row;  // table row label
  Platform platform = Platform::mtqc_p9_preparation;
  Encoding encoding = Encoding::binary;
  double width = 0;
  std::string width_formula;
  double depth = 0;
  std::string depth_formula;
  double prep_width = 0;
  std::string prep_formula;
  std::optional<double> prep_width_average;  // n-fold worst case rows: n / log2(n) average
  CountBasis basis = CountBasis::p9;
  bool leading_order = true;
  bool coefficient_derived = false;  // false: the coefficient is a stored literal
};

// P9 counts of one ripple additive shift.
struct ShiftCost {
  int per_bit_coefficient = 0;   // table form, in units of n
  int per_trit_coefficient = 0;  // ternary only, in units of m
  double count = 0;              // per-bit form evaluated at n
  double per_trit_count = 0;     // ternary: per-trit form at m
};
ShiftCost ripple_shift_costs(const Scenario& s);

struct LookaheadCost {
  double depth_units = 0;  // 4 log2(digits)
  int widget_p9 = 15;
  double width = 0;        // 4 d - w1(d), d the digit count
};
LookaheadCost lookahead_costs(const Scenario& s);

// Controlled shifts making up one exponentiation: 6 n^2 (binary) or 16 m^2 (ternary).
double controlled_shift_blocks(const Scenario& s);

CostReport modexp_cost(const Scenario& s);

enum class SynthesisKind { reflection_r, mu_prep_r, phase_gate_r40, phase_gate_r24_plus_p9, t_phase_reference };
struct SynthesisCount {
  double r = 0;
  double p9 = 0;
  double t = 0;
};
SynthesisCount synthesis_cost(SynthesisKind kind, double delta);

// Count of digit 1 in the base-`radix` expansion.
int digit_ones(std::uint64_t v, int radix);

// Rows of one table in its printed order, evaluated at the scenario's n.
std::vector<CostReport> table_rows(AdderKind table, int n, double gamma = log3_15());
std::string format_table_text(const std::vector<CostReport>& rows, int n);
std::string format_table_csv(const std::vector<CostReport>& rows, int n);

}  // namespace qtk
