#pragma once

#include <string>
#include <vector>

namespace qtk {

// One named check with what was measured next to what it was compared against.
struct Check {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
};

bool all_pass(const std::vector<Check>& checks);
std::string format_checks(const std::vector<Check>& checks);

// P9 counts and depths of the widget library against their reference counts.
std::vector<Check> widget_count_ledger();
// Exhaustive basis-state behaviour of the widgets, ancillas included.
std::vector<Check> widget_functional();
// Exhaustive adders, comparators, carry tables and modular shifts at small sizes.
std::vector<Check> adder_exhaustive();
// Per-digit P9 counts of constructed shifts at 8..16 digits against the cost model.
std::vector<Check> adder_count_scaling();
// Fourier transforms against the DFT matrix and the approximation bound.
std::vector<Check> qft_checks();
// |k>|1> -> |k>|a^k mod N> for every k of the given range.
std::vector<Check> modexp_exhaustive();

}  // namespace qtk
