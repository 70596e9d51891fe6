// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qtk/budget.hpp"
#include "qtk/cost_model.hpp"
#include "qtk/gate_matrix.hpp"
#include "qtk/modexp.hpp"
#include "qtk/shor.hpp"
#include "qtk/simulator.hpp"
#include "qtk/verify.hpp"
#include "qtk/widgets.hpp"

using namespace qtk;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Check within(const std::string& name, double measured, double target, double tol) {
  return {name, std::abs(measured - target) <= tol, fmt(measured), fmt(target) + " +- " + fmt(tol)};
}

Check below(const std::string& name, double measured, double bound) {
  return {name, measured < bound, fmt(measured), "< " + fmt(bound)};
}

Check holds(const std::string& name, bool ok, const std::string& measured = "yes") {
  return {name, ok, ok ? measured : "no", "yes"};
}

Check tally(const std::string& name, int good, int total) {
  return {name, good == total, std::to_string(good) + "/" + std::to_string(total),
          std::to_string(total) + "/" + std::to_string(total)};
}

StateVector psi_target() {
  std::vector<cplx> v(81, 0.0);
  v[0] = 1 / std::sqrt(3.0);
  v[3] = -1 / std::sqrt(3.0);
  v[6] = 1 / std::sqrt(3.0);
  return StateVector::from_amplitudes(4, v);
}

// ---------------------------------------------------------------------------

std::vector<Check> gate_catalog() {
  std::vector<Check> out;
  // the eight primitives, the identity and the Pauli family
  const std::vector<std::string> clifford{"INC", "Z", "H", "Q", "SUM", "TSWAP"};
  const std::vector<std::string> non_clifford{"P9", "R2"};
  int unitary = 0, total = 0;
  std::vector<std::string> names = clifford;
  names.insert(names.end(), non_clifford.begin(), non_clifford.end());
  names.push_back("I");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) names.push_back("PAULI[" + std::to_string(a) + "," + std::to_string(b) + "]");
  for (const auto& n : names) total++, unitary += primitive_matrix(n).is_unitary(1e-12);
  out.push_back(tally("unitary within 1e-12", unitary, total));
  int classified = 0;
  for (const auto& n : clifford) classified += is_clifford(primitive_matrix(n));
  for (const auto& n : non_clifford) classified += !is_clifford(primitive_matrix(n));
  out.push_back(tally("Clifford classification", classified, 8));
  out.push_back(holds("controlled INC equals SUM exactly",
                      controlled(primitive_matrix("INC"), Ternary{}).matrix() == primitive_matrix("SUM").matrix()));
  return out;
}

std::vector<Check> p9_injection() {
  const Circuit w = p9_injection_widget();
  Rng rng(2024);
  double worst = 0.0;
  int complete = 0;
  for (int i = 0; i < 100; ++i) {
    const StateVector in = StateVector::random(1, rng);
    StateVector want = in;
    want.apply(primitive_matrix("P9"), {0});
    std::set<int> seen;
    for (std::uint64_t s = 0; s < 64 && seen.size() < 3; ++s) {
      const auto rec = run(w, in.extended(1), 1000 * i + s);
      seen.insert(rec.slots[0]);
      worst = std::max(worst, distance_up_to_phase(rec.state.truncated(1), want));
    }
    complete += seen.size() == 3;
  }
  return {below("worst distance to ideal P9", worst, 1e-10),
          tally("states corrected under every outcome", complete, 100)};
}

std::vector<Check> r2_rus() {
  const Circuit w = r2_injection_rus();
  Rng rng(77);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const StateVector in = StateVector::random(1, rng);
    StateVector want = in;
    want.apply(primitive_matrix("R2"), {0});
    worst = std::max(worst, distance_up_to_phase(run(w, in.extended(1), 500 + i).state.truncated(1), want));
  }
  double trials = 0.0, psi = 0.0;
  const int runs = 10000;
  const StateVector in = StateVector::random(1, rng).extended(1);
  for (int s = 0; s < runs; ++s) {
    const auto rec = run(w, in, 90000 + s);
    trials += rec.rus_trials.back();
    psi += rec.consumed.at("psi");
  }
  return {below("worst distance to ideal R2", worst, 1e-10), within("mean trials", trials / runs, 3.0, 0.1),
          within("mean psi consumed", psi / runs, 3.0, 0.1)};
}

std::vector<Check> state_preparation() {
  const int runs = 10000;
  std::vector<Check> out;
  const Circuit plus = appendix_a_state_prep(PrepTarget::plus_w3sq);
  double plus_trials = 0.0;
  for (int s = 0; s < runs; ++s) plus_trials += run(plus, StateVector(2), s).rus_trials.back();
  out.push_back(within("plus-state mean trials", plus_trials / runs, 1.5, 0.05));

  const Circuit eta = appendix_a_state_prep(PrepTarget::eta);
  double eta_trials = 0.0;
  for (int s = 0; s < runs; ++s) eta_trials += run(eta, StateVector(4), s).rus_trials.back();
  out.push_back(within("eta mean trials", eta_trials / runs, 2.25, 0.1));

  const Circuit psi = appendix_a_state_prep(PrepTarget::psi);
  const StateVector want = psi_target();
  double worst = 0.0, p9 = 0.0;
  std::set<int> branches;
  for (int s = 0; s < runs; ++s) {
    const auto rec = run(psi, StateVector(4), s, GateMode::injected);
    branches.insert(rec.slots[5]);
    worst = std::max(worst, distance_up_to_phase(rec.state, want));
    const auto it = rec.consumed.find("mu");
    p9 += it == rec.consumed.end() ? 0 : it->second;
  }
  out.push_back(below("psi output distance over accepted branches {0,1}", worst, 1e-10));
  out.push_back(holds("both accepting branches reached", branches == std::set<int>{0, 1}));
  // The construction consumes 27 P9 on average (4.5 per plus state, 2.25 eta rounds
  // per pipeline, 2 pipelines per accepted psi); the 6.75 target is a quarter of that.
  out.push_back(within("psi mean P9 consumption", p9 / runs, 6.75, 0.2));
  return out;
}

std::vector<Check> shor_end_to_end() {
  std::vector<Check> out;
  PeriodFinder pf({7, 15, Encoding::binary, 0, ControlStrategy::semiclassical});
  const auto exact = analytic_distribution(7, 15, pf.register_modulus());
  double useful = 0.0;
  for (std::uint64_t j = 0; j < exact.size(); ++j)
    if (const auto c = classical_postprocess(j, pf.register_modulus(), 15, 7); c.verified && factors_from_period(c.r, 7, 15))
      useful += exact[j];
  out.push_back({"analytic mass on useful outcomes", useful >= 0.5, fmt(useful), ">= 0.5"});

  int factored = 0;
  for (const auto& c : pf.run_trials(1, 200)) {
    const auto f = c.verified ? factors_from_period(c.r, 7, 15) : std::nullopt;
    factored += f && *f == std::pair<std::uint64_t, std::uint64_t>{3, 5};
  }
  out.push_back({"200 single-run trials recovering {3,5}", factored >= 120, std::to_string(factored) + "/200",
                 ">= 120/200"});

  const int samples = 10000;
  std::vector<double> emp(exact.size(), 0.0);
  for (const auto& c : pf.run_trials(1000, samples)) emp[c.j] += 1.0 / samples;
  out.push_back(below("semiclassical total variation (10^4 samples)", total_variation(emp, exact), 0.05));

  PeriodFinder full({7, 15, Encoding::binary, 0, ControlStrategy::full_register});
  out.push_back(below("full-register exact total variation", total_variation(full.full_register_distribution(), exact),
                      1e-9));

  // base 2 has period 6 modulo 21; seed 2 recovers it on the first run
  FactorOptions demo_options;
  demo_options.base = 2;
  demo_options.max_attempts = 1;
  const auto demo = shor_factor(21, 2, demo_options);
  const bool by_period = !demo.attempts.empty() && demo.attempts.back().outcome == "factored";
  out.push_back(holds("N=21, base 2, seed 2, one run",
                      by_period && demo.factors == std::pair<std::uint64_t, std::uint64_t>{3, 7},
                      std::to_string(demo.factors.first) + " x " + std::to_string(demo.factors.second) + " from r = " +
                          std::to_string(demo.attempts.back().candidate.r)));
  return out;
}

// Independent evaluators for every formula the tables print.
std::vector<Check> table_reproduction() {
  const double g = std::log(15.0) / std::log(3.0);
  auto lg2 = [](double x) { return std::log2(x); };
  auto lg3 = [](double x) { return std::log(x) / std::log(3.0); };
  auto ones = [](std::uint64_t v, std::uint64_t radix) {
    int c = 0;
    for (; v; v /= radix) c += v % radix == 1;
    return c;
  };
  using F = std::function<double(double, double, int, int)>;  // n, m, w1(n), w1(m)
  const std::map<std::string, F> formulas{
      {"160 n^3", [](double n, double, int, int) { return 160 * n * n * n; }},
      {"48 n^3", [](double n, double, int, int) { return 48 * n * n * n; }},
      {"76.35 n^3", [](double n, double, int, int) { return 76.35 * n * n * n; }},
      {"432 n^3 log_3(n)", [&](double n, double, int, int) { return 432 * n * n * n * lg3(n); }},
      {"506.3 n^3 log_3(n)", [&](double n, double, int, int) { return 506.3 * n * n * n * lg3(n); }},
      {"120 n^2 log_2(n)", [&](double n, double, int, int) { return 120 * n * n * lg2(n); }},
      {"127.4 n^2 log_2(n)", [&](double n, double, int, int) { return 127.4 * n * n * lg2(n); }},
      {"72 n^2 log_2(n)", [&](double n, double, int, int) { return 72 * n * n * lg2(n); }},
      {"144 n^2 log_2(n)", [&](double n, double, int, int) { return 144 * n * n * lg2(n); }},
      {"1630.5 n^2 log_3(2) (log_2(n))^2",
       [&](double n, double, int, int) { return 1630.5 * n * n * lg3(2) * lg2(n) * lg2(n); }},
      {"384 n^2 log_3(2) (log_2(n))^2",
       [&](double n, double, int, int) { return 384 * n * n * lg3(2) * lg2(n) * lg2(n); }},
      {"54 log_3(n)", [&](double n, double, int, int) { return 54 * lg3(n); }},
      {"54 n log_3(n)", [&](double n, double, int, int) { return 54 * n * lg3(n); }},
      {"54 m log_3(m)", [&](double, double m, int, int) { return 54 * m * lg3(m); }},
      {"3 (3 log_2(n))^3", [&](double n, double, int, int) { return 3 * std::pow(3 * lg2(n), 3); }},
      {"12n (3 log_2(n))^3", [&](double n, double, int, int) { return 12 * n * std::pow(3 * lg2(n), 3); }},
      {"n (6 log_2(n))^g", [&](double n, double, int, int) { return n * std::pow(6 * lg2(n), g); }},
      {"3n (6 log_2(n))^g", [&](double n, double, int, int) { return 3 * n * std::pow(6 * lg2(n), g); }},
      {"3", [](double, double, int, int) { return 3.0; }},
      {"3n", [](double n, double, int, int) { return 3 * n; }},
      {"3m", [](double, double m, int, int) { return 3 * m; }},
      {"2n + 6", [](double n, double, int, int) { return 2 * n + 6; }},
      {"n + 4", [](double n, double, int, int) { return n + 4; }},
      {"2m - w1(m)", [](double, double m, int, int w) { return 2 * m - w; }},
      {"4n - w1(n)", [](double n, double, int w, int) { return 4 * n - w; }},
      {"4m - w1(m)", [](double, double m, int, int w) { return 4 * m - w; }},
      {"3n - w1(n)", [](double n, double, int w, int) { return 3 * n - w; }},
      {"3m - w1(m)", [](double, double m, int, int w) { return 3 * m - w; }},
      {"3n + 6 log_2(n)", [&](double n, double, int, int) { return 3 * n + 6 * lg2(n); }},
  };
  int rows = 0, matched = 0;
  std::string missing;
  for (int n : {10, 16, 1024}) {
    const int m = static_cast<int>(std::ceil(n * std::log(2.0) / std::log(3.0) - 1e-12));
    for (AdderKind t : {AdderKind::ripple, AdderKind::lookahead})
      for (const auto& r : table_rows(t, n, g)) {
        ++rows;
        bool ok = true;
        for (const auto& [formula, value] :
             {std::pair{r.width_formula, r.width}, {r.depth_formula, r.depth}, {r.prep_formula, r.prep_width}}) {
          const auto it = formulas.find(formula);
          if (it == formulas.end()) {
            ok = false;
            missing += " [" + formula + "]";
            continue;
          }
          const double want = it->second(n, m, ones(n, 2), ones(m, 3));
          ok = ok && std::abs(value - want) <= 1e-9 * std::max(1.0, std::abs(want));
        }
        matched += ok;
      }
  }
  std::vector<Check> out{tally("row formulas at n = 10, 16, 1024" + missing, matched, rows)};
  Scenario s;
  s.n = 10;
  s.platform = Platform::mtqc_p9_preparation;
  out.push_back(within("ripple binary depth at n=10", modexp_cost(s).depth, 48000, 1e-9));
  out.push_back(holds("48 derived from the per-bit shift count", modexp_cost(s).coefficient_derived));
  s.adder = AdderKind::lookahead;
  out.push_back(within("lookahead binary depth at n=10", modexp_cost(s).depth, 120 * 100 * lg2(10), 1e-6));
  s.platform = Platform::binary_clifford_t_reference;
  s.adder = AdderKind::ripple;
  out.push_back(within("reference ripple depth at n=10", modexp_cost(s).depth, 160000, 1e-9));
  out.push_back(within("default gamma", Scenario{}.gamma, g, 1e-15));
  return out;
}

std::vector<Check> appendix_budget() {
  std::vector<Check> out;
  Rng rng(4242);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int depth = 1 + i % 8;
    const auto t = perturbed_product_trial(depth, 1 + i % 2, 0.02 + 0.001 * (i % 7), rng);
    ok += t.distance <= t.bound + 1e-12;
    worst = std::max(worst, t.distance / t.bound);
  }
  out.push_back(tally("perturbed products within d delta", ok, 100));
  out.push_back(below("largest distance / (d delta)", worst, 1.0 + 1e-12));
  int held = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto t = useful_probability_trial(9 + 9 * (i % 3), 1 + i % 8, 0.01 + 0.02 * (i % 10), rng);
    held += t.projected >= t.bound - 1e-12;
  }
  out.push_back(tally("projection lower bound", held, 10000));
  int half = 0;
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 100.0;
    half += fidelity_budget(p, std::sqrt(p) / 4, 1).useful_lower_bound >= p / 2 - 1e-15;
  }
  out.push_back(tally("eps = sqrt(p)/4 keeps half the useful weight", half, 100));
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::vector<Check>()>>> criteria{
      {"gate catalog", gate_catalog},
      {"P9 injection", p9_injection},
      {"R2 repeat-until-success", r2_rus},
      {"resource-state preparation", state_preparation},
      {"widget count ledger", widget_count_ledger},
      {"widget functional exhaustion", widget_functional},
      {"adders", adder_exhaustive},
      {"count scaling", adder_count_scaling},
      {"QFT", qft_checks},
      {"modular exponentiation", modexp_exhaustive},
      {"end-to-end factoring", shor_end_to_end},
      {"cost tables", table_reproduction},
      {"precision budget", appendix_budget},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    try {
      checks = criteria[i].second();
    } catch (const std::exception& e) {
      checks.push_back({"exception", false, e.what(), "none"});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = all_pass(checks);
    failed += !pass;
    std::printf("%s criterion %zu: %s (%.2f s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    std::printf("%s", format_checks(checks).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
