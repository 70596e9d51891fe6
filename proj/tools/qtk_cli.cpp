// qtk: build, simulate, verify and cost qutrit circuits from the command line.
// Exit status: 0 success, 1 verification or run failure, 2 bad flags or arguments.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "qtk/budget.hpp"
#include "qtk/circuit_text.hpp"
#include "qtk/cost_model.hpp"
#include "qtk/errors.hpp"
#include "qtk/gate_registry.hpp"
#include "qtk/shor.hpp"
#include "qtk/simulator.hpp"
#include "qtk/verify.hpp"

using namespace qtk;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digits_string(std::uint64_t index, int width) {
  std::string s;
  for (int i = 0; i < width; ++i, index /= 3) s += static_cast<char>('0' + index % 3);
  return s;
}

std::string complex_string(cplx a) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << a.real() << (a.imag() < 0 ? " - " : " + ") << std::abs(a.imag()) << "i";
  return os.str();
}

int gate_show(const std::string& name) {
  const GateRef g = gate(name);
  std::cout << "gate " << g->name << "  arity " << g->arity() << "  clifford " << (g->clifford ? "yes" : "no")
            << "  p9 " << g->p9 << "  r " << g->r << "\n";
  const Matrix& m = g->matrix.matrix();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) std::cout << (c ? "  " : "") << std::setw(22) << complex_string(m(r, c));
    std::cout << "\n";
  }
  return kOk;
}

int circuit_count(const std::string& path) {
  const Circuit c = deserialize(read_file(path));
  const ResourceCount rc = count_resources(c);
  std::cout << "width " << rc.width << "\n"
            << "ancilla_count " << rc.ancilla_count << "\n"
            << "p9_count " << rc.p9_count << "\n"
            << "p9_depth " << rc.p9_depth << "\n"
            << "r_count " << rc.r_count << "\n"
            << "clifford_count " << rc.clifford_count << "\n"
            << "measurement_count " << rc.measurement_count << "\n"
            << "non_clifford_depth " << rc.non_clifford_depth << "\n"
            << "uncosted_non_clifford_count " << rc.uncosted_non_clifford_count << "\n"
            << "rus_blocks " << rc.rus_blocks << "\n"
            << "expected_p9_count " << rc.expected_p9_count << "\n";
  for (const auto& [tag, n] : rc.costed_primitive_tally) std::cout << "costed " << tag << " " << n << "\n";
  for (const auto& [s, n] : rc.resource_states) std::cout << "resource " << s << " " << n << "\n";
  return kOk;
}

template <class S>
void print_record(const RunRecord<S>& rec, int width) {
  std::cout << "seed " << rec.seed << "\n";
  std::cout << "slots";
  for (int v : rec.slots) std::cout << " " << v;
  std::cout << "\nrus_trials";
  for (int v : rec.rus_trials) std::cout << " " << v;
  std::cout << "\n";
  for (const auto& [k, v] : rec.consumed) std::cout << "consumed " << k << " " << v << "\n";
  std::vector<std::pair<std::uint64_t, cplx>> amps;
  if constexpr (std::is_same_v<S, StateVector>) {
    for (std::uint64_t i = 0; i < rec.state.amplitudes().size(); ++i)
      if (std::abs(rec.state.amplitude(i)) > 1e-12) amps.emplace_back(i, rec.state.amplitude(i));
  } else {
    for (const auto& [i, a] : rec.state.entries())
      if (std::abs(a) > 1e-12) amps.emplace_back(i, a);
    std::sort(amps.begin(), amps.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  std::cout << "amplitudes (wire 0 first) " << amps.size() << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(amps.size(), 64); ++i)
    std::cout << "  |" << digits_string(amps[i].first, width) << ">  " << complex_string(amps[i].second) << "\n";
}

int circuit_sim(const std::string& path, std::uint64_t seed, const std::string& mode, const std::string& input) {
  const Circuit c = deserialize(read_file(path));
  std::vector<int> digits(static_cast<std::size_t>(c.width()), 0);
  if (!input.empty()) {
    if (static_cast<int>(input.size()) != c.width()) throw std::invalid_argument("--input needs one digit per wire");
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (input[i] < '0' || input[i] > '2') throw std::invalid_argument("--input digits must be 0, 1 or 2");
      digits[i] = input[i] - '0';
    }
  }
  const GateMode gm = mode == "injected" ? GateMode::injected : GateMode::ideal;
  const int needed = c.width() + (gm == GateMode::injected ? 1 : 0);
  if (needed <= max_dense_width()) {
    std::uint64_t idx = 0, p = 1;
    for (int d : digits) idx += static_cast<std::uint64_t>(d) * p, p *= 3;
    print_record(run(c, StateVector::basis(c.width(), idx), seed, gm), c.width());
  } else {
    print_record(run(c, SparseState::basis_digits(digits), seed, gm), c.width());
  }
  return kOk;
}

int report(const std::vector<Check>& checks) {
  std::cout << format_checks(checks);
  const bool ok = all_pass(checks);
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kOk : kFailed;
}

int shor_run(std::uint64_t n, std::uint64_t base, std::uint64_t seed, const std::string& encoding, int trials,
             const std::string& strategy, int attempts) {
  FactorOptions opt;
  opt.encoding = encoding == "ternary" ? Encoding::ternary : Encoding::binary;
  opt.strategy = strategy == "full-register" ? ControlStrategy::full_register : ControlStrategy::semiclassical;
  if (base != 0) opt.base = base;
  opt.max_attempts = attempts;
  std::vector<FactorReport> reports(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(reports.size());
  {
    // one thread per hardware core, trial i always uses seed + i
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i; (i = next.fetch_add(1)) < trials;) {
        try {
          reports[i] = shor_factor(n, seed + static_cast<std::uint64_t>(i), opt);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const int threads = std::min<int>(trials, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  int successes = 0;
  for (int i = 0; i < trials; ++i) {
    const FactorReport& r = reports[i];
    std::cout << "trial " << i << " seed " << seed + static_cast<std::uint64_t>(i) << ": ";
    if (r.success) {
      ++successes;
      std::cout << "factors " << r.factors.first << ", " << r.factors.second;
    } else {
      std::cout << "no factors";
    }
    std::cout << "  (" << r.attempts.size() << " attempt" << (r.attempts.size() == 1 ? "" : "s") << ")\n";
    for (const auto& a : r.attempts) {
      std::cout << "  base " << a.base << " " << a.outcome;
      if (a.outcome != "gcd")
        std::cout << "  j " << a.candidate.j << "/" << a.candidate.q << "  r " << a.candidate.r
                  << (a.candidate.verified ? " (verified)" : "");
      std::cout << "\n";
    }
  }
  std::cout << "successes " << successes << "/" << trials << "\n";
  return successes > 0 ? kOk : kFailed;
}

int cost_table(const std::string& table, const std::string& format, int n, double gamma) {
  const auto rows = table_rows(table == "lookahead" ? AdderKind::lookahead : AdderKind::ripple, n, gamma);
  std::cout << (format == "csv" ? format_table_csv(rows, n) : format_table_text(rows, n));
  return kOk;
}

int budget(double p, double eps, int depth) {
  const FidelityBudget b = fidelity_budget(p, eps, depth);
  std::cout << std::setprecision(10) << "useful_lower_bound " << b.useful_lower_bound << "\n"
            << "half_likelihood_epsilon " << b.half_likelihood_eps << "\n"
            << "per_gate_delta " << b.per_gate_delta << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qutrit circuit toolkit"};
  app.require_subcommand(1, 1);

  std::string gate_name;
  auto* show = app.add_subcommand("gate-show", "print a gate matrix");
  show->add_option("name", gate_name, "gate name, e.g. P9, C1(SUM), PH[1/9]")->required();

  std::string path;
  auto* count = app.add_subcommand("circuit-count", "resource count of a serialized circuit");
  count->add_option("file", path)->required()->check(CLI::ExistingFile);

  std::uint64_t seed = 0;
  std::string mode = "ideal", input;
  auto* sim = app.add_subcommand("circuit-sim", "run a serialized circuit from a basis input");
  sim->add_option("file", path)->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", seed);
  sim->add_option("--mode", mode)->check(CLI::IsMember({"ideal", "injected"}));
  sim->add_option("--input", input, "one digit per wire, wire 0 first");

  auto* widget_verify = app.add_subcommand("widget-verify", "widget ledger and exhaustive checks");
  auto* adder_verify = app.add_subcommand("adder-verify", "adder, comparator and modular shift checks");
  auto* qft_verify = app.add_subcommand("qft-verify", "Fourier transform checks");

  std::uint64_t n = 15, base = 0, shor_seed = 0;
  std::string encoding = "binary", strategy = "semiclassical";
  int trials = 1, attempts = 10;
  auto* shor = app.add_subcommand("shor-run", "factor N by period finding");
  shor->add_option("--n", n)->check(CLI::Range(std::uint64_t{15}, std::uint64_t{1} << 20));
  shor->add_option("--base", base, "fixed base (default: random coprime draws)");
  shor->add_option("--seed", shor_seed);
  shor->add_option("--encoding", encoding)->check(CLI::IsMember({"binary", "ternary"}));
  shor->add_option("--trials", trials)->check(CLI::Range(1, 100000));
  shor->add_option("--strategy", strategy)->check(CLI::IsMember({"semiclassical", "full-register"}));
  shor->add_option("--attempts", attempts, "bases tried per trial")->check(CLI::Range(1, 1000));

  std::string table = "ripple", format = "text";
  int bits = 1024;
  double gamma = log3_15();
  auto* costs = app.add_subcommand("cost-table", "print the modular exponentiation cost tables");
  costs->add_option("--table", table)->check(CLI::IsMember({"ripple", "lookahead"}));
  costs->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
  costs->add_option("--n", bits, "bit size")->check(CLI::Range(2, 1 << 20));
  costs->add_option("--gamma", gamma, "distillation exponent")->check(CLI::Range(1.0, 3.0));

  double p = 0.5, eps = 0.0;
  int depth = 1;
  auto* bud = app.add_subcommand("budget", "precision budget for a useful-outcome probability");
  bud->add_option("--p", p)->required();
  bud->add_option("--eps", eps)->required();
  bud->add_option("--depth", depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*show) return gate_show(gate_name);
    if (*count) return circuit_count(path);
    if (*sim) return circuit_sim(path, seed, mode, input);
    if (*widget_verify) {
      auto checks = widget_count_ledger();
      const auto more = widget_functional();
      checks.insert(checks.end(), more.begin(), more.end());
      return report(checks);
    }
    if (*adder_verify) {
      auto checks = adder_exhaustive();
      const auto more = adder_count_scaling();
      checks.insert(checks.end(), more.begin(), more.end());
      return report(checks);
    }
    if (*qft_verify) return report(qft_checks());
    if (*shor) return shor_run(n, base, shor_seed, encoding, trials, strategy, attempts);
    if (*costs) return cost_table(table, format, bits, gamma);
    if (*bud) return budget(p, eps, depth);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
