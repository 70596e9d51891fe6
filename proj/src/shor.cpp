#include "qtk/shor.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <thread>

#include "qtk/errors.hpp"
#include "qtk/qft.hpp"

namespace qtk {

namespace {

constexpr std::uint64_t kFullRegisterMaxStates = 4096;

std::uint64_t radix_of(Encoding e) { return e == Encoding::binary ? 2 : 3; }

std::uint64_t read_register(const SparseState& s, std::uint64_t index, const std::vector<int>& wires,
                            std::uint64_t radix) {
  std::uint64_t v = 0, p = 1;
  for (int w : wires) {
    v += p * static_cast<std::uint64_t>(s.digit(index, w));
    p *= radix;
  }
  return v;
}

std::uint64_t sample(const std::vector<double>& p, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    acc += p[j];
    if (u < acc) return j;
  }
  // rounding slack: last outcome with weight
  for (std::size_t j = p.size(); j-- > 0;)
    if (p[j] > 0) return j;
  return 0;
}

}  // namespace

PeriodCandidate classical_postprocess(std::uint64_t j, std::uint64_t q, std::uint64_t modulus, std::uint64_t base) {
  PeriodCandidate c{j, q, 0, false};
  if (q == 0 || j >= q) throw ArithmeticError("measurement outside the register");
  if (j == 0) {
    if (pow_mod(base, 1, modulus) == 1 % modulus) c.r = 1, c.verified = true;
    return c;
  }
  // convergents h/k of j/q
  std::uint64_t num = j, den = q;
  std::uint64_t h_prev = 0, h = 1, k_prev = 1, k = 0;
  std::uint64_t best = 0;
  while (den != 0) {
    const std::uint64_t t = num / den;
    const std::uint64_t h_next = t * h + h_prev, k_next = t * k + k_prev;
    h_prev = h, h = h_next, k_prev = k, k = k_next;
    num = std::exchange(den, num % den);
    if (k > modulus) break;
    // |j/q - h/k| <= 1/(2q)  <=>  2|j k - h q| <= k
    const auto lhs = static_cast<__int128>(j) * k - static_cast<__int128>(h) * q;
    if (2 * (lhs < 0 ? -lhs : lhs) <= static_cast<__int128>(k)) best = k;
  }
  if (best == 0) return c;
  for (std::uint64_t r = best; r <= modulus; r += best) {
    if (pow_mod(base, r, modulus) == 1) {
      c.r = r;
      c.verified = true;
      return c;
    }
  }
  c.r = best;
  return c;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> factors_from_period(std::uint64_t r, std::uint64_t base,
                                                                           std::uint64_t modulus) {
  if (r == 0 || r % 2 != 0) return std::nullopt;
  const std::uint64_t half = pow_mod(base, r / 2, modulus);
  if (half == modulus - 1 || half == 1) return std::nullopt;
  const std::uint64_t f = std::gcd(half - 1, modulus);
  if (f <= 1 || f >= modulus) return std::nullopt;
  const std::uint64_t g = std::gcd(half + 1, modulus);
  return std::pair{std::min(f, g), std::max(f, g)};
}

std::vector<double> analytic_distribution(std::uint64_t base, std::uint64_t modulus, std::uint64_t q) {
  // P(j) = q^-2 sum_x |sum_{k: a^k = x} zeta_q^{jk}|^2
  std::map<std::uint64_t, std::vector<std::uint64_t>> preimages;
  std::uint64_t v = 1 % modulus;
  for (std::uint64_t k = 0; k < q; ++k) {
    preimages[v].push_back(k);
    v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * base % modulus);
  }
  std::vector<cplx> roots(q);
  for (std::uint64_t t = 0; t < q; ++t)
    roots[t] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(q));
  std::vector<double> p(q, 0.0);
  const double scale = 1.0 / (static_cast<double>(q) * static_cast<double>(q));
  for (std::uint64_t j = 0; j < q; ++j) {
    double total = 0.0;
    for (const auto& [x, ks] : preimages) {
      cplx s = 0.0;
      for (std::uint64_t k : ks) s += roots[static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * k % q)];
      total += std::norm(s);
    }
    p[j] = total * scale;
  }
  return p;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw SizeError("distributions differ in support size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2.0;
}

PeriodFinder::PeriodFinder(ModExpSpec spec) : spec_(spec) {
  if (spec_.base == 0 || spec_.base >= spec_.modulus || std::gcd(spec_.base, spec_.modulus) != 1)
    throw ArithmeticError("base must be coprime to the modulus and below it");
  exponent_digits_ =
      spec_.exponent_digits > 0 ? spec_.exponent_digits : default_exponent_digits(spec_.encoding, spec_.modulus);
  const std::uint64_t d = radix_of(spec_.encoding);
  q_ = 1;
  for (int e = 0; e < exponent_digits_; ++e) q_ *= d;

  // Round r handles exponent digit E-1-r and multiplies by a^(d^(E-1-r)).
  std::vector<std::uint64_t> factors(exponent_digits_);
  std::uint64_t f = spec_.base;
  for (int e = 0; e < exponent_digits_; ++e) {
    factors[e] = f;
    f = pow_mod(f, d, spec_.modulus);
  }
  bool x_holds = true;
  for (int r = 0; r < exponent_digits_; ++r) {
    ModExpCircuit stage = controlled_multiply(factors[exponent_digits_ - 1 - r], spec_.modulus, spec_.encoding, x_holds);
    x_holds = stage.layout.result == stage.layout.x;
    stage_width_ = stage.layout.width;
    stages_.push_back(std::make_unique<MonomialMap>(std::move(stage.circuit)));
  }
}

PeriodCandidate PeriodFinder::run_semiclassical(std::uint64_t seed) const {
  Rng rng(seed);
  const bool binary = spec_.encoding == Encoding::binary;
  const std::uint64_t d = radix_of(spec_.encoding);
  const int control = 0;
  // value 1 in the first work register (layout: control, x, y, workspace)
  SparseState state = SparseState::basis(stage_width_, pow3u(1));
  const GateRef prepare = gate(binary ? "BH" : "H");
  const GateRef unprepare = gate(binary ? "BH" : "Hdg");
  const GateRef reset = gate("INCdg");
  std::uint64_t j = 0;     // digits measured so far
  std::uint64_t scale = 1; // d^r
  for (int r = 0; r < exponent_digits_; ++r) {
    state.apply(*prepare, {control});
    state = stages_[r]->apply(state);
    if (j != 0) {
      // remove the phase the earlier digits contribute: theta = j / d^(r+1)
      const std::string name = std::string(binary ? "BP[" : "PH[") + "-" + std::to_string(j) + "/" +
                               std::to_string(scale * d) + "]";
      state.apply(*gate(name), {control});
    }
    state.apply(*unprepare, {control});
    const int m = state.measure(control, rng);
    for (int t = 0; t < m; ++t) state.apply(*reset, {control});
    j += static_cast<std::uint64_t>(m) * scale;
    scale *= d;
  }
  return classical_postprocess(j, q_, spec_.modulus, spec_.base);
}

const std::vector<double>& PeriodFinder::full_register_distribution() const {
  std::call_once(full_once_, [this] {
    if (q_ > kFullRegisterMaxStates)
      throw SizeError("full-register simulation limited to " + std::to_string(kFullRegisterMaxStates) +
                      " exponent states");
    ModExpSpec s = spec_;
    s.exponent_digits = exponent_digits_;
    s.strategy = ControlStrategy::full_register;
    ModExpCircuit mc = modexp_circuit(s);
    const bool binary = spec_.encoding == Encoding::binary;
    Circuit c(mc.layout.width);
    for (int w : mc.layout.exponent) c.gate(binary ? "BH" : "H", {w});
    c.append(mc.circuit);
    const Circuit transform = binary ? qft2n(exponent_digits_) : qft3n(exponent_digits_);
    c.append(inverse(transform), mc.layout.exponent);
    std::vector<int> start(mc.layout.width, 0);
    start[mc.layout.x[0]] = 1;
    const auto rec = qtk::run(c, SparseState::basis_digits(start), 0);
    std::vector<double> p(q_, 0.0);
    const std::uint64_t d = radix_of(spec_.encoding);
    for (const auto& [idx, amp] : rec.state.entries()) {
      for (int e : mc.layout.exponent)
        if (binary && rec.state.digit(idx, e) == 2) throw SimulationError("exponent register left the binary subspace");
      p[read_register(rec.state, idx, mc.layout.exponent, d)] += std::norm(amp);
    }
    full_distribution_ = std::move(p);
  });
  return full_distribution_;
}

PeriodCandidate PeriodFinder::run_full_register(std::uint64_t seed) const {
  Rng rng(seed);
  const std::uint64_t j = sample(full_register_distribution(), rng);
  return classical_postprocess(j, q_, spec_.modulus, spec_.base);
}

PeriodCandidate PeriodFinder::run(std::uint64_t seed) const {
  return spec_.strategy == ControlStrategy::semiclassical ? run_semiclassical(seed) : run_full_register(seed);
}

std::vector<PeriodCandidate> PeriodFinder::run_trials(std::uint64_t seed, int trials, int threads) const {
  std::vector<PeriodCandidate> out(static_cast<std::size_t>(std::max(trials, 0)));
  if (spec_.strategy == ControlStrategy::full_register) full_register_distribution();
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(trials, 1));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < trials;) out[i] = run(seed + static_cast<std::uint64_t>(i));
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  return out;
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool square_free(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace

FactorReport shor_factor(std::uint64_t modulus, std::uint64_t seed, const FactorOptions& options) {
  if (modulus < 15 || modulus % 2 == 0 || is_prime(modulus) || !square_free(modulus))
    throw ArithmeticError("factoring needs an odd, composite, square-free modulus");
  FactorReport report;
  Rng rng(seed);
  std::map<std::uint64_t, std::unique_ptr<PeriodFinder>> finders;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    FactorAttempt a;
    a.base = options.base ? *options.base : 2 + rng.below(modulus - 3);
    const std::uint64_t g = std::gcd(a.base, modulus);
    if (g > 1) {
      a.outcome = "gcd";
      report.attempts.push_back(a);
      report.success = true;
      report.factors = {std::min(g, modulus / g), std::max(g, modulus / g)};
      return report;
    }
    auto& finder = finders[a.base];
    if (!finder) finder = std::make_unique<PeriodFinder>(ModExpSpec{a.base, modulus, options.encoding, 0, options.strategy});
    a.candidate = finder->run(rng.next());
    if (!a.candidate.verified) {
      a.outcome = "no period";
    } else if (a.candidate.r % 2 != 0) {
      a.outcome = "odd period";
    } else if (auto f = factors_from_period(a.candidate.r, a.base, modulus)) {
      a.outcome = "factored";
      report.attempts.push_back(a);
      report.success = true;
      report.factors = *f;
      return report;
    } else {
      a.outcome = "trivial root";
    }
    report.attempts.push_back(a);
  }
  return report;
}

}  // namespace qtk
