#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtk/modexp.hpp"
#include "qtk/simulator.hpp"

namespace qtk {

struct PeriodCandidate {
  std::uint64_t j = 0;  // measured exponent-register value
  std::uint64_t q = 1;  // register modulus d^E
  std::uint64_t r = 0;  // recovered denominator, 0 when none
  bool verified = false;
};

// Largest continued-fraction denominator <= N within 1/(2Q) of j/Q, then the smallest
// multiple of it (still <= N) with a^r = 1. j = 0 only tests r = 1.
PeriodCandidate classical_postprocess(std::uint64_t j, std::uint64_t q, std::uint64_t modulus, std::uint64_t base);

// Nontrivial divisor pair from an even verified period with a^(r/2) != -1.
std::optional<std::pair<std::uint64_t, std::uint64_t>> factors_from_period(std::uint64_t r, std::uint64_t base,
                                                                           std::uint64_t modulus);

// Outcome distribution of the ideal measurement, computed from the period structure alone.
std::vector<double> analytic_distribution(std::uint64_t base, std::uint64_t modulus, std::uint64_t q);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Period finding for one base. Circuits are built once; the semiclassical stages cache their
// basis maps, so repeated runs (also from several threads) are cheap.
class PeriodFinder {
 public:
  explicit PeriodFinder(ModExpSpec spec);

  const ModExpSpec& spec() const { return spec_; }
  int exponent_digits() const { return exponent_digits_; }
  std::uint64_t register_modulus() const { return q_; }

  // One control wire recycled over the exponent digits, most significant digit first,
  // with measurement-conditioned phase corrections.
  PeriodCandidate run_semiclassical(std::uint64_t seed) const;

  // Exact outcome distribution of the full-register circuit (prepare, exponentiate,
  // inverse transform). Simulated once and cached.
  const std::vector<double>& full_register_distribution() const;
  PeriodCandidate run_full_register(std::uint64_t seed) const;

  // Dispatches on the spec's control strategy.
  PeriodCandidate run(std::uint64_t seed) const;

  // Trials with seeds seed, seed+1, ...; run concurrently, returned in seed order.
  std::vector<PeriodCandidate> run_trials(std::uint64_t seed, int trials, int threads = 0) const;

 private:
  ModExpSpec spec_;
  int exponent_digits_;
  std::uint64_t q_;
  std::vector<std::unique_ptr<MonomialMap>> stages_;  // round order
  int stage_width_ = 0;
  mutable std::once_flag full_once_;
  mutable std::vector<double> full_distribution_;
};

struct FactorAttempt {
  std::uint64_t base = 0;
  PeriodCandidate candidate;
  std::string outcome;  // "gcd", "factored", "no period", "odd period", "trivial root"
};

struct FactorReport {
  bool success = false;
  std::pair<std::uint64_t, std::uint64_t> factors{0, 0};
  std::vector<FactorAttempt> attempts;
};

struct FactorOptions {
  Encoding encoding = Encoding::binary;
  ControlStrategy strategy = ControlStrategy::semiclassical;
  std::optional<std::uint64_t> base;  // fixed base; random coprime draws otherwise
  int max_attempts = 10;
};

// Random-base factoring loop for odd, composite, square-free N, not a prime power.
// Never throws on bad luck: an exhausted budget comes back as an unsuccessful report.
FactorReport shor_factor(std::uint64_t modulus, std::uint64_t seed, const FactorOptions& options = {});

}  // namespace qtk
