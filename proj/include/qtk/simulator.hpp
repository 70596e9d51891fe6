#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>
#include <string>
#include <vector>

#include "qtk/circuit.hpp"
#include "qtk/state.hpp"

namespace qtk {

enum class GateMode { ideal, injected };

template <class S>
struct RunRecord {
  S state;
  std::vector<int> slots;
  std::vector<int> rus_trials;  // one entry per executed loop, in completion order
  std::map<std::string, int> consumed;
  std::uint64_t seed = 0;
};

struct RunOptions {
  GateMode mode = GateMode::ideal;
  // Called with the state after every executed instruction (dense runs only).
  std::function<void(const StateVector&)> on_step;
};

// In injected mode P9 and R2 are replaced by their injection protocols on one extra pool wire,
// appended when `initial` has the circuit width; the returned state drops it again.
RunRecord<StateVector> run(const Circuit& c, const StateVector& initial, std::uint64_t seed,
                           GateMode mode = GateMode::ideal);
RunRecord<StateVector> run(const Circuit& c, const StateVector& initial, std::uint64_t seed, const RunOptions& opts);
RunRecord<SparseState> run(const Circuit& c, const SparseState& initial, std::uint64_t seed,
                           GateMode mode = GateMode::ideal);

// Dense unitary of a gate-only circuit, columns indexed by input basis state.
Matrix circuit_unitary(const Circuit& c);

// Matrix of a gate-only circuit restricted to inputs and outputs with the listed wires in |0>.
// `leak` receives the largest weight any input sends outside that subspace.
Matrix restricted_unitary(const Circuit& c, const std::vector<int>& zero_wires, double* leak = nullptr);

// A gate-only circuit known to send every basis state it meets to one scaled basis state
// (a reversible-arithmetic block). Each new input is simulated once and cached; later
// applications are table lookups. Safe to share between threads.
class MonomialMap {
 public:
  explicit MonomialMap(Circuit c);
  const Circuit& circuit() const { return circuit_; }
  SparseState apply(const SparseState& s) const;
  std::size_t cached_inputs() const;

 private:
  std::pair<std::uint64_t, cplx> image(std::uint64_t input) const;

  Circuit circuit_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, std::pair<std::uint64_t, cplx>> cache_;
};

}  // namespace qtk
