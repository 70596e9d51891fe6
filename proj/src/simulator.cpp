#include "qtk/simulator.hpp"

#include <algorithm>

#include "qtk/errors.hpp"

namespace qtk {

namespace {

template <class S>
class Executor {
 public:
  Executor(S state, std::uint64_t seed, GateMode mode, int pool, int slots,
           const std::function<void(const StateVector&)>* observer)
      : state_(std::move(state)), rng_(seed), mode_(mode), pool_(pool), observer_(observer) {
    record_slots_.assign(std::max(slots, 1), 0);
  }

  void exec(const std::vector<Instruction>& body) {
    for (const auto& ins : body) {
      std::visit([&](const auto& op) { step(op); }, ins.op);
      observe();
    }
  }

  RunRecord<S> finish(std::uint64_t seed) && {
    return {std::move(state_), std::move(record_slots_), std::move(trials_), std::move(consumed_), seed};
  }

  S& state() { return state_; }

 private:
  void observe() {
    if constexpr (std::is_same_v<S, StateVector>)
      if (observer_ && *observer_) (*observer_)(state_);
  }

  int& slot(int k) {
    if (k >= static_cast<int>(record_slots_.size())) record_slots_.resize(k + 1, 0);
    return record_slots_[k];
  }

  void apply(const std::string& name, std::vector<int> wires) { state_.apply(*gate(name), wires); }

  void step(const GateOp& op) {
    if (mode_ == GateMode::injected && op.gate->injectable != Injectable::none) {
      inject(op.gate->injectable, op.wires[0]);
      return;
    }
    state_.apply(*op.gate, op.wires);
  }

  void step(const MeasureOp& op) { slot(op.slot) = state_.measure(op.wire, rng_); }

  void step(const CondGateOp& op) {
    if (slot(op.slot) == op.value) step(op.op);
  }

  void step(const PrepOp& op) {
    state_.prepare(op.wire, resource_state_amplitudes(op.state));
    ++consumed_[resource_state_name(op.state)];
  }

  void step(const TableOp& op) { slot(op.dst) = op.table[3 * slot(op.a) + slot(op.b)]; }

  void step(const RusOp& op) {
    const RusData& d = *op.data;
    std::vector<int> outcomes;
    for (int trial = 1; trial <= d.max_iterations; ++trial) {
      exec(d.body);
      const int v = slot(d.slot);
      outcomes.push_back(v);
      for (const auto& c : d.corrections)
        if (c.value == v) {
          std::visit([&](const auto& inner) { step(inner); }, c.op.op);
          observe();
        }
      if (v == d.value) {
        trials_.push_back(trial);
        return;
      }
    }
    throw NonTerminationError("repeat-until-success loop exceeded " + std::to_string(d.max_iterations) +
                                  " iterations",
                              std::move(outcomes));
  }

  // P9 by mu injection (P9^dagger conjugates it by the 0<->2 swap); R2 by the psi loop.
  void inject(Injectable kind, int q) {
    if (pool_ < 0) throw SimulationError("injected mode without a pool wire");
    const int p = pool_;
    if (kind == Injectable::r2) {
      int s = 0;
      for (int trial = 1;; ++trial) {
        if (trial > 1000) throw NonTerminationError("R2 injection exceeded 1000 trials", trials_);
        state_.prepare(p, resource_state_amplitudes(ResourceState::psi));
        ++consumed_["psi"];
        apply("SUM", {q, p});
        const int m = state_.measure(p, rng_);
        reset(p, m);
        const bool ok = m == (3 - s) % 3;
        if (ok) {
          trials_.push_back(trial);
          return;
        }
        static constexpr int next[9] = {0, 1, 2, 2, 0, 0, 1, 0, 0};
        s = next[3 * s + m];
      }
    }
    if (kind == Injectable::p9_dagger) apply("TAU[0,2]", {q});
    state_.prepare(p, resource_state_amplitudes(ResourceState::mu));
    ++consumed_["mu"];
    apply("L(INCdg)", {q, p});
    const int m = state_.measure(p, rng_);
    if (m == 1) apply("Q", {q});
    if (m == 2) {
      apply("Q", {q});
      apply("Q", {q});
      apply("Z", {q});
    }
    reset(p, m);
    if (kind == Injectable::p9_dagger) apply("TAU[0,2]", {q});
  }

  void reset(int wire, int m) {
    if (m == 1) apply("INCdg", {wire});
    if (m == 2) apply("INC", {wire});
  }

  S state_;
  Rng rng_;
  GateMode mode_;
  int pool_;
  const std::function<void(const StateVector&)>* observer_;
  std::vector<int> record_slots_;
  std::vector<int> trials_;
  std::map<std::string, int> consumed_;
};

template <class S>
RunRecord<S> run_impl(const Circuit& c, const S& initial, std::uint64_t seed, GateMode mode,
                      const std::function<void(const StateVector&)>* observer) {
  int pool = -1;
  int extra = 0;
  S start = initial;
  if (mode == GateMode::injected) {
    if (initial.width() == c.width()) {
      start = initial.extended(1);
      extra = 1;
    } else if (initial.width() != c.width() + 1) {
      throw WidthMismatchError("injected run expects the circuit width plus one pool wire");
    }
    pool = c.width();
  } else if (initial.width() != c.width()) {
    throw WidthMismatchError("initial state width differs from circuit width");
  }
  Executor<S> ex(std::move(start), seed, mode, pool, c.slot_count(), observer);
  ex.exec(c.instructions());
  auto rec = std::move(ex).finish(seed);
  if (extra) rec.state = rec.state.truncated(extra);
  return rec;
}

}  // namespace

RunRecord<StateVector> run(const Circuit& c, const StateVector& initial, std::uint64_t seed, GateMode mode) {
  return run_impl(c, initial, seed, mode, nullptr);
}

RunRecord<StateVector> run(const Circuit& c, const StateVector& initial, std::uint64_t seed, const RunOptions& opts) {
  return run_impl(c, initial, seed, opts.mode, &opts.on_step);
}

RunRecord<SparseState> run(const Circuit& c, const SparseState& initial, std::uint64_t seed, GateMode mode) {
  return run_impl(c, initial, seed, mode, nullptr);
}

Matrix circuit_unitary(const Circuit& c) {
  if (!c.is_unitary()) throw NonUnitaryError("circuit has non-gate instructions");
  if (c.width() > 7) throw SizeError("unitary extraction limited to 7 qutrits");
  const int d = pow3(c.width());
  Matrix m(d, d);
  for (int col = 0; col < d; ++col) {
    StateVector s = StateVector::basis(c.width(), col);
    for (const auto& ins : c.instructions()) {
      const auto& g = std::get<GateOp>(ins.op);
      s.apply(*g.gate, g.wires);
    }
    for (int r = 0; r < d; ++r) m(r, col) = s.amplitude(r);
  }
  return m;
}

Matrix restricted_unitary(const Circuit& c, const std::vector<int>& zero_wires, double* leak) {
  const Matrix u = circuit_unitary(c);
  std::vector<int> keep;
  for (int w = 0; w < c.width(); ++w)
    if (std::find(zero_wires.begin(), zero_wires.end(), w) == zero_wires.end()) keep.push_back(w);
  const int dk = pow3(static_cast<int>(keep.size()));
  std::vector<int> index(dk);
  for (int l = 0; l < dk; ++l) {
    int idx = 0, rest = l;
    for (int w : keep) {
      idx += (rest % 3) * pow3(w);
      rest /= 3;
    }
    index[l] = idx;
  }
  Matrix r(dk, dk);
  double worst = 0.0;
  for (int cl = 0; cl < dk; ++cl) {
    double kept = 0.0;
    for (int rl = 0; rl < dk; ++rl) {
      r(rl, cl) = u(index[rl], index[cl]);
      kept += std::norm(r(rl, cl));
    }
    worst = std::max(worst, 1.0 - kept);
  }
  if (leak) *leak = worst;
  return r;
}

}  // namespace qtk

namespace qtk {

MonomialMap::MonomialMap(Circuit c) : circuit_(std::move(c)) {
  if (!circuit_.is_unitary()) throw NonUnitaryError("monomial map needs a gate-only circuit");
}

std::size_t MonomialMap::cached_inputs() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

std::pair<std::uint64_t, cplx> MonomialMap::image(std::uint64_t input) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(input); it != cache_.end()) return it->second;
  }
  const auto rec = run(circuit_, SparseState::basis(circuit_.width(), input), 0);
  std::pair<std::uint64_t, cplx> best{0, 0.0};
  double norm_rest = 0.0;
  for (const auto& [idx, a] : rec.state.entries()) {
    if (std::abs(a) > std::abs(best.second)) {
      norm_rest += std::norm(best.second);
      best = {idx, a};
    } else {
      norm_rest += std::norm(a);
    }
  }
  if (norm_rest > 1e-18) throw SimulationError("circuit spreads a basis input over several outputs");
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(input, best);
  return best;
}

SparseState MonomialMap::apply(const SparseState& s) const {
  if (s.width() != circuit_.width()) throw WidthMismatchError("monomial map width differs from the state");
  std::unordered_map<std::uint64_t, cplx> out;
  out.reserve(s.entries().size());
  for (const auto& [idx, a] : s.entries()) {
    const auto [to, phase] = image(idx);
    out[to] += a * phase;
  }
  return SparseState::from_entries(s.width(), std::move(out));
}

}  // namespace qtk
