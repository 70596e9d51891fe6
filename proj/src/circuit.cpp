#include "qtk/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "qtk/errors.hpp"

namespace qtk {

std::string resource_state_name(ResourceState s) {
  switch (s) {
    case ResourceState::mu: return "mu";
    case ResourceState::psi: return "psi";
    case ResourceState::plus_w3: return "plus_w3";
    case ResourceState::plus_w3sq: return "plus_w3sq";
  }
  return "?";
}

ResourceState resource_state_from_name(const std::string& s) {
  if (s == "mu") return ResourceState::mu;
  if (s == "psi") return ResourceState::psi;
  if (s == "plus_w3") return ResourceState::plus_w3;
  if (s == "plus_w3sq") return ResourceState::plus_w3sq;
  throw CatalogError("unknown resource state '" + s + "'");
}

std::vector<cplx> resource_state_amplitudes(ResourceState s) {
  const double r3 = 1.0 / std::sqrt(3.0);
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (s) {
    case ResourceState::mu: return {r3 * root_of_unity(-1, 9), r3, r3 * root_of_unity(1, 9)};
    case ResourceState::psi: return {r3, -r3, r3};
    case ResourceState::plus_w3: return {r2, r2 * root_of_unity(1, 3), 0.0};
    case ResourceState::plus_w3sq: return {r2, r2 * root_of_unity(2, 3), 0.0};
  }
  return {};
}

Circuit::Circuit(int width) : width_(width) {
  if (width < 1) throw SizeError("circuit width must be positive");
}

void Circuit::check_wires(const std::vector<int>& wires, int arity) const {
  if (static_cast<int>(wires.size()) != arity)
    throw WireError("gate expects " + std::to_string(arity) + " wires, got " + std::to_string(wires.size()));
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 0 || wires[i] >= width_)
      throw WireError("wire " + std::to_string(wires[i]) + " outside width " + std::to_string(width_));
    for (std::size_t j = 0; j < i; ++j)
      if (wires[i] == wires[j]) throw WireError("repeated wire " + std::to_string(wires[i]));
  }
}

namespace {

void check_slot(int slot) {
  if (slot < 0) throw WireError("negative classical slot");
}

void check_value(int v) {
  if (v < 0 || v > 2) throw WireError("classical value outside 0..2");
}

bool contains_measure(const std::vector<Instruction>& body) {
  for (const auto& ins : body) {
    if (std::holds_alternative<MeasureOp>(ins.op)) return true;
    if (const auto* r = std::get_if<RusOp>(&ins.op); r && contains_measure(r->data->body)) return true;
  }
  return false;
}

}  // namespace

void Circuit::check_instruction(const Instruction& ins) const {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, GateOp>) {
          check_wires(op.wires, op.gate->arity());
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          check_wires({op.wire}, 1);
          check_slot(op.slot);
        } else if constexpr (std::is_same_v<T, CondGateOp>) {
          check_slot(op.slot);
          check_value(op.value);
          check_wires(op.op.wires, op.op.gate->arity());
        } else if constexpr (std::is_same_v<T, PrepOp>) {
          check_wires({op.wire}, 1);
        } else if constexpr (std::is_same_v<T, TableOp>) {
          check_slot(op.dst);
          check_slot(op.a);
          check_slot(op.b);
          for (int v : op.table) check_value(v);
        } else {
          const RusData& d = *op.data;
          if (!contains_measure(d.body)) throw WireError("repeat-until-success body has no measurement");
          if (d.max_iterations < 1) throw WireError("iteration cap must be positive");
          check_slot(d.slot);
          check_value(d.value);
          for (const auto& b : d.body) check_instruction(b);
          for (const auto& c : d.corrections) {
            check_value(c.value);
            if (std::holds_alternative<RusOp>(c.op.op)) throw WireError("nested loop inside a correction");
            check_instruction(c.op);
          }
        }
      },
      ins.op);
}

Circuit& Circuit::add(Instruction ins) {
  check_instruction(ins);
  instructions_.push_back(std::move(ins));
  return *this;
}

Circuit& Circuit::gate(std::string_view name, std::vector<int> wires) { return gate(qtk::gate(name), std::move(wires)); }

Circuit& Circuit::gate(GateRef g, std::vector<int> wires) { return add({GateOp{std::move(g), std::move(wires)}}); }

Circuit& Circuit::measure(int wire, int slot) { return add({MeasureOp{wire, slot}}); }

Circuit& Circuit::cc(int slot, int value, std::string_view name, std::vector<int> wires) {
  return add({CondGateOp{slot, value, GateOp{qtk::gate(name), std::move(wires)}}});
}

Circuit& Circuit::prep(ResourceState s, int wire) { return add({PrepOp{s, wire}}); }

Circuit& Circuit::table(int dst, int a, int b, std::array<int, 9> t) { return add({TableOp{dst, a, b, t}}); }

Circuit& Circuit::rus(RusData data) { return add({RusOp{std::make_shared<const RusData>(std::move(data))}}); }

Circuit& Circuit::declare_ancilla(int wire) {
  check_wires({wire}, 1);
  ancillas_.insert(wire);
  return *this;
}

namespace {

int max_slot(const std::vector<Instruction>& body) {
  int m = -1;
  for (const auto& ins : body) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, MeasureOp>) m = std::max(m, op.slot);
          if constexpr (std::is_same_v<T, CondGateOp>) m = std::max(m, op.slot);
          if constexpr (std::is_same_v<T, TableOp>) m = std::max({m, op.dst, op.a, op.b});
          if constexpr (std::is_same_v<T, RusOp>) {
            m = std::max({m, op.data->slot, max_slot(op.data->body)});
            for (const auto& c : op.data->corrections) m = std::max(m, max_slot({c.op}));
          }
        },
        ins.op);
  }
  return m;
}

Instruction remap(const Instruction& ins, const std::vector<int>& map, int so) {
  auto wires = [&](const std::vector<int>& w) {
    std::vector<int> r;
    r.reserve(w.size());
    for (int x : w) r.push_back(map.at(x));
    return r;
  };
  return std::visit(
      [&](const auto& op) -> Instruction {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, GateOp>) return {GateOp{op.gate, wires(op.wires)}};
        if constexpr (std::is_same_v<T, MeasureOp>) return {MeasureOp{map.at(op.wire), op.slot + so}};
        if constexpr (std::is_same_v<T, CondGateOp>)
          return {CondGateOp{op.slot + so, op.value, GateOp{op.op.gate, wires(op.op.wires)}}};
        if constexpr (std::is_same_v<T, PrepOp>) return {PrepOp{op.state, map.at(op.wire)}};
        if constexpr (std::is_same_v<T, TableOp>) return {TableOp{op.dst + so, op.a + so, op.b + so, op.table}};
        if constexpr (std::is_same_v<T, RusOp>) {
          RusData d = *op.data;
          for (auto& b : d.body) b = remap(b, map, so);
          for (auto& c : d.corrections) c.op = remap(c.op, map, so);
          d.slot += so;
          return {RusOp{std::make_shared<const RusData>(std::move(d))}};
        }
      },
      ins.op);
}

}  // namespace

int Circuit::slot_count() const { return max_slot(instructions_) + 1; }

bool Circuit::is_unitary() const {
  return std::all_of(instructions_.begin(), instructions_.end(),
                     [](const Instruction& i) { return std::holds_alternative<GateOp>(i.op); });
}

Circuit& Circuit::append(const Circuit& sub, const std::vector<int>& wire_map, int slot_offset) {
  if (static_cast<int>(wire_map.size()) != sub.width()) throw WidthMismatchError("wire map size differs from width");
  for (const auto& ins : sub.instructions_) add(remap(ins, wire_map, slot_offset));
  for (int a : sub.ancillas_) declare_ancilla(wire_map.at(a));
  return *this;
}

Circuit& Circuit::append(const Circuit& sub) {
  if (sub.width() != width_) throw WidthMismatchError("append without map needs equal widths");
  std::vector<int> id(width_);
  for (int i = 0; i < width_; ++i) id[i] = i;
  return append(sub, id);
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width()) throw WidthMismatchError("compose needs equal widths");
  Circuit c = a;
  c.append(b);
  return c;
}

Circuit inverse(const Circuit& a) {
  Circuit c(a.width());
  const auto& ins = a.instructions();
  for (auto it = ins.rbegin(); it != ins.rend(); ++it) {
    const auto* g = std::get_if<GateOp>(&it->op);
    if (!g) throw NonUnitaryError("inverse of a circuit with measurement or classical control");
    c.gate(adjoint_name(*g->gate), g->wires);
  }
  for (int w : a.ancillas()) c.declare_ancilla(w);
  return c;
}

namespace {

class Counter {
 public:
  explicit Counter(int width) : p9_time_(width, 0), nc_time_(width, 0) {}

  void walk(const std::vector<Instruction>& body, double weight, ResourceCount& rc) {
    for (const auto& ins : body) {
      std::visit(
          [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, GateOp>) gate(op, weight, rc);
            if constexpr (std::is_same_v<T, CondGateOp>) gate(op.op, weight, rc);
            if constexpr (std::is_same_v<T, MeasureOp>) {
              ++rc.measurement_count;
              sync({op.wire});
            }
            if constexpr (std::is_same_v<T, PrepOp>) {
              const std::string n = resource_state_name(op.state);
              ++rc.resource_states[n];
              rc.expected_resource_states[n] += weight;
              sync({op.wire});
            }
            if constexpr (std::is_same_v<T, RusOp>) {
              ++rc.rus_blocks;
              const double w = weight * op.data->expected_trials.value();
              walk(op.data->body, w, rc);
              for (const auto& c : op.data->corrections) walk({c.op}, w, rc);
            }
          },
          ins.op);
    }
  }

  int p9_depth() const { return p9_max_; }
  int nc_depth() const { return nc_max_; }

 private:
  void sync(const std::vector<int>& wires) { advance(wires, 0, 0); }

  void advance(const std::vector<int>& wires, int p9_d, int nc_d) {
    int t = 0, u = 0;
    for (int w : wires) {
      t = std::max(t, p9_time_[w]);
      u = std::max(u, nc_time_[w]);
    }
    t += p9_d;
    u += nc_d;
    for (int w : wires) {
      p9_time_[w] = t;
      nc_time_[w] = u;
    }
    p9_max_ = std::max(p9_max_, t);
    nc_max_ = std::max(nc_max_, u);
  }

  void gate(const GateOp& op, double weight, ResourceCount& rc) {
    const GateDef& g = *op.gate;
    rc.p9_count += g.p9;
    rc.r_count += g.r;
    rc.expected_p9_count += weight * g.p9;
    rc.expected_r_count += weight * g.r;
    if (g.clifford) ++rc.clifford_count;
    if (g.uncosted_non_clifford()) ++rc.uncosted_non_clifford_count;
    if (!g.costed_tag.empty()) ++rc.costed_primitive_tally[g.costed_tag];
    advance(op.wires, g.p9_depth, g.clifford ? 0 : std::max(1, g.p9_depth));
  }

  std::vector<int> p9_time_;
  std::vector<int> nc_time_;
  int p9_max_ = 0;
  int nc_max_ = 0;
};

}  // namespace

ResourceCount count_resources(const Circuit& c) {
  ResourceCount rc;
  rc.width = c.width();
  rc.ancilla_count = static_cast<int>(c.ancillas().size());
  Counter counter(c.width());
  counter.walk(c.instructions(), 1.0, rc);
  rc.p9_depth = counter.p9_depth();
  rc.non_clifford_depth = counter.nc_depth();
  return rc;
}

}  // namespace qtk
