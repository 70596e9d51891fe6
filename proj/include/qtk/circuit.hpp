#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qtk/gate_registry.hpp"
#include "qtk/phase.hpp"

namespace qtk {

enum class ResourceState { mu, psi, plus_w3, plus_w3sq };

std::string resource_state_name(ResourceState s);
ResourceState resource_state_from_name(const std::string& s);
std::vector<cplx> resource_state_amplitudes(ResourceState s);

struct GateOp {
  GateRef gate;
  std::vector<int> wires;
  friend bool operator==(const GateOp& a, const GateOp& b) {
    return a.gate->name == b.gate->name && a.wires == b.wires;
  }
};

struct MeasureOp {
  int wire;
  int slot;
  friend bool operator==(const MeasureOp&, const MeasureOp&) = default;
};

// Applies `op` when classical slot `slot` holds `value`.
struct CondGateOp {
  int slot;
  int value;
  GateOp op;
  friend bool operator==(const CondGateOp&, const CondGateOp&) = default;
};

// Loads a resource state onto a wire that is in |0>. Tallied as consumed.
struct PrepOp {
  ResourceState state;
  int wire;
  friend bool operator==(const PrepOp&, const PrepOp&) = default;
};

// slot[dst] = table[3 * slot[a] + slot[b]]
struct TableOp {
  int dst;
  int a;
  int b;
  std::array<int, 9> table;
  friend bool operator==(const TableOp&, const TableOp&) = default;
};

struct RusData;

// Repeat body until slot == value; after each pass apply the corrections keyed by the observed value.
struct RusOp {
  std::shared_ptr<const RusData> data;
  friend bool operator==(const RusOp& a, const RusOp& b);
};

struct Instruction {
  std::variant<GateOp, MeasureOp, CondGateOp, RusOp, PrepOp, TableOp> op;
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Correction {
  int value;
  Instruction op;
  friend bool operator==(const Correction&, const Correction&) = default;
};

struct RusData {
  std::vector<Instruction> body;
  int slot = 0;
  int value = 0;
  std::vector<Correction> corrections;
  int max_iterations = 1000;
  Ratio expected_trials{1, 1};
  friend bool operator==(const RusData&, const RusData&) = default;
};

inline bool operator==(const RusOp& a, const RusOp& b) { return *a.data == *b.data; }

class Circuit {
 public:
  explicit Circuit(int width);

  int width() const { return width_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::set<int>& ancillas() const { return ancillas_; }
  int slot_count() const;
  bool is_unitary() const;  // only gate instructions

  Circuit& gate(std::string_view name, std::vector<int> wires);
  Circuit& gate(GateRef g, std::vector<int> wires);
  Circuit& measure(int wire, int slot);
  Circuit& cc(int slot, int value, std::string_view name, std::vector<int> wires);
  Circuit& prep(ResourceState s, int wire);
  Circuit& table(int dst, int a, int b, std::array<int, 9> t);
  Circuit& rus(RusData data);
  Circuit& add(Instruction ins);
  Circuit& declare_ancilla(int wire);

  // Append `sub` with its wire i placed on wire_map[i]; sub's classical slots are shifted by slot_offset.
  Circuit& append(const Circuit& sub, const std::vector<int>& wire_map, int slot_offset = 0);
  Circuit& append(const Circuit& sub);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_wires(const std::vector<int>& wires, int arity) const;
  void check_instruction(const Instruction& ins) const;

  int width_;
  std::vector<Instruction> instructions_;
  std::set<int> ancillas_;
};

Circuit compose(const Circuit& a, const Circuit& b);
Circuit inverse(const Circuit& a);

struct ResourceCount {
  int p9_count = 0;
  int p9_depth = 0;
  int r_count = 0;
  int clifford_count = 0;
  int measurement_count = 0;
  int width = 0;
  int ancilla_count = 0;
  std::map<std::string, int> costed_primitive_tally;
  // extensions
  int uncosted_non_clifford_count = 0;
  int non_clifford_depth = 0;
  int rus_blocks = 0;
  double expected_p9_count = 0.0;  // RUS bodies weighted by expected trial counts
  double expected_r_count = 0.0;
  std::map<std::string, double> expected_resource_states;
  std::map<std::string, int> resource_states;
};

ResourceCount count_resources(const Circuit& c);

}  // namespace qtk
