#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtk/gate_matrix.hpp"

namespace qtk {

enum class Injectable { none, p9, p9_dagger, r2 };

// A named gate resolved once: matrix, Clifford flag, attributed costs, sparse columns.
//
// Name grammar:
//   atom     INC Z H Q I SUM TSWAP P9 R2 LSUM BH
//            PAULI[a,b]  PH[p/q]  BP[p/q]  TAU[d..,d..]
//   control  C0(g) C1(g) C2(g) L(g)      first wire is the control
//   suffix   dg                         adjoint
struct GateDef {
  std::string name;
  GateMatrix matrix;
  bool clifford = true;
  int p9 = 0;
  int p9_depth = 0;
  int r = 0;
  std::string costed_tag;  // "LSUM" or "C_f(SUM)" for costed primitives
  Injectable injectable = Injectable::none;
  std::vector<std::vector<std::pair<int, cplx>>> columns;

  int arity() const { return matrix.arity(); }
  bool uncosted_non_clifford() const { return !clifford && p9 == 0 && r == 0; }
};

using GateRef = std::shared_ptr<const GateDef>;

GateRef gate(std::string_view name);
std::string adjoint_name(const GateDef& g);

}  // namespace qtk
