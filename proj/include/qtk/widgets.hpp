#pragma once

#include <optional>
#include <vector>

#include "qtk/circuit.hpp"

namespace qtk {

// Wire 0 carries the data, wire 1 the resource state.
Circuit p9_injection_widget();
Circuit r2_injection_rus();

// The printed three-P9 network; it realizes a C_0-type diagonal conjugated by INC on the target.
Circuit c1z_network();
// The three-qutrit depth-one network; ancilla on wire 2.
Circuit c1z_depth_one_network();

Circuit c1z_from_p9();    // (control, target)
Circuit c1z_depth_one();  // (control, target, ancilla)

// C_level(INC) on (control, target), or (control, target, ancilla) when depth_one.
Circuit c_binary_inc(int level, bool depth_one = false);

// (control, target[, scratch])
Circuit cnot_emulated(bool depth_one = false);

enum class ToffoliMode { none, one_clean, one_clean_stacked };
// (control, control, target[, ancilla[, scratch]])
Circuit toffoli_emulated(ToffoliMode mode);

enum class CccnotMode { one_clean, two_clean, two_clean_stacked };
// (control x3, target, ancillas...[, scratch])
Circuit cccnot_emulated(CccnotMode mode);

// Adds binary control to an emulation of C(U) whose control sits on `control_wire`.
// New wires: width = new control, width + 1 = clean ancilla.
Circuit add_binary_control(const Circuit& c, int control_wire, std::optional<int> scratch = std::nullopt);

enum class HornerKind { lambda_sum, lambda_lambda_sum, cf_lambda_sum, cf_sum };
// lambda_sum (i,j,k); lambda_lambda_sum (i,j,k,l,anc); cf_lambda_sum (sel,j,k,l,anc); cf_sum (sel,j,k)
Circuit horner_gates(HornerKind kind, int f = 1);

enum class PrepTarget { plus_w3, plus_w3sq, eta, psi };
// plus states: (output, flag). eta: (plus_w3, plus_w3sq, flag, flag). psi: output on wire 1.
Circuit appendix_a_state_prep(PrepTarget target);

// Emitters used by the arithmetic layer. `scratch` selects the depth-one C(INC) realization.
namespace emit {

inline const char* kTau01 = "TAU[0,1]";
inline const char* kTau02 = "TAU[0,2]";
inline const char* kTau12 = "TAU[1,2]";

void c_inc(Circuit& c, int level, int ctrl, int tgt, std::optional<int> scratch = {}, bool dagger = false);
void cnot(Circuit& c, int ctrl, int tgt, std::optional<int> scratch = {});
void toffoli(Circuit& c, int c1, int c2, int tgt, int anc, std::optional<int> scratch = {});
void toffoli_ancilla_free(Circuit& c, int c1, int c2, int tgt);
void cccnot(Circuit& c, int c1, int c2, int c3, int tgt, int anc1, int anc2, std::optional<int> scratch = {});
// NOT on tgt controlled by up to three binary wires; ancillas supply the workspace.
void multi_controlled_not(Circuit& c, const std::vector<int>& ctrls, int tgt, const std::vector<int>& ancillas,
                          std::optional<int> scratch = {});
void tau_02_20(Circuit& c, int w0, int w1);
void tau_20_21(Circuit& c, int w0, int w1);
void tau_01_20(Circuit& c, int w0, int w1);

}  // namespace emit

}  // namespace qtk
