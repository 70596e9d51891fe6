#pragma once

#include "qtk/circuit.hpp"
#include "qtk/gate_matrix.hpp"

namespace qtk {

// Fourier transform over Z_{3^n} on n wires (wire 0 least significant):
// |j> -> 3^{-n/2} sum_k e^{2 pi i jk / 3^n} |k>.
// With delta > 0, controlled phases closer than delta/n to the identity are dropped.
Circuit qft3n(int n, double delta = 0.0);

// The same transform over Z_{2^n} on emulated-binary wires; |2> is left alone.
Circuit qft2n(int n, double delta = 0.0);

// Reference matrix [zeta^{jk}] / sqrt(d^n), indexed by the register value.
Matrix dft_matrix(int radix, int n);

// Block of an n-qutrit operator on the basis states with every digit in {0,1}, indexed by value.
Matrix binary_block(const Matrix& u, int n);

}  // namespace qtk
