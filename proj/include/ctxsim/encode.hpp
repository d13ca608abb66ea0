#pragma once

#include "ctxsim/purify.hpp"

namespace ctxsim {

// Qubit ordering everywhere: qubit q occupies bit (n_qubits - 1 - q), so
// qubit 0 is the most significant bit of a basis index. Qutrit site i maps to
// the qubit pair (2i, 2i+1).

// 4x3 isometry onto the two-qubit triplet sector: |0> -> |00>,
// |1> -> (|01> + |10>)/sqrt(2), |2> -> |11>.
MatC dicke_map();

// The orthogonal complement (|01> - |10>)/sqrt(2).
VecC dicke_singlet();

// 4x4 unitary acting as E u E^dag on the triplet sector and as identity on
// the singlet. Rejects non-unitary input.
MatC encode_gate(const Mat3C& u);

// 16x16 unitary acting as (E x E) u (E x E)^dag on the doubly symmetric
// sector and as identity on its complement.
MatC encode_two_qutrit(const MatC& u);

// Maps 3^n amplitudes to 2^(2n) amplitudes, one qubit pair per site.
VecC encode_state(const VecC& psi);

VecC encode_state(const PurifiedMps& p);

// Factors u into two-level unitaries u = v01 * v02 * v12, where vij acts on
// levels {i, j} only.
struct TwoLevelFactors {
  Mat3C v01, v02, v12;
};

TwoLevelFactors two_level_decompose(const Mat3C& u);

}  // namespace ctxsim
