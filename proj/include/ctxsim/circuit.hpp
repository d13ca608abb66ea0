#pragma once

#include <vector>

#include "ctxsim/common.hpp"

namespace ctxsim {

struct QubitState {
  int n = kQubits;
  VecC amps;
};

QubitState zero_state(int n_qubits = kQubits);

// Applies a 2^k x 2^k gate to the listed wires; wires[0] is the most
// significant bit of the local index. Qubit q occupies global bit (n-1-q).
void apply_gate(QubitState& st, const MatC& gate, const std::vector<int>& wires);

// Hermitian basis of 9x9 matrices: identity, then the symmetric and
// antisymmetric off-diagonal pairs (row-major i<j), then the eight diagonal
// traceless generators. 81 entries.
const std::vector<MatC>& qutrit_pair_basis_dense();

// Sum of basis elements weighted by an 81-vector.
MatC pair_hamiltonian(const Eigen::Ref<const VecR>& theta);

// exp(i H(theta)) via Hermitian eigendecomposition.
MatC pair_unitary(const Eigen::Ref<const VecR>& theta);

constexpr int kGateParams = 81;

inline int ansatz_param_count(int layers, int n_sites = kSites) {
  return layers * (n_sites - 1) * kGateParams;
}

// Staircase circuit: within each layer, gates act on qutrit pairs (0,1),
// (1,2), ..., ascending; parameter slices are laid out layer-major.
QubitState prepare(const VecR& params, int layers, int n_sites = kSites);

// Negative logarithmic fidelity per site, N = qubit count. Overlap magnitude
// below 1e-300 yields +infinity.
double nlf(const QubitState& candidate, const QubitState& target);

struct NlfGradient {
  double value = 0.0;
  VecR grad;
};

// Value and exact gradient of nlf(prepare(params), target) by reverse
// accumulation through the gate sequence.
NlfGradient nlf_gradient(const VecR& params, int layers, const QubitState& target,
                         int n_sites = kSites);

// Frechet derivative of theta -> exp(i H(theta)) in coordinate direction j,
// evaluated through the doubled upper-triangular exponential. Slow reference
// path kept equal to the spectral formula used inside nlf_gradient.
MatC pair_unitary_derivative_augmented(const Eigen::Ref<const VecR>& theta, int j);

}  // namespace ctxsim
