#pragma once

#include <vector>

#include "ctxsim/hamiltonian.hpp"

namespace ctxsim {
namespace oracle {

// Brute-force references, implemented independently of the modules they
// check: explicit index loops, series exponentials, own Lanczos recursion.

// rho3 by naive index summation over l * A A A * r * (A A A)^dag.
MatC dense_rho3(const std::array<MatC, 3>& a, const MatC& l, const MatC& r);

// Ground energy per site of the n-site chain of three-site terms h3 (27x27),
// periodic or open boundary. Dense diagonalization up to 3^6, a self-
// contained Lanczos recursion for n in {7, 8}.
double exact_diag(const MatC& h3, int n_sites, bool periodic = true);

// Minimum witness value over deterministic periodic +-1 assignments of both
// observables, periods 1..max_period.
double classical_minimum(const Witness& wit, int max_period = 6);

// Staircase ansatz applied directly to 3^n_sites qutrit amplitudes, using a
// series matrix exponential. Parameter layout matches the qubit circuit.
VecC qutrit_simulate(const VecR& params, int layers, int n_sites = kSites);

// Series exponential of i*H by scaling and squaring (oracle-local expm).
MatC series_expm_i(const MatC& h);

}  // namespace oracle
}  // namespace ctxsim
