#pragma once

#include <functional>

#include "ctxsim/common.hpp"
#include "ctxsim/rng.hpp"

namespace ctxsim {

MatC kron(const MatC& a, const MatC& b);

inline MatC dagger(const MatC& m) { return m.adjoint(); }

inline MatC hermitize(const MatC& m) { return 0.5 * (m + m.adjoint()); }

bool is_unitary(const MatC& m, double tol);

// Haar-ish random unitary from QR of a Gaussian matrix, deterministic in rng.
MatC random_unitary(int n, Rng& rng);

// Phase factor z (|z| = 1) aligning `got` to `want` on the largest-magnitude
// entry of `want`; returns 1 if that entry of `got` is numerically zero.
Cx phase_align(const MatC& got, const MatC& want);

// min over global phase of ||z * got - want||_F
double phase_distance(const MatC& got, const MatC& want);

// 0.5 * ||a - b||_1 for Hermitian a, b
double trace_distance(const MatC& a, const MatC& b);

struct LanczosResult {
  double value = 0.0;
  VecC vector;
  int matvecs = 0;
  double residual = 0.0;
  bool converged = false;
};

// Lowest eigenpair of a Hermitian operator given through its matvec.
// Full reorthogonalization; restarts from the current Ritz vector.
LanczosResult lanczos_lowest(const std::function<VecC(const VecC&)>& matvec,
                             int dim, const VecC& guess, double tol,
                             int max_matvecs);

}  // namespace ctxsim
