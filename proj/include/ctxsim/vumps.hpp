#pragma once

#include <optional>

#include "ctxsim/hamiltonian.hpp"
#include "ctxsim/umps.hpp"

namespace ctxsim {

// Mixed canonical gauge: A_L isometric from the left, A_R from the right,
// A_L C = C A_R up to the solver tolerance.
struct Canonical {
  std::array<MatC, 3> AL, AR;
  MatC C;
  int bond = 0;
};

Canonical mixed_canonical(const UmpsState& s);

// uMPS equivalent to the canonical triple (A_L gauge; l = I, r = C C^dag).
UmpsState to_umps(const Canonical& c);

// Left/right MPO environment blocks for a canonical state, with the
// extensive part of the boundary blocks projected out.
struct MpoEnv {
  std::vector<MatC> L, R;
  double e_left = 0.0;   // per-site energy read from the left boundary
  double e_right = 0.0;  // same quantity from the right; equal up to tolerance
};

MpoEnv mpo_environments(const Mpo& mpo, const Canonical& c);

// Per-site MPO expectation value on an arbitrary uMPS (canonicalized here).
double mpo_energy(const Mpo& mpo, const UmpsState& s);

// Energy density and its Wirtinger gradient d e / d conj(A^s), evaluated at
// the normalized state (the input is normalized internally; the energy is
// scale invariant, so the gradient is tangent to the normalization manifold).
struct EnergyGradient {
  double energy = 0.0;
  std::array<MatC, 3> grad;
};
EnergyGradient mpo_energy_gradient(const Mpo& mpo, const UmpsState& s);

struct VumpsOptions {
  double tol = 1e-10;        // gradient norm target
  int max_sweeps = 400;
  double eig_tol = 1e-13;    // local eigenproblem tolerance
  int max_matvecs = 10000;
  // Schmidt floor on C, relative to its largest singular value. Keeps the
  // state injective so crushed bond directions can re-enter the optimization.
  double schmidt_floor = 1e-7;
  // Quasi-Newton descent on the raw tensors before the fixed-point sweeps.
  // The sweeps alone can stall on rank-deficient product states; the
  // line-searched descent is monotone and walks past them.
  int descent_iters = 2000;
  double descent_gtol = 1e-9;
  // Abort the sweep phase when the energy rises this far above the best
  // iterate; the best iterate is returned either way.
  double energy_guard = 1e-7;
};

struct GroundState {
  UmpsState state;
  Canonical canonical;
  double energy = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  // Two independent contraction routes agree on the energy. States with a
  // defective transfer matrix have no trustworthy reading; the solver retries
  // from fresh random tensors before returning an untrusted result.
  bool trusted = false;
  int sweeps = 0;
};

// Variational fixed-point search. Starts from `init` when given (any gauge),
// otherwise from a random tensor drawn from `rng`. Returns the best-energy
// iterate with converged=false when the sweep budget runs out.
GroundState ground_state(const Mpo& mpo, int bond,
                         const std::optional<UmpsState>& init, Rng& rng,
                         const VumpsOptions& opt = {});

}  // namespace ctxsim
