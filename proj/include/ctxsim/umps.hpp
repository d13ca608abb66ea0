#pragma once

#include <array>

#include "ctxsim/common.hpp"
#include "ctxsim/hamiltonian.hpp"
#include "ctxsim/rng.hpp"

namespace ctxsim {

// Uniform MPS with one site tensor A[s] (D x D per physical level s).
// Metadata travels with the state so solver output files are self-describing.
struct UmpsState {
  int bond = 0;
  std::array<MatC, 3> A;
  bool degenerate = false;  // leading transfer eigenvalue within 1e-10 of the next
  int witness_id = 0;
  Eigen::Matrix<double, 6, 1> w_params = Eigen::Matrix<double, 6, 1>::Zero();
  double energy = 0.0;
};

// Hermitian PSD fixed points of the transfer matrix, scaled so Tr(l r) = 1.
// pairing is |Tr(l r)| against unit-norm factors; near zero it flags a
// reducible state whose dominant left and right blocks differ, where the
// rescaled pair and anything contracted through it is meaningless.
// lambda_pair is the transfer eigenvalue the pair actually belongs to,
// relative to the leading one; away from 1 it flags a pair caught on a
// decaying block or on a peripheral eigenvalue whose hermitized vector is no
// fixed point.
struct FixedPoints {
  MatC l, r;
  double pairing = 1.0;
  double lambda_pair = 1.0;
};

UmpsState random_umps(int bond, Rng& rng);

// Transfer matrix T = sum_s conj(A^s) (x) A^s as a dense D^2 x D^2 matrix.
MatC transfer_matrix(const UmpsState& s);

// Rescales A by 1/sqrt(|lambda_1|); sets the degeneracy flag from the gap.
void normalize(UmpsState& s);

// Leading left/right fixed points. Dense eigensolver for D <= 8, power
// iteration above; ConvergenceError carries the residual if iteration stalls.
FixedPoints fixed_points(const UmpsState& s);

// Dominant fixed point of X -> sum_s A^s X (A^s)^dag (left_action = false)
// or X -> sum_s (A^s)^dag X A^s (true), as a PSD matrix with unit trace.
MatC dominant_density(const std::array<MatC, 3>& A, bool left_action);

// rho3[(s1 s2 s3),(t1 t2 t3)] = Tr[l A^{s1} A^{s2} A^{s3} r (A^{t1} A^{t2} A^{t3})^dag]
MatC rho3(const UmpsState& s, const FixedPoints& fp);

// Tr(rho3 h3); throws ConvergenceError if the imaginary part exceeds 1e-10.
double energy_density(const UmpsState& s, const FixedPoints& fp,
                      const LocalTerm& term);
double energy_density(const UmpsState& s, const LocalTerm& term);

}  // namespace ctxsim
