#pragma once

#include "ctxsim/program.hpp"

namespace ctxsim {

// Cosine-sine decomposition of a unitary u (n x n) with top-left block size
// p <= n - p: u = diag(u1, u2) * cs * diag(v1, v2)^dag, where cs rotates row
// pair (i, p + i) by theta[i] and leaves the remaining rows fixed.
struct CsdResult {
  MatC u1, u2, v1, v2;
  VecR theta;
};

CsdResult csd(const MatC& u, int p);

// One step of the quantum Shannon factor list for a 9x9 unitary on two
// qutrits: either a single-qutrit gate on one wire, or a two-level rotation
// on one wire applied when the other wire is in a given level.
struct QsdFactor {
  enum Kind { Single, CtrlTwoLevel } kind = Single;
  int wire = 0;        // target qutrit
  Mat3C u;             // Single
  int li = 0, lj = 1;  // CtrlTwoLevel level pair
  Eigen::Matrix2cd block;
  int ctrl_wire = 0, ctrl_level = 0;
};

// Factors u into the application-ordered product of QsdFactors. Identities
// collapse to an empty list, tensor products to two Single factors.
std::vector<QsdFactor> qsd_two_qutrit(const MatC& u);

// Dense 9x9 matrix of one factor (wire 0 major).
MatC qsd_factor_matrix(const QsdFactor& f);

// Four-qubit program for one encoded two-level qutrit unitary acting on the
// wire pair (q0, q1). Non-two-level input is rejected.
GateProgram synthesize_single(const Mat3C& v, int q0, int q1);

struct CompileResult {
  GateProgram program;
  int primitive_count = 0;
  int multi_qubit_count = 0;
  double residual = 0.0;  // phase-aligned distance to the encoded target
};

// Full pipeline: QSD factor list, per-factor two-level splits, encoded
// emission, then verification of the assembled 16x16 program against the
// encoded target. Verification failure raises CompileError.
CompileResult compile_two_qutrit(const MatC& u);

}  // namespace ctxsim
