#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ctxsim/common.hpp"

namespace ctxsim {

// One row of the witness catalogue: classical bound, the ten couplings in the
// order (J_x, J_y, J^AB_xx, J^AB_xy, J^AB_yx, J^AB_yy, J^AC_xx, J^AC_xy,
// J^AC_yx, J^AC_yy), and the attainable quantum limit.
struct Witness {
  int id = 0;
  double classical_bound = 0.0;
  std::array<double, 10> couplings{};
  double quantum_limit = 0.0;
};

const std::vector<Witness>& witness_table();
const Witness& witness_by_id(int id);

// Basis of 3x3 real antisymmetric generators: E12-E21, E13-E31, E23-E32.
std::array<Mat3R, 3> skew_basis();

// exp(sum_k w_k S_k), closed form for a 3x3 skew generator.
Mat3R skew_rotation(const Eigen::Vector3d& w);

// sigma(w) = R Lambda R^T with R = skew_rotation(w); an orthogonal involution
// with the spectrum of Lambda. Lambda entries must be +-1 and mixed-sign.
Mat3R observable(const Eigen::Vector3d& w, const Eigen::Vector3d& lambda);

// Six-parameter observable pair. Signature default: diag(1, 1, -1) for both.
struct ObservableParams {
  Eigen::Vector3d wx = Eigen::Vector3d::Zero();
  Eigen::Vector3d wy = Eigen::Vector3d::Zero();
  Eigen::Vector3d lambda_x = Eigen::Vector3d(1, 1, -1);
  Eigen::Vector3d lambda_y = Eigen::Vector3d(1, 1, -1);

  Mat3R sigma_x() const { return observable(wx, lambda_x); }
  Mat3R sigma_y() const { return observable(wy, lambda_y); }
};

// Three-site local term kept together with its range decomposition
// (single-site ops, distance-1 pairs, distance-2 pairs; coupling folded into
// the first factor of each pair).
struct LocalTerm {
  MatC h3;  // 27x27, Hermitian
  std::vector<Mat3R> onsite;
  std::vector<std::pair<Mat3R, Mat3R>> nn;
  std::vector<std::pair<Mat3R, Mat3R>> nnn;
};

// h3 = J_x sx(x)I(x)I + J_y sy(x)I(x)I + sum_ab J^AB_ab sa(x)sb(x)I
//    + sum_ab J^AC_ab sa(x)I(x)sb, with (a,b) running over (x,y) row-major.
LocalTerm local_term(const Witness& w, const ObservableParams& p);

// Assemble a LocalTerm from explicit operator lists (h3 recombined here).
LocalTerm local_term_from_lists(std::vector<Mat3R> onsite,
                                std::vector<std::pair<Mat3R, Mat3R>> nn,
                                std::vector<std::pair<Mat3R, Mat3R>> nnn);

// Finite-state-automaton MPO for a translation-invariant sum of the local
// term. w[a][b] is the 3x3 operator on the (left=a, right=b) bond transition;
// state 0 is the left vacuum, state chi-1 the right vacuum.
struct Mpo {
  int chi = 0;
  std::vector<std::vector<Mat3C>> w;
};

// Builds the MPO from the range decomposition, sharing carry states between
// terms with equal first factors. Verifies that the lists recombine to h3 and
// throws InputError otherwise.
Mpo to_mpo(const LocalTerm& term);

}  // namespace ctxsim
