#pragma once

#include <vector>

#include "ctxsim/umps.hpp"

namespace ctxsim {

// Seven-site qutrit MPS [L2, L1, A, A, A, R1, R2] purifying rho3: the middle
// three tensors are the uMPS tensor unchanged, the outer pairs carry the
// Gram factors of the fixed points. Site tensors store one chiL x chiR block
// per physical level.
struct SiteTensor {
  std::array<MatC, 3> m;
  int chi_l = 0, chi_r = 0;
};

struct PurifiedMps {
  std::vector<SiteTensor> sites;  // size 7
  int bond = 0;                   // uMPS bond dimension it came from
  int witness_id = 0;
  Eigen::Matrix<double, 6, 1> w_params = Eigen::Matrix<double, 6, 1>::Zero();
  double energy = 0.0;
};

// Gram factor of a Hermitian PSD matrix: left gives L with L^dag L = M,
// right gives R with R R^dag = M. Eigenvalues below -1e-8 raise InputError;
// small negative ones are clipped to zero.
MatC psd_factor(const MatC& m, bool left);

// Splits a boundary factor (physical index of dimension D zero-padded to 9)
// into two physical-dimension-3 tensors by one exact SVD. No singular value
// is discarded. For the left factor the physical index runs over rows, for
// the right factor over columns.
std::pair<SiteTensor, SiteTensor> split_boundary(const MatC& factor, bool left);

PurifiedMps purify(const UmpsState& s, const FixedPoints& fp);

// Convenience: computes the fixed points first.
PurifiedMps purify(const UmpsState& s);

// Dense amplitudes (3^7, site 0 most significant digit).
VecC purified_to_dense(const PurifiedMps& p);

}  // namespace ctxsim
