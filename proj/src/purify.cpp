#include "ctxsim/purify.hpp"

#include <Eigen/Dense>

#include "ctxsim/linalg.hpp"

namespace ctxsim {

MatC psd_factor(const MatC& m, bool left) {
  if (m.rows() != m.cols()) throw InputError("psd_factor: matrix not square");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale)
    throw InputError("psd_factor: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatC> es(hermitize(m));
  VecR ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
    throw InputError("psd_factor: matrix not positive semidefinite");
  VecR root = ev.cwiseMax(0.0).cwiseSqrt();
  if (left) return root.asDiagonal() * es.eigenvectors().adjoint();
  return es.eigenvectors() * root.asDiagonal();
}

std::pair<SiteTensor, SiteTensor> split_boundary(const MatC& factor, bool left) {
  const int d = static_cast<int>(left ? factor.rows() : factor.cols());
  const int chi = static_cast<int>(left ? factor.cols() : factor.rows());
  if (d > kMaxBond) throw InputError("split_boundary: physical dimension above 9");
  SiteTensor outer, inner;
  if (left) {
    MatC padded = MatC::Zero(kMaxBond, chi);
    padded.topRows(d) = factor;
    // Rows regrouped as (a1) x (a2, beta), a2 major within columns.
    MatC m1(3, 3 * chi);
    for (int a1 = 0; a1 < 3; ++a1)
      for (int a2 = 0; a2 < 3; ++a2)
        m1.block(a1, a2 * chi, 1, chi) = padded.row(3 * a1 + a2);
    Eigen::JacobiSVD<MatC> svd(m1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    MatC u = svd.matrixU();
    MatC w = svd.singularValues().asDiagonal() * svd.matrixV().adjoint();
    outer.chi_l = 1;
    outer.chi_r = 3;
    inner.chi_l = 3;
    inner.chi_r = chi;
    for (int s = 0; s < 3; ++s) {
      outer.m[s] = u.row(s);
      inner.m[s] = w.block(0, s * chi, 3, chi);
    }
  } else {
    MatC padded = MatC::Zero(chi, kMaxBond);
    padded.leftCols(d) = factor;
    // Columns regrouped as (beta, b1) x (b2), beta major within rows.
    MatC m1(3 * chi, 3);
    for (int b1 = 0; b1 < 3; ++b1)
      for (int b2 = 0; b2 < 3; ++b2)
        for (int beta = 0; beta < chi; ++beta)
          m1(beta * 3 + b1, b2) = padded(beta, 3 * b1 + b2);
    Eigen::JacobiSVD<MatC> svd(m1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    MatC us = svd.matrixU() * svd.singularValues().asDiagonal();
    MatC vd = svd.matrixV().adjoint();
    outer.chi_l = 3;
    outer.chi_r = 1;
    inner.chi_l = chi;
    inner.chi_r = 3;
    for (int b1 = 0; b1 < 3; ++b1) {
      inner.m[b1] = MatC(chi, 3);
      for (int beta = 0; beta < chi; ++beta)
        inner.m[b1].row(beta) = us.row(beta * 3 + b1);
    }
    for (int b2 = 0; b2 < 3; ++b2) outer.m[b2] = vd.col(b2);
  }
  return left ? std::make_pair(outer, inner) : std::make_pair(inner, outer);
}

PurifiedMps purify(const UmpsState& s, const FixedPoints& fp) {
  if (s.bond > kMaxBond)
    throw InputError("purify: bond dimension above 9 cannot purify into two qutrits");
  MatC lfac = psd_factor(fp.l, true);
  MatC rfac = psd_factor(fp.r, false);
  auto [l2, l1] = split_boundary(lfac, true);
  auto [r1, r2] = split_boundary(rfac, false);
  PurifiedMps p;
  p.bond = s.bond;
  p.witness_id = s.witness_id;
  p.w_params = s.w_params;
  p.energy = s.energy;
  SiteTensor mid;
  mid.chi_l = s.bond;
  mid.chi_r = s.bond;
  mid.m = s.A;
  p.sites = {l2, l1, mid, mid, mid, r1, r2};
  return p;
}

PurifiedMps purify(const UmpsState& s) { return purify(s, fixed_points(s)); }

VecC purified_to_dense(const PurifiedMps& p) {
  MatC acc = MatC::Ones(1, 1);
  for (const SiteTensor& t : p.sites) {
    MatC next(acc.rows() * 3, t.chi_r);
    for (int s = 0; s < 3; ++s) {
      MatC block = acc * t.m[s];
      for (Eigen::Index r = 0; r < acc.rows(); ++r)
        next.row(r * 3 + s) = block.row(r);
    }
    acc = std::move(next);
  }
  if (acc.cols() != 1) throw InputError("purified_to_dense: open right boundary");
  return acc.col(0);
}

}  // namespace ctxsim
