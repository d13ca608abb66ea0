#include "ctxsim/purify.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "ctxsim/linalg.hpp"
#include "ctxsim/oracle.hpp"

using namespace ctxsim;

namespace {

// Partial trace of |psi><psi| over sites {0,1,5,6} of a 3^7 vector by
// explicit index loops, independent of the tensor plumbing under test.
MatC middle_three_rdm(const VecC& psi) {
  MatC rho = MatC::Zero(27, 27);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int m = 0; m < 27; ++m)
        for (int t = 0; t < 27; ++t)
          rho(m, t) += psi(a * 243 + m * 9 + b) * std::conj(psi(a * 243 + t * 9 + b));
  return rho;
}

MatC site_product(const SiteTensor& a, const SiteTensor& b) {
  // Contracts the shared bond, grouping both physical legs into rows.
  MatC out(9LL * a.chi_l, b.chi_r);
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 3; ++s2) {
      MatC block = a.m[s1] * b.m[s2];
      for (int r = 0; r < a.chi_l; ++r)
        out.row((s1 * 3 + s2) * a.chi_l + r) = block.row(r);
    }
  return out;
}

}  // namespace

TEST(PsdFactor, IdentityAndDiagonal) {
  MatC eye = MatC::Identity(4, 4);
  EXPECT_LT((psd_factor(eye, true).adjoint() * psd_factor(eye, true) - eye).norm(), 1e-12);
  MatC d = Eigen::Vector3d(4, 1, 0).asDiagonal().toDenseMatrix().cast<Cx>();
  MatC lf = psd_factor(d, true);
  MatC rf = psd_factor(d, false);
  EXPECT_LT((lf.adjoint() * lf - d).norm(), 1e-10);
  EXPECT_LT((rf * rf.adjoint() - d).norm(), 1e-10);
}

TEST(PsdFactor, RankDeficientReconstruction) {
  Rng rng(1);
  MatC g(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = rng.gaussian_cx();
  MatC m = g * g.adjoint();  // rank 3 PSD
  EXPECT_LT((psd_factor(m, true).adjoint() * psd_factor(m, true) - m).norm(), 1e-10);
  EXPECT_LT((psd_factor(m, false) * psd_factor(m, false).adjoint() - m).norm(), 1e-10);
}

TEST(PsdFactor, RejectsIndefiniteInput) {
  MatC m = MatC::Identity(3, 3);
  m(2, 2) = -1e-4;
  EXPECT_THROW(psd_factor(m, true), InputError);
  MatC ns = MatC::Zero(2, 2);
  ns(0, 1) = 1.0;
  EXPECT_THROW(psd_factor(ns, true), InputError);
}

TEST(SplitBoundary, ReconstructsPaddedFactor) {
  Rng rng(2);
  for (int d : {3, 5, 9}) {
    MatC lfac(d, d), rfac(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        lfac(i, j) = rng.gaussian_cx();
        rfac(i, j) = rng.gaussian_cx();
      }
    auto [l2, l1] = split_boundary(lfac, true);
    MatC rebuilt = site_product(l2, l1);
    ASSERT_EQ(rebuilt.rows(), 9);
    MatC padded = MatC::Zero(9, d);
    padded.topRows(d) = lfac;
    EXPECT_LT((rebuilt - padded).norm(), 1e-12 * std::max(1.0, padded.norm()));

    auto [r1, r2] = split_boundary(rfac, false);
    // Right side: physical legs group columns of the padded factor.
    MatC rrebuilt(d, 9);
    for (int b1 = 0; b1 < 3; ++b1)
      for (int b2 = 0; b2 < 3; ++b2)
        rrebuilt.col(b1 * 3 + b2) = (r1.m[b1] * r2.m[b2]).col(0);
    MatC rpadded = MatC::Zero(d, 9);
    rpadded.leftCols(d) = rfac;
    EXPECT_LT((rrebuilt - rpadded).norm(), 1e-12 * std::max(1.0, rpadded.norm()));
  }
}

TEST(Purify, ProductStateGivesAllZeros) {
  UmpsState s;
  s.bond = 1;
  s.A = {MatC::Ones(1, 1), MatC::Zero(1, 1), MatC::Zero(1, 1)};
  VecC psi = purified_to_dense(purify(s));
  VecC want = VecC::Zero(2187);
  want(0) = 1.0;
  EXPECT_LT((psi - want).norm(), 1e-12);
}

TEST(Purify, TraceDistanceToRho3AcrossBonds) {
  Rng rng(3);
  for (int bond = 1; bond <= 9; ++bond) {
    UmpsState s = random_umps(bond, rng);
    FixedPoints fp = fixed_points(s);
    PurifiedMps p = purify(s, fp);
    VecC psi = purified_to_dense(p);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    MatC reduced = middle_three_rdm(psi);
    MatC rho = rho3(s, fp);
    EXPECT_LT(trace_distance(reduced, rho), 1e-10);
    // Ancilla tracing preserves the spectrum.
    Eigen::SelfAdjointEigenSolver<MatC> ea(reduced), eb(rho);
    EXPECT_LT((ea.eigenvalues() - eb.eigenvalues()).norm(), 1e-10);
  }
}

TEST(Purify, MiddleTensorsAreTheSiteTensor) {
  Rng rng(4);
  UmpsState s = random_umps(6, rng);
  PurifiedMps p = purify(s);
  ASSERT_EQ(p.sites.size(), 7u);
  for (int site : {2, 3, 4})
    for (int k = 0; k < 3; ++k) EXPECT_EQ((p.sites[site].m[k] - s.A[k]).norm(), 0.0);
}

TEST(Purify, RejectsBondAboveNine) {
  Rng rng(5);
  UmpsState s = random_umps(10, rng);
  EXPECT_THROW(purify(s), InputError);
}
