#include "ctxsim/hamiltonian.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "ctxsim/oracle.hpp"
#include "ctxsim/rng.hpp"
#include "ctxsim/umps.hpp"
#include "ctxsim/vumps.hpp"

using namespace ctxsim;

namespace {

Eigen::Vector3d random_w(Rng& rng, double scale = 1.5) {
  return Eigen::Vector3d(rng.uniform(-scale, scale), rng.uniform(-scale, scale),
                         rng.uniform(-scale, scale));
}

}  // namespace

TEST(WitnessTable, FrozenCatalogue) {
  const auto& tab = witness_table();
  ASSERT_EQ(tab.size(), 5u);
  const double rows[5][12] = {
      {-6, -6, 0, 2, 3, 3, -2, 3, -1, -1, 1, -6.32747},
      {-6, -4, 2, 2, 2, 2, -4, 1, -1, -1, 3, -6.33712},
      {-3, -3, 1, 1, 1, 1, -1, 1, 0, -1, 1, -3.20711},
      {-4, -2, -2, -2, 1, -1, -2, 1, 0, 2, 1, -4.14623},
      {-8, -11, 1, 5, 2, 2, -1, 4, -1, -2, 1, -8.12123},
  };
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(tab[i].id, i + 1);
    EXPECT_EQ(tab[i].classical_bound, rows[i][0]);
    for (int j = 0; j < 10; ++j) EXPECT_EQ(tab[i].couplings[j], rows[i][1 + j]);
    EXPECT_EQ(tab[i].quantum_limit, rows[i][11]);
    EXPECT_LT(tab[i].classical_bound, 0.0);
    EXPECT_LT(tab[i].quantum_limit, tab[i].classical_bound);
  }
  EXPECT_EQ(&witness_by_id(3), &tab[2]);
  EXPECT_THROW(witness_by_id(6), InputError);
}

TEST(SkewBasis, CanonicalGenerators) {
  auto s = skew_basis();
  Mat3R s1 = Mat3R::Zero();
  s1(0, 1) = 1;
  s1(1, 0) = -1;
  EXPECT_EQ((s[0] - s1).norm(), 0.0);
  for (int k = 0; k < 3; ++k) EXPECT_EQ((s[k] + s[k].transpose()).norm(), 0.0);
  // Linear independence: stacked vectorizations have rank 3.
  MatR stacked(3, 9);
  for (int k = 0; k < 3; ++k)
    stacked.row(k) = Eigen::Map<const VecR>(s[k].data(), 9).transpose();
  Eigen::FullPivLU<MatR> lu(stacked);
  EXPECT_EQ(lu.rank(), 3);
}

TEST(SkewRotation, MatchesSeriesExponential) {
  Rng rng(7);
  auto s = skew_basis();
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::Vector3d w = random_w(rng, trial < 20 ? 2.0 : 5e-5);
    Mat3R k = w(0) * s[0] + w(1) * s[1] + w(2) * s[2];
    MatC ref = oracle::series_expm_i(Cx(0.0, -1.0) * k.cast<Cx>());
    Mat3R got = skew_rotation(w);
    EXPECT_LT((got.cast<Cx>() - ref).norm(), 1e-13);
    EXPECT_LT((got * got.transpose() - Mat3R::Identity()).norm(), 1e-13);
  }
}

TEST(Observable, IdentityRotationReturnsSignature) {
  Mat3R sig = observable(Eigen::Vector3d::Zero(), Eigen::Vector3d(1, 1, -1));
  EXPECT_EQ((sig - Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()).norm(), 0.0);
}

TEST(Observable, InvolutionWithSignatureSpectrum) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector3d lambda = trial % 2 ? Eigen::Vector3d(1, 1, -1) : Eigen::Vector3d(1, -1, -1);
    Mat3R sig = observable(random_w(rng), lambda);
    EXPECT_LT((sig * sig - Mat3R::Identity()).norm(), 1e-12);
    EXPECT_LT((sig - sig.transpose()).norm(), 1e-13);
    Eigen::SelfAdjointEigenSolver<Mat3R> es(sig);
    VecR sorted = lambda;
    std::sort(sorted.data(), sorted.data() + 3);
    EXPECT_LT((es.eigenvalues() - sorted).norm(), 1e-12);
    EXPECT_NEAR(sig.determinant(), lambda.prod(), 1e-12);
  }
}

TEST(Observable, RejectsDegenerateSignatures) {
  EXPECT_THROW(observable(Eigen::Vector3d::Zero(), Eigen::Vector3d(1, 1, 1)), InputError);
  EXPECT_THROW(observable(Eigen::Vector3d::Zero(), Eigen::Vector3d(1, 0.5, -1)), InputError);
}

TEST(LocalTerm, ZeroCouplingsGiveZero) {
  Witness w;
  w.id = 0;
  w.couplings.fill(0.0);
  LocalTerm t = local_term(w, ObservableParams{});
  EXPECT_EQ(t.h3.norm(), 0.0);
}

TEST(LocalTerm, HermitianAndRealSymmetric) {
  Rng rng(3);
  for (int id = 1; id <= 5; ++id) {
    ObservableParams p;
    p.wx = random_w(rng);
    p.wy = random_w(rng);
    LocalTerm t = local_term(witness_by_id(id), p);
    EXPECT_LT((t.h3 - t.h3.adjoint()).norm(), 1e-12 * t.h3.norm());
    EXPECT_LT(t.h3.imag().norm(), 1e-14 * t.h3.norm());
    EXPECT_LT((t.h3 - t.h3.transpose()).norm(), 1e-12 * t.h3.norm());
  }
}

TEST(LocalTerm, LinearInCouplings) {
  Rng rng(5);
  ObservableParams p;
  p.wx = random_w(rng);
  p.wy = random_w(rng);
  Witness a = witness_by_id(1), b = witness_by_id(2), ab = a;
  for (int j = 0; j < 10; ++j) ab.couplings[j] += b.couplings[j];
  MatC sum = local_term(a, p).h3 + local_term(b, p).h3;
  EXPECT_LT((local_term(ab, p).h3 - sum).norm(), 1e-12 * sum.norm());
}

TEST(LocalTerm, ProductStateScalarArithmetic) {
  // Diagonal observables, |0> chain: every factor reads +1 at level 0, so the
  // energy is the plain sum of the ten couplings.
  for (int id = 1; id <= 5; ++id) {
    const Witness& w = witness_by_id(id);
    LocalTerm t = local_term(w, ObservableParams{});
    double want = 0.0;
    for (double j : w.couplings) want += j;
    EXPECT_NEAR(t.h3(0, 0).real(), want, 1e-12);
    UmpsState prod;
    prod.bond = 1;
    prod.A = {MatC::Ones(1, 1), MatC::Zero(1, 1), MatC::Zero(1, 1)};
    EXPECT_NEAR(energy_density(prod, t), want, 1e-12);
  }
}

TEST(Mpo, SingleOnsiteTermHasBondDimensionTwo) {
  Witness w;
  w.couplings.fill(0.0);
  w.couplings[0] = -1.5;
  Mpo mpo = to_mpo(local_term(w, ObservableParams{}));
  EXPECT_EQ(mpo.chi, 2);
}

TEST(Mpo, ZeroHamiltonianExpectationVanishes) {
  Witness w;
  w.couplings.fill(0.0);
  Mpo mpo = to_mpo(local_term(w, ObservableParams{}));
  Rng rng(17);
  UmpsState s = random_umps(4, rng);
  EXPECT_NEAR(mpo_energy(mpo, s), 0.0, 1e-10);
}

TEST(Mpo, RejectsInconsistentLists) {
  LocalTerm t = local_term(witness_by_id(1), ObservableParams{});
  t.h3(0, 0) += 0.5;
  EXPECT_THROW(to_mpo(t), InputError);
}

TEST(Mpo, ExpectationMatchesRho3Contraction) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int bond = 2 + trial % 5;
    ObservableParams p;
    p.wx = random_w(rng);
    p.wy = random_w(rng);
    if (trial % 2) p.lambda_y = Eigen::Vector3d(1, -1, -1);
    const Witness& w = witness_by_id(1 + trial % 5);
    LocalTerm t = local_term(w, p);
    UmpsState s = random_umps(bond, rng);
    FixedPoints fp = fixed_points(s);
    double via_rho = (oracle::dense_rho3(s.A, fp.l, fp.r) * t.h3).trace().real();
    EXPECT_NEAR(mpo_energy(to_mpo(t), s), via_rho, 1e-10 * std::max(1.0, std::abs(via_rho)));
  }
}
