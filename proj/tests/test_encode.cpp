#include "ctxsim/encode.hpp"

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "ctxsim/linalg.hpp"
#include "ctxsim/oracle.hpp"

using namespace ctxsim;

namespace {

// Dense reference embedding built from scratch: kron the per-site isometry
// columns digit by digit.
VecC kron_embed(const VecC& psi) {
  MatC e = dicke_map();
  int n = 0;
  for (Eigen::Index d = psi.size(); d > 1; d /= 3) ++n;
  VecC out = VecC::Zero(Eigen::Index(1) << (2 * n));
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    if (psi(idx) == Cx(0, 0)) continue;
    VecC term = VecC::Ones(1);
    Eigen::Index rest = idx;
    Eigen::Index div = psi.size() / 3;
    for (int site = 0; site < n; ++site) {
      int digit = static_cast<int>(rest / div);
      rest %= div;
      div /= 3;
      VecC col = e.col(digit);
      VecC next(term.size() * 4);
      for (Eigen::Index a = 0; a < term.size(); ++a)
        for (int b = 0; b < 4; ++b) next(a * 4 + b) = term(a) * col(b);
      term = next;
    }
    out += psi(idx) * term;
  }
  return out;
}

Mat3C random_u3(Rng& rng) {
  MatC u = random_unitary(3, rng);
  return Mat3C(u);
}

}  // namespace

TEST(DickeMap, IsometryOntoSymmetricSector) {
  MatC e = dicke_map();
  ASSERT_EQ(e.rows(), 4);
  ASSERT_EQ(e.cols(), 3);
  EXPECT_LT((e.adjoint() * e - MatC::Identity(3, 3)).norm(), 1e-15);
  EXPECT_NEAR(std::abs(e(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e(1, 1)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(e(2, 1)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(e(3, 2)), 1.0, 1e-15);
  VecC s = dicke_singlet();
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_LT((e.adjoint() * s).norm(), 1e-15);
  // Projector and singlet together resolve the identity.
  EXPECT_LT((e * e.adjoint() + s * s.adjoint() - MatC::Identity(4, 4)).norm(), 1e-15);
}

TEST(EncodeGate, IdentityAndSingletAction) {
  MatC g = encode_gate(Mat3C::Identity());
  EXPECT_LT((g - MatC::Identity(4, 4)).norm(), 1e-14);
  Rng rng(11);
  Mat3C u = random_u3(rng);
  MatC gu = encode_gate(u);
  EXPECT_TRUE(is_unitary(gu, 1e-12));
  EXPECT_LT((gu * dicke_singlet() - dicke_singlet()).norm(), 1e-12);
  EXPECT_LT((gu * dicke_map() - dicke_map() * u).norm(), 1e-12);
}

TEST(EncodeGate, Homomorphism) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    Mat3C u = random_u3(rng);
    Mat3C v = random_u3(rng);
    EXPECT_LT((encode_gate(u * v) - encode_gate(u) * encode_gate(v)).norm(), 1e-12);
    EXPECT_LT((encode_gate(u).adjoint() - encode_gate(Mat3C(u.adjoint()))).norm(), 1e-12);
  }
}

TEST(EncodeGate, CommutesWithQubitSwap) {
  MatC swap = MatC::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  Rng rng(13);
  Mat3C u = random_u3(rng);
  MatC g = encode_gate(u);
  EXPECT_LT((swap * g - g * swap).norm(), 1e-12);
}

TEST(EncodeGate, RejectsNonUnitary) {
  Mat3C m = Mat3C::Identity();
  m(0, 0) = 1.5;
  EXPECT_THROW(encode_gate(m), InputError);
}

TEST(EncodeTwoQutrit, IdentityAndTensorFactors) {
  EXPECT_LT((encode_two_qutrit(MatC::Identity(9, 9)) - MatC::Identity(16, 16)).norm(), 1e-13);
  Rng rng(14);
  Mat3C u = random_u3(rng);
  Mat3C v = random_u3(rng);
  MatC big = encode_two_qutrit(kron(u, v));
  EXPECT_TRUE(is_unitary(big, 1e-12));
  // Agrees with the kron of single-site encodings on the encoded sector (the
  // two differ off it: the pair encoding is identity there by construction).
  MatC e2 = kron(dicke_map(), dicke_map());
  EXPECT_LT((big * e2 - kron(encode_gate(u), encode_gate(v)) * e2).norm(), 1e-12);
}

TEST(EncodeTwoQutrit, SubspaceActionAndComplement) {
  Rng rng(15);
  MatC u = random_unitary(9, rng);
  MatC big = encode_two_qutrit(u);
  MatC e2 = kron(dicke_map(), dicke_map());
  EXPECT_LT((big * e2 - e2 * u).norm(), 1e-12);
  MatC pc = MatC::Identity(16, 16) - e2 * e2.adjoint();
  EXPECT_LT((big * pc - pc).norm(), 1e-12);
}

TEST(EncodeState, BasisAndSuperposition) {
  VecC one = VecC::Zero(3);
  one(1) = 1.0;
  VecC enc = encode_state(one);
  ASSERT_EQ(enc.size(), 4);
  EXPECT_LT((enc - VecC(dicke_map().col(1))).norm(), 1e-15);

  VecC two_site = VecC::Zero(9);
  two_site(5) = 1.0;  // |1,2>
  VecC e2 = encode_state(two_site);
  ASSERT_EQ(e2.size(), 16);
  EXPECT_LT((e2 - kron_embed(two_site)).norm(), 1e-15);
}

TEST(EncodeState, MatchesKronOracleOnRandomStates) {
  Rng rng(16);
  for (int n = 1; n <= 4; ++n) {
    Eigen::Index dim = 1;
    for (int k = 0; k < n; ++k) dim *= 3;
    VecC psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = rng.gaussian_cx();
    psi.normalize();
    VecC enc = encode_state(psi);
    EXPECT_NEAR(enc.norm(), 1.0, 1e-12);
    EXPECT_LT((enc - kron_embed(psi)).norm(), 1e-12);
  }
}

TEST(EncodeState, GateActionCommutesWithEmbedding) {
  Rng rng(17);
  Mat3C u = random_u3(rng);
  VecC psi(3);
  for (int i = 0; i < 3; ++i) psi(i) = rng.gaussian_cx();
  psi.normalize();
  EXPECT_LT((encode_gate(u) * encode_state(psi) - encode_state(u * psi)).norm(), 1e-12);
}

TEST(EncodeState, PurifiedOverloadMatchesKronOracle) {
  Rng rng(18);
  UmpsState s = random_umps(4, rng);
  PurifiedMps p = purify(s);
  VecC enc = encode_state(p);
  ASSERT_EQ(enc.size(), 16384);
  EXPECT_LT((enc - kron_embed(purified_to_dense(p))).norm(), 1e-11);
}

TEST(EncodeState, RejectsNonPowerOfThree) {
  EXPECT_THROW(encode_state(VecC::Zero(5)), InputError);
}

TEST(TwoLevelDecompose, IdentityGivesIdentities) {
  TwoLevelFactors f = two_level_decompose(Mat3C::Identity());
  EXPECT_LT((f.v01 - Mat3C::Identity()).norm(), 1e-14);
  EXPECT_LT((f.v02 - Mat3C::Identity()).norm(), 1e-14);
  EXPECT_LT((f.v12 - Mat3C::Identity()).norm(), 1e-14);
}

TEST(TwoLevelDecompose, ReconstructionAndSparsity) {
  Rng rng(19);
  for (int t = 0; t < 25; ++t) {
    Mat3C u = random_u3(rng);
    TwoLevelFactors f = two_level_decompose(u);
    EXPECT_LT((f.v01 * f.v02 * f.v12 - u).norm(), 1e-12);
    for (const Mat3C* v : {&f.v01, &f.v02, &f.v12}) EXPECT_TRUE(is_unitary(*v, 1e-12));
    // vij differs from identity only in the {i, j} block.
    EXPECT_NEAR(std::abs(f.v01(2, 2)), 1.0, 1e-12);
    EXPECT_LT(std::abs(f.v01(0, 2)) + std::abs(f.v01(1, 2)), 1e-12);
    EXPECT_LT(std::abs(f.v01(2, 0)) + std::abs(f.v01(2, 1)), 1e-12);
    EXPECT_NEAR(std::abs(f.v02(1, 1)), 1.0, 1e-12);
    EXPECT_LT(std::abs(f.v02(0, 1)) + std::abs(f.v02(2, 1)), 1e-12);
    EXPECT_LT(std::abs(f.v02(1, 0)) + std::abs(f.v02(1, 2)), 1e-12);
    EXPECT_NEAR(std::abs(f.v12(0, 0)), 1.0, 1e-12);
    EXPECT_LT(std::abs(f.v12(0, 1)) + std::abs(f.v12(0, 2)), 1e-12);
    EXPECT_LT(std::abs(f.v12(1, 0)) + std::abs(f.v12(2, 0)), 1e-12);
  }
}

TEST(TwoLevelDecompose, PassesThroughPureLowerBlock) {
  // A unitary already supported on levels {1, 2} should come back unchanged
  // up to trivial factors.
  Rng rng(20);
  MatC b = random_unitary(2, rng);
  Mat3C u = Mat3C::Identity();
  u.block(1, 1, 2, 2) = b;
  TwoLevelFactors f = two_level_decompose(u);
  EXPECT_LT((f.v01 - Mat3C::Identity()).norm(), 1e-12);
  EXPECT_LT((f.v02 - Mat3C::Identity()).norm(), 1e-12);
  EXPECT_LT((f.v12 - u).norm(), 1e-12);
}
