#include "ctxsim/program.hpp"

#include <gtest/gtest.h>

#include <cstdio>

#include "ctxsim/encode.hpp"
#include "ctxsim/linalg.hpp"

using namespace ctxsim;

namespace {

Primitive single(PrimKind k, int wire, double theta = 0.0) {
  Primitive p;
  p.kind = k;
  p.wires = {wire};
  p.theta = theta;
  return p;
}

MatC pauli_x() {
  MatC m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST(PrimitiveMatrix, SingleWireEmbedding) {
  MatC eye2 = MatC::Identity(2, 2);
  EXPECT_LT((primitive_matrix(single(PrimKind::X, 0), 2) - kron(pauli_x(), eye2)).norm(), 1e-15);
  EXPECT_LT((primitive_matrix(single(PrimKind::X, 1), 2) - kron(eye2, pauli_x())).norm(), 1e-15);

  double th = 0.7;
  MatC ry(2, 2);
  ry << std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2);
  EXPECT_LT((primitive_matrix(single(PrimKind::RY, 1, th), 3) - kron(kron(eye2, ry), eye2)).norm(),
            1e-15);

  MatC rz = MatC::Zero(2, 2);
  rz(0, 0) = std::exp(Cx(0, -th / 2));
  rz(1, 1) = std::exp(Cx(0, th / 2));
  EXPECT_LT((primitive_matrix(single(PrimKind::RZ, 0, th), 1) - rz).norm(), 1e-15);

  MatC ps = MatC::Identity(2, 2);
  ps(1, 1) = std::exp(Cx(0, th));
  EXPECT_LT((primitive_matrix(single(PrimKind::PS, 0, th), 1) - ps).norm(), 1e-15);
}

TEST(PrimitiveMatrix, ControlledGates) {
  // CNOT with control on wire 0 (most significant bit).
  Primitive cnot = single(PrimKind::X, 1);
  cnot.controls = {{0, 1}};
  MatC got = primitive_matrix(cnot, 2);
  MatC want = MatC::Zero(4, 4);
  want(0, 0) = want(1, 1) = want(3, 2) = want(2, 3) = 1.0;
  EXPECT_LT((got - want).norm(), 1e-15);

  // Zero-polarity control activates on bit 0.
  Primitive anti = single(PrimKind::X, 1);
  anti.controls = {{0, 0}};
  MatC got0 = primitive_matrix(anti, 2);
  MatC want0 = MatC::Zero(4, 4);
  want0(1, 0) = want0(0, 1) = want0(2, 2) = want0(3, 3) = 1.0;
  EXPECT_LT((got0 - want0).norm(), 1e-15);

  // Toffoli: flips wire 2 only on |11x>.
  Primitive ccx = single(PrimKind::X, 2);
  ccx.controls = {{0, 1}, {1, 1}};
  MatC t = primitive_matrix(ccx, 3);
  MatC tw = MatC::Identity(8, 8);
  tw(6, 6) = tw(7, 7) = 0.0;
  tw(7, 6) = tw(6, 7) = 1.0;
  EXPECT_LT((t - tw).norm(), 1e-15);
}

TEST(PrimitiveMatrix, CvAppliesExplicitUnitary) {
  Rng rng(21);
  Primitive p = single(PrimKind::CV, 0);
  p.v = random_unitary(2, rng);
  EXPECT_LT((primitive_matrix(p, 2) - kron(MatC(p.v), MatC::Identity(2, 2))).norm(), 1e-15);
}

TEST(PrimitiveMatrix, EncodedPairPrimitives) {
  Primitive p;
  p.kind = PrimKind::VENC;
  p.wires = {0, 1};
  p.li = 0;
  p.lj = 2;
  Rng rng(22);
  p.v = random_unitary(2, rng);
  Mat3C embedded = Mat3C::Identity();
  embedded(0, 0) = p.v(0, 0);
  embedded(0, 2) = p.v(0, 1);
  embedded(2, 0) = p.v(1, 0);
  embedded(2, 2) = p.v(1, 1);
  MatC want = encode_gate(embedded);
  EXPECT_LT((primitive_matrix(p, 2) - want).norm(), 1e-13);
  // Pair on the low wires of a 3-wire register.
  Primitive shifted = p;
  shifted.wires = {1, 2};
  EXPECT_LT((primitive_matrix(shifted, 3) - kron(MatC::Identity(2, 2), want)).norm(), 1e-13);

  Primitive rz;
  rz.kind = PrimKind::RZENC;
  rz.wires = {0, 1};
  rz.li = 1;
  rz.lj = 2;
  rz.theta = 0.9;
  Mat3C erz = Mat3C::Identity();
  erz(1, 1) = std::exp(Cx(0, -0.45));
  erz(2, 2) = std::exp(Cx(0, 0.45));
  EXPECT_LT((primitive_matrix(rz, 2) - encode_gate(erz)).norm(), 1e-13);
}

TEST(PrimitiveMatrix, RejectsBadWiring) {
  EXPECT_THROW(primitive_matrix(single(PrimKind::X, 2), 2), InputError);
  EXPECT_THROW(primitive_matrix(single(PrimKind::X, -1), 2), InputError);
  Primitive clash = single(PrimKind::X, 1);
  clash.controls = {{1, 1}};
  EXPECT_THROW(primitive_matrix(clash, 2), InputError);
  Primitive pol = single(PrimKind::X, 1);
  pol.controls = {{0, 2}};
  EXPECT_THROW(primitive_matrix(pol, 2), InputError);
  Primitive pair;
  pair.kind = PrimKind::RZENC;
  pair.wires = {0};
  EXPECT_THROW(primitive_matrix(pair, 2), InputError);
}

TEST(ProgramMatrix, AppliesInOrder) {
  GateProgram g;
  g.n_wires = 1;
  g.prims = {single(PrimKind::X, 0), single(PrimKind::PS, 0, 0.4)};
  MatC ps = MatC::Identity(2, 2);
  ps(1, 1) = std::exp(Cx(0, 0.4));
  EXPECT_LT((program_matrix(g) - ps * pauli_x()).norm(), 1e-15);
  std::swap(g.prims[0], g.prims[1]);
  EXPECT_LT((program_matrix(g) - pauli_x() * ps).norm(), 1e-15);
}

TEST(ProgramMatrix, MultiQubitCount) {
  GateProgram g;
  g.n_wires = 3;
  g.prims = {single(PrimKind::RY, 0, 0.1), single(PrimKind::X, 1)};
  Primitive c = single(PrimKind::X, 2);
  c.controls = {{0, 1}};
  g.prims.push_back(c);
  Primitive v;
  v.kind = PrimKind::VENC;
  v.wires = {0, 1};
  v.v = Eigen::Matrix2cd::Identity();
  g.prims.push_back(v);
  EXPECT_EQ(multi_qubit_count(g), 2);
}

TEST(ProgramText, RoundTripIsByteIdentical) {
  Rng rng(23);
  GateProgram g;
  g.n_wires = 4;
  g.prims.push_back(single(PrimKind::RY, 0, -0.12345678901234567));
  g.prims.push_back(single(PrimKind::RZ, 1, 1e-17));
  g.prims.push_back(single(PrimKind::PS, 2, 3.0));
  g.prims.push_back(single(PrimKind::X, 3));
  Primitive cv = single(PrimKind::CV, 2);
  cv.v = random_unitary(2, rng);
  cv.controls = {{0, 1}, {1, 0}};
  g.prims.push_back(cv);
  Primitive rz;
  rz.kind = PrimKind::RZENC;
  rz.wires = {2, 3};
  rz.li = 0;
  rz.lj = 1;
  rz.theta = 0.25;
  g.prims.push_back(rz);
  Primitive ve;
  ve.kind = PrimKind::VENC;
  ve.wires = {1, 2};
  ve.li = 1;
  ve.lj = 2;
  ve.v = random_unitary(2, rng);
  ve.controls = {{0, 0}};
  g.prims.push_back(ve);

  std::string text = program_to_text(g);
  GateProgram back = program_from_text(text);
  EXPECT_EQ(program_to_text(back), text);
  EXPECT_EQ(back.n_wires, 4);
  ASSERT_EQ(back.prims.size(), g.prims.size());
  EXPECT_LT((program_matrix(back) - program_matrix(g)).norm(), 1e-15);
}

TEST(ProgramText, IgnoresCommentsAndBlankLines) {
  GateProgram g = program_from_text(
      "# header comment\n\nprogram wires 2\n# body comment\nX ctrl 0 on 1\n");
  EXPECT_EQ(g.n_wires, 2);
  ASSERT_EQ(g.prims.size(), 1u);
  EXPECT_EQ(g.prims[0].kind, PrimKind::X);
}

TEST(ProgramText, RejectsMalformedInput) {
  EXPECT_THROW(program_from_text(""), InputError);
  EXPECT_THROW(program_from_text("wires 2\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nFOO ctrl 0 on 0\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nX on 0\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nX ctrl 1 0 on 1\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nRY ctrl 0 on 0\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nRZENC ctrl 0 on 0 1 levels 1 1 0.5\n"),
               InputError);
  EXPECT_THROW(program_from_text("program wires 2\nRZENC ctrl 0 on 0 1 levels 1 0 0.5\n"),
               InputError);
  EXPECT_THROW(program_from_text("program wires 2\nX ctrl 0 on 0 junk\n"), InputError);
  EXPECT_THROW(program_from_text("program wires 2\nCV ctrl 0 on 0 1 0 0 0 0 0\n"), InputError);
}

TEST(ProgramFile, SaveLoadRoundTrip) {
  GateProgram g;
  g.n_wires = 2;
  g.prims = {single(PrimKind::RY, 0, 0.3), single(PrimKind::X, 1)};
  std::string path = testing::TempDir() + "prog_roundtrip.txt";
  save_program(path, g);
  GateProgram back = load_program(path);
  EXPECT_EQ(program_to_text(back), program_to_text(g));
  std::remove(path.c_str());
  EXPECT_THROW(load_program(path), InputError);
}
