#include "ctxsim/synth.hpp"

#include <Eigen/Eigenvalues>

#include "ctxsim/encode.hpp"
#include "ctxsim/linalg.hpp"

namespace ctxsim {

namespace {

MatC cs_matrix(int n, int p, const VecR& theta) {
  MatC m = MatC::Identity(n, n);
  for (int i = 0; i < p; ++i) {
    double c = std::cos(theta[i]), s = std::sin(theta[i]);
    m(i, i) = c;
    m(i, p + i) = -s;
    m(p + i, i) = s;
    m(p + i, p + i) = c;
  }
  return m;
}

void orthonormalize_rows(MatC& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) m.row(i) -= (m.row(j).conjugate() * m.row(i).transpose())(0, 0) * m.row(j);
    double nrm = m.row(i).norm();
    if (nrm < 0.5) throw CompileError("csd: degenerate row system");
    m.row(i) /= nrm;
  }
}

}  // namespace

CsdResult csd(const MatC& u, int p) {
  const int n = static_cast<int>(u.rows());
  const int q = n - p;
  if (u.cols() != n || p <= 0 || q < p) throw InputError("csd: bad block size");
  if (!is_unitary(u, 1e-10)) throw InputError("csd: input not unitary");

  CsdResult r;
  Eigen::JacobiSVD<MatC> svd(u.topLeftCorner(p, p),
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  r.u1 = svd.matrixU();
  r.v1 = svd.matrixV();
  r.theta = VecR::Zero(p);
  MatC g = u.bottomLeftCorner(q, p) * r.v1;
  VecR c = svd.singularValues().cwiseMin(1.0);
  r.u2 = MatC::Zero(q, q);
  std::vector<bool> filled(q, false);
  for (int i = 0; i < p; ++i) {
    double s = g.col(i).norm();
    r.theta[i] = std::atan2(s, c[i]);
    if (s > 1e-8) {
      r.u2.col(i) = g.col(i) / s;
      filled[i] = true;
    }
  }
  // Complete the left factor with orthonormal columns; any completion in the
  // orthogonal complement is consistent with the scale-one rows below.
  for (int i = 0; i < q; ++i) {
    if (filled[i]) continue;
    int best = -1;
    double best_norm = -1.0;
    VecC best_col;
    for (int cand = 0; cand < q; ++cand) {
      VecC col = VecC::Zero(q);
      col(cand) = 1.0;
      for (int j = 0; j < q; ++j)
        if (filled[j]) col -= r.u2.col(j).dot(col) * r.u2.col(j);
      for (int j = 0; j < i; ++j)
        if (!filled[j]) col -= r.u2.col(j).dot(col) * r.u2.col(j);
      if (col.norm() > best_norm) {
        best_norm = col.norm();
        best = cand;
        best_col = col;
      }
    }
    if (best < 0 || best_norm < 1e-3) throw CompileError("csd: completion failed");
    r.u2.col(i) = best_col / best_norm;
  }
  for (int i = 0; i < q; ++i) filled[i] = true;

  MatC w2 = r.u2.adjoint() * u.bottomRightCorner(q, q);
  MatC y = r.u1.adjoint() * u.topRightCorner(p, q);
  MatC v2d(q, q);
  for (int i = 0; i < q; ++i) {
    if (i >= p) {
      v2d.row(i) = w2.row(i);
      continue;
    }
    double ci = std::cos(r.theta[i]), si = std::sin(r.theta[i]);
    if (ci >= si)
      v2d.row(i) = w2.row(i) / ci;
    else
      v2d.row(i) = -y.row(i) / si;
  }
  orthonormalize_rows(v2d);
  r.v2 = v2d.adjoint();

  MatC left = MatC::Zero(n, n), right = MatC::Zero(n, n);
  left.topLeftCorner(p, p) = r.u1;
  left.bottomRightCorner(q, q) = r.u2;
  right.topLeftCorner(p, p) = r.v1;
  right.bottomRightCorner(q, q) = r.v2;
  double res = (left * cs_matrix(n, p, r.theta) * right.adjoint() - u).norm();
  if (res > 1e-9) throw CompileError("csd: residual " + std::to_string(res));
  return r;
}

MatC qsd_factor_matrix(const QsdFactor& f) {
  if (f.kind == QsdFactor::Single)
    return f.wire == 0 ? kron(f.u, Mat3C::Identity()) : kron(Mat3C::Identity(), f.u);
  MatC m = MatC::Identity(9, 9);
  auto idx = [&](int t, int c) { return f.wire == 0 ? t * 3 + c : c * 3 + t; };
  int a = idx(f.li, f.ctrl_level), b = idx(f.lj, f.ctrl_level);
  m(a, a) = f.block(0, 0);
  m(a, b) = f.block(0, 1);
  m(b, a) = f.block(1, 0);
  m(b, b) = f.block(1, 1);
  return m;
}

namespace {

bool near_identity(const MatC& m, double tol = 1e-12) {
  return (m - MatC::Identity(m.rows(), m.cols())).norm() <= tol;
}

// Two-level pattern of a 3x3 unitary: returns levels and block, or false.
bool two_level_pattern(const Mat3C& u, int& li, int& lj, Eigen::Matrix2cd& block,
                       double tol = 1e-12) {
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& pr : pairs) {
    int i = pr[0], j = pr[1], k = 3 - i - j;
    double off = std::abs(u(k, i)) + std::abs(u(k, j)) + std::abs(u(i, k)) +
                 std::abs(u(j, k)) + std::abs(u(k, k) - 1.0);
    if (off <= tol) {
      li = i;
      lj = j;
      block << u(i, i), u(i, j), u(j, i), u(j, j);
      return true;
    }
  }
  return false;
}

// Factors for a single-qutrit gate applied when the other wire sits at one
// level: Schur-diagonalize, peel the control-side phase, split the rest into
// two controlled two-level phase rotations.
void ctrl_single_factors(int ctrl_wire, int level, int target_wire, const Mat3C& d,
                         std::vector<QsdFactor>& out) {
  if (near_identity(d)) return;
  QsdFactor f;
  f.kind = QsdFactor::CtrlTwoLevel;
  f.wire = target_wire;
  f.ctrl_wire = ctrl_wire;
  f.ctrl_level = level;
  if (two_level_pattern(d, f.li, f.lj, f.block)) {
    out.push_back(f);
    return;
  }
  Eigen::ComplexSchur<MatC> schur(d);
  Mat3C qmat = schur.matrixU();
  double delta[3];
  for (int k = 0; k < 3; ++k) delta[k] = std::arg(schur.matrixT()(k, k));
  if (!near_identity(qmat, 1e-14)) {
    QsdFactor qf;
    qf.kind = QsdFactor::Single;
    qf.wire = target_wire;
    qf.u = qmat.adjoint();
    out.push_back(qf);
  }
  if (std::abs(delta[2]) > 1e-14) {
    QsdFactor pf;
    pf.kind = QsdFactor::Single;
    pf.wire = ctrl_wire;
    pf.u = Mat3C::Identity();
    pf.u(level, level) = std::exp(Cx(0.0, delta[2]));
    out.push_back(pf);
  }
  for (int k = 0; k < 2; ++k) {
    double phi = delta[k] - delta[2];
    if (std::abs(phi) <= 1e-14) continue;
    QsdFactor tf = f;
    tf.li = k;
    tf.lj = 2;
    tf.block = Eigen::Matrix2cd::Identity();
    tf.block(0, 0) = std::exp(Cx(0.0, phi));
    out.push_back(tf);
  }
  if (!near_identity(qmat, 1e-14)) {
    QsdFactor qf;
    qf.kind = QsdFactor::Single;
    qf.wire = target_wire;
    qf.u = qmat;
    out.push_back(qf);
  }
}

// diag(g0, g1, g2) over mux_wire levels, gates acting on the other wire.
void mux_factors(int mux_wire, int target_wire, const Mat3C& g0, const Mat3C& g1,
                 const Mat3C& g2, std::vector<QsdFactor>& out) {
  ctrl_single_factors(mux_wire, 1, target_wire, g0.adjoint() * g1, out);
  ctrl_single_factors(mux_wire, 2, target_wire, g0.adjoint() * g2, out);
  if (!near_identity(g0)) {
    QsdFactor f;
    f.kind = QsdFactor::Single;
    f.wire = target_wire;
    f.u = g0;
    out.push_back(f);
  }
}

// Controlled plane rotations on wire 0 between levels (l1, l2), one per
// level of wire 1.
void cs_factors(int l1, int l2, const VecR& theta, std::vector<QsdFactor>& out) {
  for (int n = 0; n < 3; ++n) {
    if (std::abs(theta[n]) <= 1e-14) continue;
    QsdFactor f;
    f.kind = QsdFactor::CtrlTwoLevel;
    f.wire = 0;
    f.li = l1;
    f.lj = l2;
    f.ctrl_wire = 1;
    f.ctrl_level = n;
    double c = std::cos(theta[n]), s = std::sin(theta[n]);
    f.block << c, -s, s, c;
    out.push_back(f);
  }
}

}  // namespace

std::vector<QsdFactor> qsd_two_qutrit(const MatC& u) {
  if (u.rows() != 9 || u.cols() != 9) throw InputError("qsd_two_qutrit: expected 9x9");
  if (!is_unitary(u, 1e-10)) throw InputError("qsd_two_qutrit: input not unitary");
  std::vector<QsdFactor> out;
  if (near_identity(u)) return out;

  // Tensor products split into two independent single-qutrit factors.
  {
    MatC resh(9, 9);
    for (int a = 0; a < 3; ++a)
      for (int ap = 0; ap < 3; ++ap)
        for (int b = 0; b < 3; ++b)
          for (int bp = 0; bp < 3; ++bp)
            resh(a * 3 + ap, b * 3 + bp) = u(a * 3 + b, ap * 3 + bp);
    Eigen::JacobiSVD<MatC> svd(resh, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) < 1e-10) {
      Mat3C av, bv;
      for (int a = 0; a < 3; ++a)
        for (int ap = 0; ap < 3; ++ap) av(a, ap) = svd.matrixU()(a * 3 + ap, 0);
      for (int b = 0; b < 3; ++b)
        for (int bp = 0; bp < 3; ++bp) bv(b, bp) = std::conj(svd.matrixV()(b * 3 + bp, 0));
      av *= std::sqrt(3.0);
      bv *= svd.singularValues()(0) / std::sqrt(3.0);
      if (is_unitary(av, 1e-9) && is_unitary(bv, 1e-9) &&
          (kron(MatC(av), MatC(bv)) - u).norm() < 1e-9) {
        if (!near_identity(bv)) {
          QsdFactor f;
          f.kind = QsdFactor::Single;
          f.wire = 1;
          f.u = bv;
          out.push_back(f);
        }
        if (!near_identity(av)) {
          QsdFactor f;
          f.kind = QsdFactor::Single;
          f.wire = 0;
          f.u = av;
          out.push_back(f);
        }
        return out;
      }
    }
  }

  CsdResult c1 = csd(u, 3);
  CsdResult c2 = csd(c1.u2, 3);
  CsdResult c3 = csd(MatC(c1.v2.adjoint()), 3);

  mux_factors(0, 1, Mat3C::Identity(), Mat3C(c3.v1.adjoint()), Mat3C(c3.v2.adjoint()), out);
  cs_factors(1, 2, c3.theta, out);
  mux_factors(0, 1, Mat3C(c1.v1.adjoint()), Mat3C(c3.u1), Mat3C(c3.u2), out);
  cs_factors(0, 1, c1.theta, out);
  mux_factors(0, 1, Mat3C::Identity(), Mat3C(c2.v1.adjoint()), Mat3C(c2.v2.adjoint()), out);
  cs_factors(1, 2, c2.theta, out);
  mux_factors(0, 1, Mat3C(c1.u1), Mat3C(c2.u1), Mat3C(c2.u2), out);

  MatC prod = MatC::Identity(9, 9);
  for (const QsdFactor& f : out) prod = qsd_factor_matrix(f) * prod;
  double res = phase_distance(prod, u);
  if (res > 1e-10)
    throw CompileError("qsd_two_qutrit: residual " + std::to_string(res));
  return out;
}

namespace {

void push_b_basis(std::vector<Primitive>& prims, int q0, int q1, bool inverse) {
  Primitive cnot;
  cnot.kind = PrimKind::X;
  cnot.wires = {q1};
  cnot.controls = {{q0, 1}};
  Primitive ch;
  ch.kind = PrimKind::CV;
  ch.wires = {q0};
  ch.controls = {{q1, 1}};
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ch.v << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  if (inverse) {
    prims.push_back(ch);
    prims.push_back(cnot);
  } else {
    prims.push_back(cnot);
    prims.push_back(ch);
  }
}

void push_two_level_on_pair(std::vector<Primitive>& prims, int q0, int q1, int li,
                            int lj, const Eigen::Matrix2cd& block) {
  Primitive cv;
  cv.kind = PrimKind::CV;
  cv.v = block;
  if (li == 0 && lj == 1) {
    cv.wires = {q1};
    cv.controls = {{q0, 0}};
    prims.push_back(cv);
  } else if (li == 0 && lj == 2) {
    cv.wires = {q0};
    cv.controls = {{q1, 0}};
    prims.push_back(cv);
  } else {
    Primitive cnot;
    cnot.kind = PrimKind::X;
    cnot.wires = {q1};
    cnot.controls = {{q0, 1}};
    prims.push_back(cnot);
    cv.wires = {q0};
    cv.controls = {{q1, 1}};
    prims.push_back(cv);
    prims.push_back(cnot);
  }
}

}  // namespace

GateProgram synthesize_single(const Mat3C& v, int q0, int q1) {
  if (!is_unitary(v, 1e-10)) throw InputError("synthesize_single: input not unitary");
  if (q0 == q1) throw InputError("synthesize_single: wires collide");
  GateProgram g;
  g.n_wires = std::max(q0, q1) + 1;
  if (near_identity(v)) return g;
  int li, lj;
  Eigen::Matrix2cd block;
  if (!two_level_pattern(v, li, lj, block, 1e-10))
    throw InputError("synthesize_single: input is not a two-level unitary");
  push_b_basis(g.prims, q0, q1, false);
  push_two_level_on_pair(g.prims, q0, q1, li, lj, block);
  push_b_basis(g.prims, q0, q1, true);

  GateProgram local;
  local.n_wires = 2;
  for (Primitive p : g.prims) {
    for (int& w : p.wires) w = (w == q0) ? 0 : 1;
    for (auto& [w, b] : p.controls) w = (w == q0) ? 0 : 1;
    local.prims.push_back(p);
  }
  double res = phase_distance(program_matrix(local), encode_gate(v));
  if (res > 1e-10)
    throw CompileError("synthesize_single: residual " + std::to_string(res));
  return g;
}

CompileResult compile_two_qutrit(const MatC& u) {
  std::vector<QsdFactor> factors = qsd_two_qutrit(u);
  CompileResult result;
  result.program.n_wires = 4;
  auto pair_of = [](int wire) { return std::pair<int, int>{2 * wire, 2 * wire + 1}; };

  for (const QsdFactor& f : factors) {
    auto [t0, t1] = pair_of(f.wire);
    if (f.kind == QsdFactor::Single) {
      TwoLevelFactors tl = two_level_decompose(f.u);
      std::vector<const Mat3C*> pieces;
      for (const Mat3C* v : {&tl.v12, &tl.v02, &tl.v01})
        if (!near_identity(*v, 1e-13)) pieces.push_back(v);
      if (pieces.empty()) continue;
      // A pair chain acts on its triplet even when the spectator pair sits
      // in the singlet, where the target is identity. The spectator singlet
      // is pattern (1, 1) in the B basis; an inverse gate controlled on that
      // pattern undoes the leak without touching the encoded sector.
      auto [c0, c1] = pair_of(1 - f.wire);
      push_b_basis(result.program.prims, c0, c1, false);
      for (const Mat3C* v : pieces) {
        GateProgram sub = synthesize_single(*v, t0, t1);
        result.program.prims.insert(result.program.prims.end(), sub.prims.begin(),
                                    sub.prims.end());
        Primitive undo;
        undo.kind = PrimKind::VENC;
        undo.wires = {t0, t1};
        undo.controls = {{c0, 1}, {c1, 1}};
        Eigen::Matrix2cd block;
        if (!two_level_pattern(*v, undo.li, undo.lj, block, 1e-10))
          throw CompileError("compile_two_qutrit: factor is not two-level");
        undo.v = block.adjoint();
        result.program.prims.push_back(undo);
      }
      push_b_basis(result.program.prims, c0, c1, true);
      continue;
    }
    auto [c0, c1] = pair_of(1 - f.wire);
    // Control patterns in the computational basis after the pair rotation:
    // level 0 -> 00, level 1 -> 01, level 2 -> 10.
    int b0 = (f.ctrl_level == 2) ? 1 : 0;
    int b1 = (f.ctrl_level == 1) ? 1 : 0;
    push_b_basis(result.program.prims, c0, c1, false);
    Primitive enc;
    enc.wires = {t0, t1};
    enc.controls = {{c0, b0}, {c1, b1}};
    enc.li = f.li;
    enc.lj = f.lj;
    bool diag = std::abs(f.block(0, 1)) < 1e-14 && std::abs(f.block(1, 0)) < 1e-14 &&
                std::abs(f.block(0, 0) - std::conj(f.block(1, 1))) < 1e-12 &&
                std::abs(std::abs(f.block(1, 1)) - 1.0) < 1e-12;
    if (diag) {
      enc.kind = PrimKind::RZENC;
      enc.theta = 2.0 * std::arg(f.block(1, 1));
    } else {
      enc.kind = PrimKind::VENC;
      enc.v = f.block;
    }
    result.program.prims.push_back(enc);
    push_b_basis(result.program.prims, c0, c1, true);
  }

  result.residual = phase_distance(program_matrix(result.program), encode_two_qutrit(u));
  if (result.residual > 1e-8)
    throw CompileError("compile_two_qutrit: residual " +
                       std::to_string(result.residual));
  result.primitive_count = static_cast<int>(result.program.prims.size());
  result.multi_qubit_count = multi_qubit_count(result.program);
  return result;
}

}  // namespace ctxsim
