#include "ctxsim/circuit.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "ctxsim/encode.hpp"
#include "ctxsim/linalg.hpp"

namespace ctxsim {

QubitState zero_state(int n_qubits) {
  QubitState st;
  st.n = n_qubits;
  st.amps = VecC::Zero(Eigen::Index(1) << n_qubits);
  st.amps(0) = 1.0;
  return st;
}

void apply_gate(QubitState& st, const MatC& gate, const std::vector<int>& wires) {
  const int k = static_cast<int>(wires.size());
  if (gate.rows() != (1 << k) || gate.cols() != (1 << k))
    throw InputError("apply_gate: gate size does not match wire count");
  Eigen::Index mask = 0;
  for (int j = 0; j < k; ++j) {
    if (wires[j] < 0 || wires[j] >= st.n) throw InputError("apply_gate: wire out of range");
    Eigen::Index bit = Eigen::Index(1) << (st.n - 1 - wires[j]);
    if (mask & bit) throw InputError("apply_gate: wires collide");
    mask |= bit;
  }
  std::vector<Eigen::Index> offset(std::size_t(1) << k, 0);
  for (std::size_t m = 0; m < offset.size(); ++m)
    for (int j = 0; j < k; ++j)
      if ((m >> (k - 1 - j)) & 1) offset[m] |= Eigen::Index(1) << (st.n - 1 - wires[j]);
  const Eigen::Index dim = st.amps.size();
  const std::size_t sub = std::size_t(1) << k;
  std::vector<Cx> in(sub);
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t m = 0; m < sub; ++m) in[m] = st.amps(base | offset[m]);
    for (std::size_t r = 0; r < sub; ++r) {
      Cx acc(0.0, 0.0);
      for (std::size_t c = 0; c < sub; ++c) acc += gate(r, c) * in[c];
      st.amps(base | offset[r]) = acc;
    }
  }
}

const std::vector<MatC>& qutrit_pair_basis_dense() {
  static const std::vector<MatC> basis = [] {
    std::vector<MatC> b;
    b.reserve(kGateParams);
    b.push_back(MatC::Identity(9, 9));
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j) {
        MatC m = MatC::Zero(9, 9);
        m(i, j) = 1.0;
        m(j, i) = 1.0;
        b.push_back(m);
      }
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j) {
        MatC m = MatC::Zero(9, 9);
        m(i, j) = Cx(0.0, -1.0);
        m(j, i) = Cx(0.0, 1.0);
        b.push_back(m);
      }
    for (int k = 1; k < 9; ++k) {
      MatC m = MatC::Zero(9, 9);
      double norm = std::sqrt(2.0 / (k * (k + 1.0)));
      for (int i = 0; i < k; ++i) m(i, i) = norm;
      m(k, k) = -k * norm;
      b.push_back(m);
    }
    return b;
  }();
  return basis;
}

namespace {

// Sparse entry list per generator: (row, col, value).
struct SparseGen {
  std::vector<std::tuple<int, int, Cx>> entries;
};

const std::vector<SparseGen>& sparse_basis() {
  static const std::vector<SparseGen> sp = [] {
    std::vector<SparseGen> out;
    for (const MatC& g : qutrit_pair_basis_dense()) {
      SparseGen s;
      for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
          if (g(r, c) != Cx(0.0, 0.0)) s.entries.emplace_back(r, c, g(r, c));
      out.push_back(std::move(s));
    }
    return out;
  }();
  return sp;
}

}  // namespace

MatC pair_hamiltonian(const Eigen::Ref<const VecR>& theta) {
  if (theta.size() != kGateParams) throw InputError("pair_hamiltonian: need 81 parameters");
  MatC h = MatC::Zero(9, 9);
  const auto& sp = sparse_basis();
  for (int j = 0; j < kGateParams; ++j) {
    if (theta[j] == 0.0) continue;
    for (auto& [r, c, v] : sp[j].entries) h(r, c) += theta[j] * v;
  }
  return h;
}

MatC pair_unitary(const Eigen::Ref<const VecR>& theta) {
  Eigen::SelfAdjointEigenSolver<MatC> es(pair_hamiltonian(theta));
  VecC phases(9);
  for (int k = 0; k < 9; ++k) phases(k) = std::exp(Cx(0.0, es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

QubitState prepare(const VecR& params, int layers, int n_sites) {
  if (params.size() != ansatz_param_count(layers, n_sites))
    throw InputError("prepare: parameter count mismatch");
  QubitState st = zero_state(2 * n_sites);
  int g = 0;
  for (int k = 0; k < layers; ++k)
    for (int i = 0; i + 1 < n_sites; ++i, ++g) {
      MatC u16 = encode_two_qutrit(pair_unitary(params.segment(g * kGateParams, kGateParams)));
      apply_gate(st, u16, {2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3});
    }
  return st;
}

double nlf(const QubitState& candidate, const QubitState& target) {
  if (candidate.n != target.n) throw InputError("nlf: qubit counts differ");
  double mag = std::abs(candidate.amps.dot(target.amps));
  if (mag < 1e-300) return std::numeric_limits<double>::infinity();
  return -std::log(mag) / candidate.n;
}

NlfGradient nlf_gradient(const VecR& params, int layers, const QubitState& target,
                         int n_sites) {
  if (params.size() != ansatz_param_count(layers, n_sites))
    throw InputError("nlf_gradient: parameter count mismatch");
  if (target.n != 2 * n_sites) throw InputError("nlf_gradient: target size mismatch");
  const int n_gates = layers * (n_sites - 1);
  const int nq = 2 * n_sites;
  const MatC e2 = kron(dicke_map(), dicke_map());

  struct GateData {
    MatC u16;
    MatC q;       // eigenvectors of H
    VecR lambda;  // eigenvalues
    std::vector<int> wires;
  };
  std::vector<GateData> gates(n_gates);
  std::vector<VecC> phi(n_gates + 1);
  QubitState st = zero_state(nq);
  phi[0] = st.amps;
  {
    int g = 0;
    for (int k = 0; k < layers; ++k)
      for (int i = 0; i + 1 < n_sites; ++i, ++g) {
        GateData& gd = gates[g];
        Eigen::SelfAdjointEigenSolver<MatC> es(
            pair_hamiltonian(params.segment(g * kGateParams, kGateParams)));
        gd.q = es.eigenvectors();
        gd.lambda = es.eigenvalues();
        VecC phases(9);
        for (int m = 0; m < 9; ++m) phases(m) = std::exp(Cx(0.0, gd.lambda(m)));
        MatC u9 = gd.q * phases.asDiagonal() * gd.q.adjoint();
        gd.u16 = e2 * u9 * e2.adjoint();
        gd.u16 += MatC::Identity(16, 16) - e2 * e2.adjoint();
        gd.wires = {2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3};
        apply_gate(st, gd.u16, gd.wires);
        phi[g + 1] = st.amps;
      }
  }

  Cx o = phi[n_gates].dot(target.amps);  // <candidate|target>
  NlfGradient out;
  double mag = std::abs(o);
  out.grad = VecR::Zero(params.size());
  if (mag < 1e-300) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = -std::log(mag) / nq;

  // lam holds (U_{g+1}..U_G)^dag |target>, so d<o>/dU_g = <lam|dU_g|phi_g>
  // with o = <candidate|target> conjugated below.
  QubitState lam;
  lam.n = nq;
  lam.amps = target.amps;
  for (int g = n_gates - 1; g >= 0; --g) {
    const GateData& gd = gates[g];
    // K16[a][b] = sum over untouched bits of conj(lam[a,rest]) * phi_g[b,rest]
    Eigen::Index mask = 0;
    std::vector<Eigen::Index> offset(16, 0);
    for (int j = 0; j < 4; ++j) mask |= Eigen::Index(1) << (nq - 1 - gd.wires[j]);
    for (int m = 0; m < 16; ++m)
      for (int j = 0; j < 4; ++j)
        if ((m >> (3 - j)) & 1) offset[m] |= Eigen::Index(1) << (nq - 1 - gd.wires[j]);
    MatC k16 = MatC::Zero(16, 16);
    const Eigen::Index dim = Eigen::Index(1) << nq;
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (int a = 0; a < 16; ++a) {
        Cx la = lam.amps(base | offset[a]);
        if (la == Cx(0.0, 0.0)) continue;
        for (int b = 0; b < 16; ++b)
          k16(a, b) += std::conj(la) * phi[g](base | offset[b]);
      }
    }
    // dsum = <lam|dU16|phi_g> = sum_st D_j[s,t] K9[s,t] with K9 = E2^T K16 E2.
    MatC k9 = e2.transpose() * k16 * e2.conjugate();
    MatC ktil = gd.q.transpose() * k9 * gd.q.conjugate();
    MatC phik(9, 9);
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) {
        double half = 0.5 * (gd.lambda(a) - gd.lambda(b));
        double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                            : std::sin(half) / half;
        Cx f = std::exp(Cx(0.0, 0.5 * (gd.lambda(a) + gd.lambda(b)))) * Cx(0.0, 1.0) *
               sinc;
        phik(a, b) = f * ktil(a, b);
      }
    MatC s = gd.q.conjugate() * phik * gd.q.transpose();
    const auto& sp = sparse_basis();
    for (int j = 0; j < kGateParams; ++j) {
      Cx dsum(0.0, 0.0);
      for (auto& [r, c, v] : sp[j].entries) dsum += v * s(r, c);
      // dsum = <lam| dU16 |phi_g>; do = conj(dsum); dF = -Re(conj(o) do)/(N |o|^2)
      Cx dov = std::conj(dsum);
      out.grad[g * kGateParams + j] = -std::real(std::conj(o) * dov) / (nq * mag * mag);
    }
    // pull lam back through this gate
    QubitState tmp;
    tmp.n = nq;
    tmp.amps = lam.amps;
    apply_gate(tmp, gd.u16.adjoint(), gd.wires);
    lam.amps = tmp.amps;
  }
  return out;
}

MatC pair_unitary_derivative_augmented(const Eigen::Ref<const VecR>& theta, int j) {
  if (j < 0 || j >= kGateParams) throw InputError("derivative index out of range");
  MatC h = pair_hamiltonian(theta);
  const MatC& g = qutrit_pair_basis_dense()[j];
  MatC big = MatC::Zero(18, 18);
  big.topLeftCorner(9, 9) = Cx(0.0, 1.0) * h;
  big.bottomRightCorner(9, 9) = Cx(0.0, 1.0) * h;
  big.topRightCorner(9, 9) = Cx(0.0, 1.0) * g;
  MatC eb = big.exp();
  return eb.topRightCorner(9, 9);
}

}  // namespace ctxsim
