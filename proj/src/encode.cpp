#include "ctxsim/encode.hpp"

#include "ctxsim/linalg.hpp"

namespace ctxsim {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

MatC dicke_map() {
  MatC e = MatC::Zero(4, 3);
  e(0, 0) = 1.0;
  e(1, 1) = kInvSqrt2;
  e(2, 1) = kInvSqrt2;
  e(3, 2) = 1.0;
  return e;
}

VecC dicke_singlet() {
  VecC s = VecC::Zero(4);
  s(1) = kInvSqrt2;
  s(2) = -kInvSqrt2;
  return s;
}

MatC encode_gate(const Mat3C& u) {
  if (!is_unitary(u, 1e-10)) throw InputError("encode_gate: input not unitary");
  MatC e = dicke_map();
  VecC s = dicke_singlet();
  return e * u * e.adjoint() + s * s.adjoint();
}

MatC encode_two_qutrit(const MatC& u) {
  if (u.rows() != 9 || u.cols() != 9)
    throw InputError("encode_two_qutrit: expected a 9x9 matrix");
  if (!is_unitary(u, 1e-10)) throw InputError("encode_two_qutrit: input not unitary");
  MatC e2 = kron(dicke_map(), dicke_map());
  MatC proj = e2 * e2.adjoint();
  return e2 * u * e2.adjoint() + (MatC::Identity(16, 16) - proj);
}

VecC encode_state(const VecC& psi) {
  int n = 0;
  Eigen::Index dim = 1;
  while (dim < psi.size()) {
    dim *= 3;
    ++n;
  }
  if (dim != psi.size()) throw InputError("encode_state: length is not a power of 3");
  MatC e = dicke_map();
  VecC out = VecC::Zero(Eigen::Index(1) << (2 * n));
  for (Eigen::Index m = 0; m < psi.size(); ++m) {
    if (psi(m) == Cx(0.0, 0.0)) continue;
    // Expand digit by digit; each qutrit level spreads over its qubit pair.
    std::vector<std::pair<Eigen::Index, Cx>> partial = {{0, psi(m)}};
    Eigen::Index rest = m;
    Eigen::Index div = dim / 3;
    for (int site = 0; site < n; ++site) {
      int digit = static_cast<int>(rest / div);
      rest %= div;
      div /= 3;
      std::vector<std::pair<Eigen::Index, Cx>> next;
      for (auto& [idx, amp] : partial)
        for (int pat = 0; pat < 4; ++pat)
          if (e(pat, digit) != Cx(0.0, 0.0))
            next.emplace_back(idx * 4 + pat, amp * e(pat, digit));
      partial = std::move(next);
    }
    for (auto& [idx, amp] : partial) out(idx) += amp;
  }
  return out;
}

VecC encode_state(const PurifiedMps& p) { return encode_state(purified_to_dense(p)); }

TwoLevelFactors two_level_decompose(const Mat3C& u) {
  if (!is_unitary(u, 1e-10)) throw InputError("two_level_decompose: input not unitary");
  auto givens = [](Cx a, Cx b) {
    // 2x2 unitary g with g^dag * (a, b) = (r, 0), r real nonnegative.
    Eigen::Matrix2cd g = Eigen::Matrix2cd::Identity();
    double r = std::sqrt(std::norm(a) + std::norm(b));
    if (r < 1e-15) return g;
    g(0, 0) = a / r;
    g(1, 0) = b / r;
    g(0, 1) = -std::conj(b) / r;
    g(1, 1) = std::conj(a) / r;
    return g;
  };
  TwoLevelFactors f;
  f.v01 = Mat3C::Identity();
  f.v02 = Mat3C::Identity();
  f.v12 = Mat3C::Identity();

  Eigen::Matrix2cd g1 = givens(u(0, 0), u(1, 0));
  f.v01.block<2, 2>(0, 0) = g1;
  Mat3C w = f.v01.adjoint() * u;

  Eigen::Matrix2cd g2 = givens(w(0, 0), w(2, 0));
  f.v02(0, 0) = g2(0, 0);
  f.v02(0, 2) = g2(0, 1);
  f.v02(2, 0) = g2(1, 0);
  f.v02(2, 2) = g2(1, 1);
  w = f.v02.adjoint() * w;

  // Column 0 is now (1, 0, 0) up to roundoff; the residue acts on levels 1,2.
  f.v12.block<2, 2>(1, 1) = w.block<2, 2>(1, 1);
  return f;
}

}  // namespace ctxsim
