#include "ctxsim/umps.hpp"

#include <Eigen/Eigenvalues>

#include "ctxsim/linalg.hpp"

namespace ctxsim {

namespace {

// X -> sum_s A^s X (A^s)^dag
MatC map_right(const std::array<MatC, 3>& A, const MatC& x) {
  MatC y = MatC::Zero(x.rows(), x.cols());
  for (int s = 0; s < 3; ++s) y += A[s] * x * A[s].adjoint();
  return y;
}

// X -> sum_s (A^s)^dag X A^s
MatC map_left(const std::array<MatC, 3>& A, const MatC& x) {
  MatC y = MatC::Zero(x.rows(), x.cols());
  for (int s = 0; s < 3; ++s) y += A[s].adjoint() * x * A[s];
  return y;
}

// Hermitian PSD projection of an eigenvector-shaped matrix: fix the global
// phase so the trace is real positive, then clip small negative eigenvalues.
MatC to_density(const MatC& m_in) {
  MatC m = m_in;
  Cx tr = m.trace();
  if (std::abs(tr) > 1e-14) m *= std::conj(tr) / std::abs(tr);
  m = hermitize(m);
  Eigen::SelfAdjointEigenSolver<MatC> es(m);
  VecR ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -1e-12 * std::max(1.0, top))
    m = -m, ev = -ev.reverse().eval();  // dominant eigenvector came out negated
  es.compute(m);
  ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

struct Leading {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  MatC l, r;
};

Leading leading_dense(const UmpsState& s) {
  MatC t = transfer_matrix(s);
  Eigen::ComplexEigenSolver<MatC> es(t);
  VecC vals = es.eigenvalues();
  Eigen::Index i1 = 0;
  vals.cwiseAbs().maxCoeff(&i1);
  Leading out;
  out.lambda1 = std::abs(vals(i1));
  out.lambda2 = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (i != i1) out.lambda2 = std::max(out.lambda2, std::abs(vals(i)));
  const int d = s.bond;
  out.r = to_density(Eigen::Map<const MatC>(es.eigenvectors().col(i1).data(), d, d));

  Eigen::ComplexEigenSolver<MatC> esl(MatC(t.adjoint()));
  VecC lvals = esl.eigenvalues();
  Eigen::Index j1 = 0;
  lvals.cwiseAbs().maxCoeff(&j1);
  out.l = to_density(Eigen::Map<const MatC>(esl.eigenvectors().col(j1).data(), d, d));
  return out;
}

Leading leading_iterative(const UmpsState& s, double tol, int max_iters) {
  const int d = s.bond;
  Leading out;
  MatC r = MatC::Identity(d, d) / double(d);
  MatC l = r;
  double lam_r = 1.0, lam_l = 1.0, res_r = 1.0, res_l = 1.0;
  for (int it = 0; it < max_iters; ++it) {
    MatC rn = hermitize(map_right(s.A, r));
    lam_r = rn.norm();
    res_r = (rn / lam_r - r).norm();
    r = rn / lam_r;
    MatC ln = hermitize(map_left(s.A, l));
    lam_l = ln.norm();
    res_l = (ln / lam_l - l).norm();
    l = ln / lam_l;
    if (res_r < tol && res_l < tol) break;
  }
  if (res_r >= tol || res_l >= tol)
    throw ConvergenceError("fixed_points: power iteration stalled, residual " +
                           std::to_string(std::max(res_r, res_l)));
  out.lambda1 = 0.5 * (lam_r + lam_l);
  // one deflated step estimates the subleading magnitude for the gap flag
  MatC x = MatC::Zero(d, d);
  x(0, 0) = 1.0;
  x -= r * (r.adjoint() * x).trace() / r.squaredNorm();
  for (int it = 0; it < 50; ++it) {
    x = hermitize(map_right(s.A, x));
    x -= r * (r.adjoint() * x).trace() / r.squaredNorm();
    double n = x.norm();
    if (n < 1e-300) break;
    out.lambda2 = n;
    x /= n;
  }
  out.r = to_density(r);
  out.l = to_density(l);
  return out;
}

Leading leading(const UmpsState& s) {
  if (s.bond <= 8) return leading_dense(s);
  return leading_iterative(s, 1e-12, 10000);
}

}  // namespace

MatC dominant_density(const std::array<MatC, 3>& A, bool left_action) {
  const int d = static_cast<int>(A[0].rows());
  MatC m;
  if (d <= 8) {
    MatC t = MatC::Zero(d * d, d * d);
    for (int s = 0; s < 3; ++s)
      t += left_action ? kron(A[s].transpose(), A[s].adjoint())
                       : kron(A[s].conjugate(), A[s]);
    Eigen::ComplexEigenSolver<MatC> es(t);
    Eigen::Index i1 = 0;
    es.eigenvalues().cwiseAbs().maxCoeff(&i1);
    m = to_density(Eigen::Map<const MatC>(es.eigenvectors().col(i1).data(), d, d));
  } else {
    MatC x = MatC::Identity(d, d) / double(d);
    double res = 1.0;
    for (int it = 0; it < 10000 && res > 1e-13; ++it) {
      MatC xn = hermitize(left_action ? map_left(A, x) : map_right(A, x));
      xn /= xn.norm();
      res = (xn - x).norm();
      x = xn;
    }
    if (res > 1e-11)
      throw ConvergenceError("dominant_density: power iteration stalled, residual " +
                             std::to_string(res));
    m = to_density(x);
  }
  return m / m.trace().real();
}

UmpsState random_umps(int bond, Rng& rng) {
  UmpsState s;
  s.bond = bond;
  for (int k = 0; k < 3; ++k) {
    s.A[k] = MatC(bond, bond);
    for (int i = 0; i < bond; ++i)
      for (int j = 0; j < bond; ++j) s.A[k](i, j) = rng.gaussian_cx();
  }
  normalize(s);
  return s;
}

MatC transfer_matrix(const UmpsState& s) {
  const int d = s.bond;
  MatC t = MatC::Zero(d * d, d * d);
  for (int k = 0; k < 3; ++k) t += kron(s.A[k].conjugate(), s.A[k]);
  return t;
}

void normalize(UmpsState& s) {
  Leading lead = leading(s);
  double scale = 1.0 / std::sqrt(lead.lambda1);
  for (int k = 0; k < 3; ++k) s.A[k] *= scale;
  s.degenerate = (lead.lambda1 - lead.lambda2) < 1e-10 * lead.lambda1;
}

FixedPoints fixed_points(const UmpsState& s) {
  Leading lead = leading(s);
  FixedPoints fp{lead.l, lead.r};
  Cx overlap = (fp.l * fp.r).trace();
  double norm = std::abs(overlap);
  fp.pairing = norm / (fp.l.norm() * fp.r.norm());
  if (norm < 1e-300)
    throw ConvergenceError("fixed_points: orthogonal fixed points, Tr(lr) = 0");
  fp.lambda_pair =
      std::abs((fp.l * map_right(s.A, fp.r)).trace()) / (norm * lead.lambda1);
  fp.l /= std::sqrt(norm);
  fp.r /= std::sqrt(norm);
  return fp;
}

MatC rho3(const UmpsState& s, const FixedPoints& fp) {
  std::array<MatC, 27> m;
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 3; ++s2)
      for (int s3 = 0; s3 < 3; ++s3)
        m[9 * s1 + 3 * s2 + s3] = s.A[s1] * s.A[s2] * s.A[s3];
  MatC rho(27, 27);
  std::array<MatC, 27> lmr;
  for (int i = 0; i < 27; ++i) lmr[i] = fp.l * m[i] * fp.r;
  for (int i = 0; i < 27; ++i)
    for (int j = 0; j < 27; ++j)
      rho(i, j) = (lmr[i].array() * m[j].array().conjugate()).sum();
  return hermitize(rho);
}

double energy_density(const UmpsState& s, const FixedPoints& fp,
                      const LocalTerm& term) {
  // Tr over the conjugated factor is formed before hermitize can hide an
  // imaginary part, so compute the raw contraction here.
  std::array<MatC, 27> m;
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 3; ++s2)
      for (int s3 = 0; s3 < 3; ++s3)
        m[9 * s1 + 3 * s2 + s3] = s.A[s1] * s.A[s2] * s.A[s3];
  Cx e = 0;
  for (int i = 0; i < 27; ++i) {
    MatC lmr = fp.l * m[i] * fp.r;
    for (int j = 0; j < 27; ++j)
      e += term.h3(j, i) * (lmr.array() * m[j].array().conjugate()).sum();
  }
  if (std::abs(e.imag()) >= 1e-10)
    throw ConvergenceError("energy_density: imaginary part " +
                           std::to_string(e.imag()));
  return e.real();
}

double energy_density(const UmpsState& s, const LocalTerm& term) {
  return energy_density(s, fixed_points(s), term);
}

}  // namespace ctxsim
