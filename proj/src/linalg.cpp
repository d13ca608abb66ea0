#include "ctxsim/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace ctxsim {

MatC kron(const MatC& a, const MatC& b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_unitary(const MatC& m, double tol) {
  if (m.rows() != m.cols()) return false;
  MatC g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return g.norm() < tol;
}

MatC random_unitary(int n, Rng& rng) {
  MatC g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cx();
  Eigen::HouseholderQR<MatC> qr(g);
  MatC q = qr.householderQ();
  MatC r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the factorization is unique (R diagonal > 0)
  for (int j = 0; j < n; ++j) {
    Cx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Cx phase_align(const MatC& got, const MatC& want) {
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < want.rows(); ++i)
    for (Eigen::Index j = 0; j < want.cols(); ++j)
      if (std::abs(want(i, j)) > best) {
        best = std::abs(want(i, j));
        bi = i;
        bj = j;
      }
  Cx g = got(bi, bj);
  if (std::abs(g) < 1e-300) return Cx(1.0, 0.0);
  Cx z = want(bi, bj) / g;
  return z / std::abs(z);
}

double phase_distance(const MatC& got, const MatC& want) {
  return (phase_align(got, want) * got - want).norm();
}

double trace_distance(const MatC& a, const MatC& b) {
  Eigen::SelfAdjointEigenSolver<MatC> es(hermitize(a - b));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

LanczosResult lanczos_lowest(const std::function<VecC(const VecC&)>& matvec,
                             int dim, const VecC& guess, double tol,
                             int max_matvecs) {
  LanczosResult out;
  if (dim == 1) {
    VecC e(1);
    e(0) = Cx(1, 0);
    VecC w = matvec(e);
    out.value = w(0).real();
    out.vector = e;
    out.matvecs = 1;
    out.converged = true;
    return out;
  }

  VecC v = guess;
  if (v.size() != dim || v.norm() < 1e-14) {
    v = VecC::Zero(dim);
    v(0) = 1.0;
  }
  v.normalize();

  const int m = std::min(dim, 40);
  std::vector<VecC> basis;
  Eigen::VectorXd alpha(m), beta(m);

  while (out.matvecs < max_matvecs) {
    basis.clear();
    basis.push_back(v);
    int k = 0;
    for (; k < m; ++k) {
      VecC w = matvec(basis[k]);
      ++out.matvecs;
      alpha(k) = std::real(basis[k].dot(w));
      w -= alpha(k) * basis[k];
      if (k > 0) w -= beta(k - 1) * basis[k - 1];
      for (const VecC& b : basis) w -= b.dot(w) * b;  // full reorthogonalization
      beta(k) = w.norm();
      if (k + 1 == m || beta(k) < 1e-13) {
        ++k;
        break;
      }
      basis.push_back(w / beta(k));
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXd y = es.eigenvectors().col(0);
    double theta = es.eigenvalues()(0);

    VecC ritz = VecC::Zero(dim);
    for (int i = 0; i < k; ++i) ritz += y(i) * basis[i];
    ritz.normalize();
    VecC r = matvec(ritz);
    ++out.matvecs;
    double res = (r - theta * ritz).norm();

    out.value = theta;
    out.vector = ritz;
    out.residual = res;
    if (res < tol * std::max(1.0, std::abs(theta))) {
      out.converged = true;
      return out;
    }
    v = ritz;
  }
  return out;
}

}  // namespace ctxsim
