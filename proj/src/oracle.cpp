#include "ctxsim/oracle.hpp"

#include <Eigen/Eigenvalues>

namespace ctxsim {
namespace oracle {

MatC dense_rho3(const std::array<MatC, 3>& a, const MatC& l, const MatC& r) {
  const int d = static_cast<int>(a[0].rows());
  if (d > kMaxBond) throw InputError("dense_rho3: bond dimension above 9");
  // Products M[s1 s2 s3] by explicit loops.
  std::vector<MatC> m(27);
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 3; ++s2)
      for (int s3 = 0; s3 < 3; ++s3) {
        MatC prod = MatC::Zero(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            Cx acc(0.0, 0.0);
            for (int p = 0; p < d; ++p)
              for (int q = 0; q < d; ++q)
                acc += a[s1](i, p) * a[s2](p, q) * a[s3](q, j);
            prod(i, j) = acc;
          }
        m[(s1 * 3 + s2) * 3 + s3] = prod;
      }
  MatC rho = MatC::Zero(27, 27);
  for (int s = 0; s < 27; ++s)
    for (int t = 0; t < 27; ++t) {
      // Tr[l M_s r M_t^dag] with every contraction spelled out.
      Cx acc(0.0, 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
              acc += l(i, j) * m[s](j, p) * r(p, q) * std::conj(m[t](i, q));
      rho(s, t) = acc;
    }
  return rho;
}

namespace {

// y += H x for the chain of three-site terms.
void chain_apply(const MatC& h3, int n, bool periodic, const std::vector<Cx>& x,
                 std::vector<Cx>& y) {
  const long dim = static_cast<long>(x.size());
  long stride[9];  // stride of each site digit, site 0 most significant
  stride[n - 1] = 1;
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * 3;
  const int last = periodic ? n : n - 2;
  for (int site = 0; site < last; ++site) {
    int p0 = site, p1 = (site + 1) % n, p2 = (site + 2) % n;
    for (long idx = 0; idx < dim; ++idx) {
      int s0 = static_cast<int>(idx / stride[p0]) % 3;
      int s1 = static_cast<int>(idx / stride[p1]) % 3;
      int s2 = static_cast<int>(idx / stride[p2]) % 3;
      Cx amp = x[idx];
      if (amp == Cx(0.0, 0.0)) continue;
      int scol = (s0 * 3 + s1) * 3 + s2;
      long base = idx - s0 * stride[p0] - s1 * stride[p1] - s2 * stride[p2];
      for (int t0 = 0; t0 < 3; ++t0)
        for (int t1 = 0; t1 < 3; ++t1)
          for (int t2 = 0; t2 < 3; ++t2) {
            Cx hv = h3((t0 * 3 + t1) * 3 + t2, scol);
            if (hv == Cx(0.0, 0.0)) continue;
            y[base + t0 * stride[p0] + t1 * stride[p1] + t2 * stride[p2]] += hv * amp;
          }
    }
  }
}

}  // namespace

double exact_diag(const MatC& h3, int n_sites, bool periodic) {
  if (h3.rows() != 27 || h3.cols() != 27) throw InputError("exact_diag: h3 must be 27x27");
  if ((h3 - h3.adjoint()).norm() > 1e-10 * std::max(1.0, h3.norm()))
    throw InputError("exact_diag: h3 not Hermitian");
  if (n_sites < 3 || n_sites > 8) throw InputError("exact_diag: 3 <= n_sites <= 8");
  long dim = 1;
  for (int i = 0; i < n_sites; ++i) dim *= 3;
  if (n_sites <= 6) {
    MatC h = MatC::Zero(dim, dim);
    std::vector<Cx> x(dim, Cx(0.0, 0.0)), y(dim);
    for (long c = 0; c < dim; ++c) {
      x[c] = 1.0;
      std::fill(y.begin(), y.end(), Cx(0.0, 0.0));
      chain_apply(h3, n_sites, periodic, x, y);
      for (long r = 0; r < dim; ++r) h(r, c) = y[r];
      x[c] = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<MatC> es(h);
    return es.eigenvalues()(0) / n_sites;
  }
  // Self-contained Lanczos with full reorthogonalization.
  std::vector<std::vector<Cx>> basis;
  std::vector<double> alpha, beta;
  std::vector<Cx> v(dim), w(dim);
  std::uint64_t s = 88172645463325252ull;
  auto next = [&s] {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
  };
  for (long i = 0; i < dim; ++i) v[i] = Cx(next(), next());
  auto nrm = [&](const std::vector<Cx>& u) {
    double t = 0.0;
    for (const Cx& z : u) t += std::norm(z);
    return std::sqrt(t);
  };
  double nv = nrm(v);
  for (auto& z : v) z /= nv;
  double best = 0.0, prev = 1e300;
  const int max_steps = 240;
  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    std::fill(w.begin(), w.end(), Cx(0.0, 0.0));
    chain_apply(h3, n_sites, periodic, v, w);
    double a = 0.0;
    for (long i = 0; i < dim; ++i) a += std::real(std::conj(v[i]) * w[i]);
    alpha.push_back(a);
    for (const auto& b : basis) {
      Cx ov(0.0, 0.0);
      for (long i = 0; i < dim; ++i) ov += std::conj(b[i]) * w[i];
      for (long i = 0; i < dim; ++i) w[i] -= ov * b[i];
    }
    double nb = nrm(w);
    // Tridiagonal lowest eigenvalue so far.
    {
      const int k = static_cast<int>(alpha.size());
      MatR tri = MatR::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<MatR> es(tri);
      best = es.eigenvalues()(0);
      if (std::abs(best - prev) < 1e-12 * std::max(1.0, std::abs(best)) || nb < 1e-12)
        return best / n_sites;
      prev = best;
    }
    beta.push_back(nb);
    for (auto& z : w) z /= nb;
    v = w;
  }
  return best / n_sites;
}

double classical_minimum(const Witness& wit, int max_period) {
  if (max_period < 1 || max_period > 8) throw InputError("classical_minimum: 1 <= period <= 8");
  const auto& j = wit.couplings;
  double best = 1e300;
  for (int p = 1; p <= max_period; ++p) {
    long combos = 1L << (2 * p);
    for (long bits = 0; bits < combos; ++bits) {
      double x[8], y[8];
      for (int i = 0; i < p; ++i) {
        x[i] = ((bits >> (2 * i)) & 1) ? 1.0 : -1.0;
        y[i] = ((bits >> (2 * i + 1)) & 1) ? 1.0 : -1.0;
      }
      double e = 0.0;
      for (int i = 0; i < p; ++i) {
        int i1 = (i + 1) % p, i2 = (i + 2) % p;
        e += j[0] * x[i] + j[1] * y[i];
        e += j[2] * x[i] * x[i1] + j[3] * x[i] * y[i1] + j[4] * y[i] * x[i1] +
             j[5] * y[i] * y[i1];
        e += j[6] * x[i] * x[i2] + j[7] * x[i] * y[i2] + j[8] * y[i] * x[i2] +
             j[9] * y[i] * y[i2];
      }
      best = std::min(best, e / p);
    }
  }
  return best;
}

MatC series_expm_i(const MatC& h) {
  const Eigen::Index n = h.rows();
  MatC a = Cx(0.0, 1.0) * h;
  int squarings = 0;
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.25) {
    a /= 2.0;
    nrm /= 2.0;
    ++squarings;
  }
  MatC result = MatC::Identity(n, n);
  MatC term = MatC::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
    if (term.norm() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

VecC qutrit_simulate(const VecR& params, int layers, int n_sites) {
  // Rebuilds the 81-element Hermitian basis locally.
  std::vector<MatC> basis;
  basis.push_back(MatC::Identity(9, 9));
  for (int i = 0; i < 9; ++i)
    for (int jj = i + 1; jj < 9; ++jj) {
      MatC m = MatC::Zero(9, 9);
      m(i, jj) = 1.0;
      m(jj, i) = 1.0;
      basis.push_back(m);
    }
  for (int i = 0; i < 9; ++i)
    for (int jj = i + 1; jj < 9; ++jj) {
      MatC m = MatC::Zero(9, 9);
      m(i, jj) = Cx(0.0, -1.0);
      m(jj, i) = Cx(0.0, 1.0);
      basis.push_back(m);
    }
  for (int k = 1; k < 9; ++k) {
    MatC m = MatC::Zero(9, 9);
    double norm = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int i = 0; i < k; ++i) m(i, i) = norm;
    m(k, k) = -k * norm;
    basis.push_back(m);
  }
  const int per_gate = static_cast<int>(basis.size());
  if (params.size() != static_cast<Eigen::Index>(per_gate) * layers * (n_sites - 1))
    throw InputError("qutrit_simulate: parameter count mismatch");

  long dim = 1;
  for (int i = 0; i < n_sites; ++i) dim *= 3;
  std::vector<Cx> psi(dim, Cx(0.0, 0.0)), out(dim);
  psi[0] = 1.0;
  long stride[9];
  stride[n_sites - 1] = 1;
  for (int i = n_sites - 2; i >= 0; --i) stride[i] = stride[i + 1] * 3;

  int g = 0;
  for (int k = 0; k < layers; ++k)
    for (int site = 0; site + 1 < n_sites; ++site, ++g) {
      MatC h = MatC::Zero(9, 9);
      for (int j = 0; j < per_gate; ++j)
        h += params[g * per_gate + j] * basis[j];
      MatC u = series_expm_i(h);
      std::fill(out.begin(), out.end(), Cx(0.0, 0.0));
      for (long idx = 0; idx < dim; ++idx) {
        Cx amp = psi[idx];
        if (amp == Cx(0.0, 0.0)) continue;
        int s0 = static_cast<int>(idx / stride[site]) % 3;
        int s1 = static_cast<int>(idx / stride[site + 1]) % 3;
        long base = idx - s0 * stride[site] - s1 * stride[site + 1];
        for (int t0 = 0; t0 < 3; ++t0)
          for (int t1 = 0; t1 < 3; ++t1)
            out[base + t0 * stride[site] + t1 * stride[site + 1]] +=
                u(t0 * 3 + t1, s0 * 3 + s1) * amp;
      }
      psi.swap(out);
    }
  VecC res(dim);
  for (long i = 0; i < dim; ++i) res(i) = psi[i];
  return res;
}

}  // namespace oracle
}  // namespace ctxsim
