#include "ctxsim/hamiltonian.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace ctxsim {

const std::vector<Witness>& witness_table() {
  static const std::vector<Witness> table = {
      {1, -6.0, {-6, 0, 2, 3, 3, -2, 3, -1, -1, 1}, -6.32747},
      {2, -6.0, {-4, 2, 2, 2, 2, -4, 1, -1, -1, 3}, -6.33712},
      {3, -3.0, {-3, 1, 1, 1, 1, -1, 1, 0, -1, 1}, -3.20711},
      {4, -4.0, {-2, -2, -2, 1, -1, -2, 1, 0, 2, 1}, -4.14623},
      {5, -8.0, {-11, 1, 5, 2, 2, -1, 4, -1, -2, 1}, -8.12123},
  };
  return table;
}

const Witness& witness_by_id(int id) {
  for (const Witness& w : witness_table())
    if (w.id == id) return w;
  throw InputError("unknown witness id " + std::to_string(id));
}

std::array<Mat3R, 3> skew_basis() {
  std::array<Mat3R, 3> s;
  s[0] = Mat3R::Zero();
  s[0](0, 1) = 1;
  s[0](1, 0) = -1;
  s[1] = Mat3R::Zero();
  s[1](0, 2) = 1;
  s[1](2, 0) = -1;
  s[2] = Mat3R::Zero();
  s[2](1, 2) = 1;
  s[2](2, 1) = -1;
  return s;
}

Mat3R skew_rotation(const Eigen::Vector3d& w) {
  const auto s = skew_basis();
  Mat3R k = w(0) * s[0] + w(1) * s[1] + w(2) * s[2];
  // K^3 = -theta^2 K for 3x3 skew K, so the exponential closes at K^2.
  double theta2 = w.squaredNorm();
  double theta = std::sqrt(theta2);
  double c1, c2;
  if (theta < 1e-4) {
    c1 = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    c2 = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    c1 = std::sin(theta) / theta;
    c2 = (1.0 - std::cos(theta)) / theta2;
  }
  return Mat3R::Identity() + c1 * k + c2 * (k * k);
}

Mat3R observable(const Eigen::Vector3d& w, const Eigen::Vector3d& lambda) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(std::abs(lambda(i)) - 1.0) > 1e-14)
      throw InputError("observable: signature entries must be +-1");
  if (std::abs(lambda.sum()) > 2.5)
    throw InputError("observable: signature must have mixed signs");
  Mat3R r = skew_rotation(w);
  return r * lambda.asDiagonal() * r.transpose();
}

namespace {

MatC three_site(const Mat3R& a, const Mat3R& b, const Mat3R& c) {
  Eigen::Matrix3cd ac = a.cast<Cx>(), bc = b.cast<Cx>(), cc = c.cast<Cx>();
  return Eigen::kroneckerProduct(ac, Eigen::kroneckerProduct(bc, cc).eval())
      .eval();
}

MatC recombine(const LocalTerm& t) {
  const Mat3R id = Mat3R::Identity();
  MatC h = MatC::Zero(27, 27);
  for (const Mat3R& o : t.onsite) h += three_site(o, id, id);
  for (const auto& [a, b] : t.nn) h += three_site(a, b, id);
  for (const auto& [a, b] : t.nnn) h += three_site(a, id, b);
  return h;
}

}  // namespace

LocalTerm local_term(const Witness& w, const ObservableParams& p) {
  const Mat3R sx = p.sigma_x();
  const Mat3R sy = p.sigma_y();
  const std::array<Mat3R, 2> s = {sx, sy};
  LocalTerm t;
  t.onsite = {w.couplings[0] * sx, w.couplings[1] * sy};
  // couplings[2..5]: distance-1 pairs (x,x), (x,y), (y,x), (y,y);
  // couplings[6..9]: the same order at distance 2.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      t.nn.emplace_back(w.couplings[2 + 2 * a + b] * s[a], s[b]);
      t.nnn.emplace_back(w.couplings[6 + 2 * a + b] * s[a], s[b]);
    }
  t.h3 = recombine(t);
  return t;
}

LocalTerm local_term_from_lists(std::vector<Mat3R> onsite,
                                std::vector<std::pair<Mat3R, Mat3R>> nn,
                                std::vector<std::pair<Mat3R, Mat3R>> nnn) {
  LocalTerm t;
  t.onsite = std::move(onsite);
  t.nn = std::move(nn);
  t.nnn = std::move(nnn);
  t.h3 = recombine(t);
  return t;
}

Mpo to_mpo(const LocalTerm& term) {
  MatC check = recombine(term);
  double scale = std::max(1.0, check.norm());
  if ((check - term.h3).norm() > 1e-12 * scale)
    throw InputError("to_mpo: operator lists do not recombine to h3");

  // Carry states are keyed by the first factor of a pair so that distance-1
  // and distance-2 terms starting with the same operator share one state.
  std::vector<Mat3R> keys1, keys2;
  auto find_key = [](std::vector<Mat3R>& keys, const Mat3R& f) {
    for (size_t i = 0; i < keys.size(); ++i)
      if ((keys[i] - f).norm() < 1e-14) return i;
    keys.push_back(f);
    return keys.size() - 1;
  };
  // Coupling is folded into the first factor; key on its normalized direction
  // so x-type terms share a carry regardless of coefficient.
  auto direction = [](const Mat3R& f) {
    double n = f.norm();
    return n < 1e-14 ? f : Mat3R((1.0 / n) * f);
  };
  // Sign convention: keep the first nonzero entry positive.
  auto canonical = [&](const Mat3R& f) {
    Mat3R d = direction(f);
    for (int i = 0; i < 9; ++i) {
      double v = d(i / 3, i % 3);
      if (std::abs(v) > 1e-14) return Mat3R(v < 0 ? -d : d);
    }
    return d;
  };

  struct Pair {
    size_t key;
    double coeff;
    Mat3R second;
  };
  std::vector<Pair> p1, p2;
  for (const auto& [a, b] : term.nn) {
    if (a.norm() < 1e-14 || b.norm() < 1e-14) continue;
    Mat3R dir = canonical(a);
    double coeff = dir.cwiseProduct(a).sum() / dir.squaredNorm();
    p1.push_back({find_key(keys1, dir), coeff, b});
  }
  for (const auto& [a, b] : term.nnn) {
    if (a.norm() < 1e-14 || b.norm() < 1e-14) continue;
    Mat3R dir = canonical(a);
    size_t k1 = find_key(keys1, dir);
    double coeff = dir.cwiseProduct(a).sum() / dir.squaredNorm();
    p2.push_back({k1, coeff, b});
  }
  // Stage-2 states exist only for keys that appear in distance-2 terms.
  std::vector<size_t> stage2_of(keys1.size(), size_t(-1));
  for (const Pair& p : p2)
    if (stage2_of[p.key] == size_t(-1))
      stage2_of[p.key] = find_key(keys2, keys1[p.key]);

  const int n1 = static_cast<int>(keys1.size());
  const int n2 = static_cast<int>(keys2.size());
  Mpo mpo;
  mpo.chi = 2 + n1 + n2;
  const int fin = mpo.chi - 1;
  mpo.w.assign(mpo.chi, std::vector<Mat3C>(mpo.chi, Mat3C::Zero()));

  auto at1 = [&](size_t k) { return 1 + static_cast<int>(k); };
  auto at2 = [&](size_t k) { return 1 + n1 + static_cast<int>(k); };

  mpo.w[0][0] = Mat3C::Identity();
  mpo.w[fin][fin] = Mat3C::Identity();
  for (const Mat3R& o : term.onsite) mpo.w[0][fin] += o.cast<Cx>();
  for (int k = 0; k < n1; ++k) mpo.w[0][at1(k)] = keys1[k].cast<Cx>();
  for (const Pair& p : p1)
    mpo.w[at1(p.key)][fin] += p.coeff * p.second.cast<Cx>();
  for (size_t k = 0; k < stage2_of.size(); ++k)
    if (stage2_of[k] != size_t(-1))
      mpo.w[at1(k)][at2(stage2_of[k])] = Mat3C::Identity();
  for (const Pair& p : p2)
    mpo.w[at2(stage2_of[p.key])][fin] += p.coeff * p.second.cast<Cx>();
  return mpo;
}

}  // namespace ctxsim
