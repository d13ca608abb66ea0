#include "ctxsim/program.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctxsim/encode.hpp"
#include "ctxsim/linalg.hpp"

namespace ctxsim {

namespace {

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Mat3C two_level_embed(int i, int j, const Eigen::Matrix2cd& v) {
  Mat3C u = Mat3C::Identity();
  u(i, i) = v(0, 0);
  u(i, j) = v(0, 1);
  u(j, i) = v(1, 0);
  u(j, j) = v(1, 1);
  return u;
}

// Local matrix on the target wires only (2 or 4 dimensional).
MatC local_matrix(const Primitive& p) {
  switch (p.kind) {
    case PrimKind::RY: {
      Eigen::Matrix2cd m;
      double c = std::cos(p.theta / 2.0), s = std::sin(p.theta / 2.0);
      m << c, -s, s, c;
      return m;
    }
    case PrimKind::RZ: {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
      m(0, 0) = std::exp(Cx(0.0, -p.theta / 2.0));
      m(1, 1) = std::exp(Cx(0.0, p.theta / 2.0));
      return m;
    }
    case PrimKind::PS: {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
      m(1, 1) = std::exp(Cx(0.0, p.theta));
      return m;
    }
    case PrimKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case PrimKind::CV:
      return p.v;
    case PrimKind::RZENC: {
      Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
      rz(0, 0) = std::exp(Cx(0.0, -p.theta / 2.0));
      rz(1, 1) = std::exp(Cx(0.0, p.theta / 2.0));
      return encode_gate(two_level_embed(p.li, p.lj, rz));
    }
    case PrimKind::VENC:
      return encode_gate(two_level_embed(p.li, p.lj, p.v));
  }
  throw InputError("local_matrix: unknown primitive");
}

void check_wires(const Primitive& p, int n_wires) {
  std::vector<int> seen;
  auto take = [&](int w) {
    if (w < 0 || w >= n_wires) throw InputError("primitive wire out of range");
    for (int s : seen)
      if (s == w) throw InputError("primitive wires collide");
    seen.push_back(w);
  };
  for (int w : p.wires) take(w);
  for (auto& [w, b] : p.controls) {
    if (b != 0 && b != 1) throw InputError("control polarity must be 0 or 1");
    take(w);
  }
  size_t want = (p.kind == PrimKind::RZENC || p.kind == PrimKind::VENC) ? 2 : 1;
  if (p.wires.size() != want) throw InputError("primitive target wire count is wrong");
}

}  // namespace

MatC primitive_matrix(const Primitive& p, int n_wires) {
  check_wires(p, n_wires);
  MatC local = local_matrix(p);
  const int k = static_cast<int>(p.wires.size());
  const Eigen::Index dim = Eigen::Index(1) << n_wires;
  MatC out = MatC::Zero(dim, dim);
  auto bit_of = [&](Eigen::Index idx, int wire) {
    return static_cast<int>((idx >> (n_wires - 1 - wire)) & 1);
  };
  for (Eigen::Index col = 0; col < dim; ++col) {
    bool active = true;
    for (auto& [w, b] : p.controls)
      if (bit_of(col, w) != b) active = false;
    if (!active) {
      out(col, col) = 1.0;
      continue;
    }
    int lc = 0;
    for (int j = 0; j < k; ++j) lc = (lc << 1) | bit_of(col, p.wires[j]);
    for (int lr = 0; lr < (1 << k); ++lr) {
      if (local(lr, lc) == Cx(0.0, 0.0)) continue;
      Eigen::Index row = col;
      for (int j = 0; j < k; ++j) {
        Eigen::Index mask = Eigen::Index(1) << (n_wires - 1 - p.wires[j]);
        if ((lr >> (k - 1 - j)) & 1)
          row |= mask;
        else
          row &= ~mask;
      }
      out(row, col) += local(lr, lc);
    }
  }
  return out;
}

MatC program_matrix(const GateProgram& g) {
  const Eigen::Index dim = Eigen::Index(1) << g.n_wires;
  MatC u = MatC::Identity(dim, dim);
  for (const Primitive& p : g.prims) u = primitive_matrix(p, g.n_wires) * u;
  return u;
}

int multi_qubit_count(const GateProgram& g) {
  int n = 0;
  for (const Primitive& p : g.prims)
    if (p.wires.size() + p.controls.size() > 1) ++n;
  return n;
}

std::string program_to_text(const GateProgram& g) {
  std::ostringstream os;
  os << "program wires " << g.n_wires << "\n";
  for (const Primitive& p : g.prims) {
    switch (p.kind) {
      case PrimKind::RY: os << "RY"; break;
      case PrimKind::RZ: os << "RZ"; break;
      case PrimKind::PS: os << "PS"; break;
      case PrimKind::X: os << "X"; break;
      case PrimKind::CV: os << "CV"; break;
      case PrimKind::RZENC: os << "RZENC"; break;
      case PrimKind::VENC: os << "VENC"; break;
    }
    os << " ctrl " << p.controls.size();
    for (auto& [w, b] : p.controls) os << " " << w << " " << b;
    os << " on";
    for (int w : p.wires) os << " " << w;
    if (p.kind == PrimKind::RZENC || p.kind == PrimKind::VENC)
      os << " levels " << p.li << " " << p.lj;
    if (p.kind == PrimKind::RY || p.kind == PrimKind::RZ || p.kind == PrimKind::PS ||
        p.kind == PrimKind::RZENC)
      os << " " << g17(p.theta);
    if (p.kind == PrimKind::CV || p.kind == PrimKind::VENC)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          os << " " << g17(p.v(r, c).real()) << " " << g17(p.v(r, c).imag());
    os << "\n";
  }
  return os.str();
}

GateProgram program_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  GateProgram g;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!header) {
      std::string wires_kw;
      if (tok != "program" || !(ls >> wires_kw >> g.n_wires) || wires_kw != "wires")
        throw InputError("program text: bad header line");
      header = true;
      continue;
    }
    Primitive p;
    if (tok == "RY") p.kind = PrimKind::RY;
    else if (tok == "RZ") p.kind = PrimKind::RZ;
    else if (tok == "PS") p.kind = PrimKind::PS;
    else if (tok == "X") p.kind = PrimKind::X;
    else if (tok == "CV") p.kind = PrimKind::CV;
    else if (tok == "RZENC") p.kind = PrimKind::RZENC;
    else if (tok == "VENC") p.kind = PrimKind::VENC;
    else throw InputError("program text: unknown primitive '" + tok + "'");
    std::string kw;
    size_t nc = 0;
    if (!(ls >> kw >> nc) || kw != "ctrl") throw InputError("program text: expected ctrl count");
    for (size_t i = 0; i < nc; ++i) {
      int w, b;
      if (!(ls >> w >> b)) throw InputError("program text: truncated control list");
      p.controls.emplace_back(w, b);
    }
    if (!(ls >> kw) || kw != "on") throw InputError("program text: expected target list");
    int n_targets = (p.kind == PrimKind::RZENC || p.kind == PrimKind::VENC) ? 2 : 1;
    for (int i = 0; i < n_targets; ++i) {
      int w;
      if (!(ls >> w)) throw InputError("program text: truncated target list");
      p.wires.push_back(w);
    }
    if (p.kind == PrimKind::RZENC || p.kind == PrimKind::VENC) {
      if (!(ls >> kw >> p.li >> p.lj) || kw != "levels")
        throw InputError("program text: expected levels");
      if (p.li < 0 || p.li > 2 || p.lj < 0 || p.lj > 2 || p.li >= p.lj)
        throw InputError("program text: bad level pair");
    }
    if (p.kind == PrimKind::RY || p.kind == PrimKind::RZ || p.kind == PrimKind::PS ||
        p.kind == PrimKind::RZENC) {
      if (!(ls >> p.theta)) throw InputError("program text: missing angle");
    }
    if (p.kind == PrimKind::CV || p.kind == PrimKind::VENC) {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          double re, im;
          if (!(ls >> re >> im)) throw InputError("program text: missing matrix entries");
          p.v(r, c) = Cx(re, im);
        }
    }
    std::string extra;
    if (ls >> extra) throw InputError("program text: trailing tokens on line");
    g.prims.push_back(p);
  }
  if (!header) throw InputError("program text: missing header");
  return g;
}

void save_program(const std::string& path, const GateProgram& g) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for writing: " + path);
  f << program_to_text(g);
}

GateProgram load_program(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return program_from_text(ss.str());
}

}  // namespace ctxsim
