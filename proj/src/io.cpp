#include "ctxsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ctxsim {

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void write_matrix_block(std::ostream& os, const MatC& m) {
  os << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << format_g17(m(r, c).real()) << " " << format_g17(m(r, c).imag());
    }
    os << "\n";
  }
}

MatC read_matrix_block(std::istream& is) {
  Eigen::Index rows, cols;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0)
    throw InputError("matrix block: bad dimensions");
  MatC m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re, im;
      if (!(is >> re >> im)) throw InputError("matrix block: truncated data");
      m(r, c) = Cx(re, im);
    }
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for reading: " + path);
  return f;
}

void expect(std::istream& is, const std::string& want) {
  std::string tok;
  if (!(is >> tok) || tok != want)
    throw InputError("file format: expected token '" + want + "'");
}

}  // namespace

void save_umps(const std::string& path, const UmpsState& s) {
  auto f = open_out(path);
  f << "umps 1\n";
  f << "bond " << s.bond << "\n";
  f << "witness " << s.witness_id << "\n";
  f << "energy " << format_g17(s.energy) << "\n";
  f << "w";
  for (int i = 0; i < 6; ++i) f << " " << format_g17(s.w_params[i]);
  f << "\n";
  for (int sig = 0; sig < 3; ++sig) write_matrix_block(f, s.A[sig]);
}

UmpsState load_umps(const std::string& path) {
  auto f = open_in(path);
  expect(f, "umps");
  expect(f, "1");
  UmpsState s;
  expect(f, "bond");
  if (!(f >> s.bond)) throw InputError("umps file: bad bond");
  expect(f, "witness");
  if (!(f >> s.witness_id)) throw InputError("umps file: bad witness");
  expect(f, "energy");
  if (!(f >> s.energy)) throw InputError("umps file: bad energy");
  expect(f, "w");
  for (int i = 0; i < 6; ++i)
    if (!(f >> s.w_params[i])) throw InputError("umps file: bad w");
  for (int sig = 0; sig < 3; ++sig) {
    s.A[sig] = read_matrix_block(f);
    if (s.A[sig].rows() != s.bond || s.A[sig].cols() != s.bond)
      throw InputError("umps file: tensor shape mismatch");
  }
  return s;
}

void save_purified(const std::string& path, const PurifiedMps& p) {
  auto f = open_out(path);
  f << "purified 1\n";
  f << "bond " << p.bond << "\n";
  f << "witness " << p.witness_id << "\n";
  f << "energy " << format_g17(p.energy) << "\n";
  f << "w";
  for (int i = 0; i < 6; ++i) f << " " << format_g17(p.w_params[i]);
  f << "\n";
  f << "sites " << p.sites.size() << "\n";
  for (const SiteTensor& t : p.sites) {
    f << "site " << t.chi_l << " " << t.chi_r << "\n";
    for (int sig = 0; sig < 3; ++sig) write_matrix_block(f, t.m[sig]);
  }
}

PurifiedMps load_purified(const std::string& path) {
  auto f = open_in(path);
  expect(f, "purified");
  expect(f, "1");
  PurifiedMps p;
  expect(f, "bond");
  if (!(f >> p.bond)) throw InputError("purified file: bad bond");
  expect(f, "witness");
  if (!(f >> p.witness_id)) throw InputError("purified file: bad witness");
  expect(f, "energy");
  if (!(f >> p.energy)) throw InputError("purified file: bad energy");
  expect(f, "w");
  for (int i = 0; i < 6; ++i)
    if (!(f >> p.w_params[i])) throw InputError("purified file: bad w");
  expect(f, "sites");
  std::size_t n = 0;
  if (!(f >> n)) throw InputError("purified file: bad site count");
  for (std::size_t i = 0; i < n; ++i) {
    SiteTensor t;
    expect(f, "site");
    if (!(f >> t.chi_l >> t.chi_r)) throw InputError("purified file: bad site dims");
    for (int sig = 0; sig < 3; ++sig) {
      t.m[sig] = read_matrix_block(f);
      if (t.m[sig].rows() != t.chi_l || t.m[sig].cols() != t.chi_r)
        throw InputError("purified file: site shape mismatch");
    }
    p.sites.push_back(std::move(t));
  }
  return p;
}

void save_state(const std::string& path, const VecC& v) {
  auto f = open_out(path);
  f << "state 1\n";
  f << "dim " << v.size() << "\n";
  write_matrix_block(f, MatC(v));
}

VecC load_state(const std::string& path) {
  auto f = open_in(path);
  expect(f, "state");
  expect(f, "1");
  expect(f, "dim");
  Eigen::Index dim;
  if (!(f >> dim)) throw InputError("state file: bad dim");
  MatC m = read_matrix_block(f);
  if (m.cols() != 1 || m.rows() != dim) throw InputError("state file: shape mismatch");
  return m.col(0);
}

void save_matrix(const std::string& path, const MatC& m) {
  auto f = open_out(path);
  f << "matrix 1\n";
  write_matrix_block(f, m);
}

MatC load_matrix(const std::string& path) {
  auto f = open_in(path);
  expect(f, "matrix");
  expect(f, "1");
  return read_matrix_block(f);
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  cfg.descent.vumps = cfg.vumps;
  if (path.empty()) return cfg;
  auto f = open_in(path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  auto get = [](const nlohmann::json& obj, const char* key, auto& dst) {
    if (obj.contains(key)) dst = obj.at(key).get<std::decay_t<decltype(dst)>>();
  };
  if (j.contains("vumps")) {
    const auto& v = j["vumps"];
    get(v, "tol", cfg.vumps.tol);
    get(v, "max_sweeps", cfg.vumps.max_sweeps);
    get(v, "eig_tol", cfg.vumps.eig_tol);
    get(v, "max_matvecs", cfg.vumps.max_matvecs);
    get(v, "schmidt_floor", cfg.vumps.schmidt_floor);
    get(v, "descent_iters", cfg.vumps.descent_iters);
    get(v, "descent_gtol", cfg.vumps.descent_gtol);
    get(v, "energy_guard", cfg.vumps.energy_guard);
  }
  if (j.contains("descent")) {
    const auto& d = j["descent"];
    get(d, "step", cfg.descent.step);
    get(d, "points", cfg.descent.points);
    get(d, "fd_step", cfg.descent.fd_step);
    get(d, "max_halvings", cfg.descent.max_halvings);
    get(d, "grad_tol", cfg.descent.grad_tol);
    get(d, "accept_slack", cfg.descent.accept_slack);
    get(d, "min_drop", cfg.descent.min_drop);
    get(d, "patience", cfg.descent.patience);
  }
  if (j.contains("adam")) {
    const auto& a = j["adam"];
    get(a, "iterations", cfg.adam.iterations);
    get(a, "rate", cfg.adam.rate);
    get(a, "beta1", cfg.adam.beta1);
    get(a, "beta2", cfg.adam.beta2);
    get(a, "eps", cfg.adam.eps);
    get(a, "init_scale", cfg.adam.init_scale);
    get(a, "plateau_patience", cfg.adam.plateau_patience);
    get(a, "plateau_factor", cfg.adam.plateau_factor);
    get(a, "min_rate", cfg.adam.min_rate);
    get(a, "min_delta", cfg.adam.min_delta);
  }
  get(j, "layers", cfg.layers);
  get(j, "repeats", cfg.repeats);
  get(j, "bond", cfg.bond);
  get(j, "seed", cfg.seed);
  get(j, "workers", cfg.workers);
  cfg.descent.vumps = cfg.vumps;
  return cfg;
}

}  // namespace ctxsim
