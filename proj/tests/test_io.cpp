#include "ctxsim/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctxsim/linalg.hpp"

using namespace ctxsim;

namespace {

std::string tmp_path(const std::string& name) { return testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

}  // namespace

TEST(FormatG17, RoundTripsDoubles) {
  for (double x : {0.0, -0.0, 1.0, -1.0 / 3.0, 1e-300, 6.02214076e23, -8.12123212958938}) {
    double back = std::stod(format_g17(x));
    EXPECT_EQ(back, x);
  }
}

TEST(UmpsFile, SaveLoadSaveIsByteIdentical) {
  Rng rng(71);
  UmpsState s = random_umps(4, rng);
  s.witness_id = 3;
  s.energy = -3.2071;
  s.w_params << 0.1, -0.2, 0.3, -0.4, 0.5, -0.6;
  std::string p1 = tmp_path("umps_a.txt"), p2 = tmp_path("umps_b.txt");
  save_umps(p1, s);
  UmpsState back = load_umps(p1);
  save_umps(p2, back);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_EQ(back.bond, 4);
  EXPECT_EQ(back.witness_id, 3);
  EXPECT_EQ(back.energy, s.energy);
  for (int k = 0; k < 3; ++k) EXPECT_EQ((back.A[k] - s.A[k]).norm(), 0.0);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST(UmpsFile, RejectsCorruptInput) {
  std::string p = tmp_path("umps_bad.txt");
  spit(p, "umps 2\nbond 1\n");
  EXPECT_THROW(load_umps(p), InputError);
  spit(p, "umps 1\nbond 2\nwitness 1\nenergy 0\nw 0 0 0 0 0 0\n1 1\n0 0\n");
  EXPECT_THROW(load_umps(p), InputError);  // tensor shape vs bond
  std::remove(p.c_str());
  EXPECT_THROW(load_umps(p), InputError);
}

TEST(PurifiedFile, SaveLoadSaveIsByteIdentical) {
  Rng rng(72);
  UmpsState s = random_umps(5, rng);
  s.witness_id = 2;
  PurifiedMps pm = purify(s);
  std::string p1 = tmp_path("pur_a.txt"), p2 = tmp_path("pur_b.txt");
  save_purified(p1, pm);
  PurifiedMps back = load_purified(p1);
  save_purified(p2, back);
  EXPECT_EQ(slurp(p1), slurp(p2));
  ASSERT_EQ(back.sites.size(), pm.sites.size());
  EXPECT_LT((purified_to_dense(back) - purified_to_dense(pm)).norm(), 1e-16);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST(StateFile, RoundTripAndValidation) {
  Rng rng(73);
  VecC v(11);
  for (int i = 0; i < 11; ++i) v(i) = rng.gaussian_cx();
  std::string p = tmp_path("state_a.txt");
  save_state(p, v);
  VecC back = load_state(p);
  EXPECT_EQ((back - v).norm(), 0.0);
  spit(p, "state 1\ndim 3\n2 1\n0 0\n0 0\n");
  EXPECT_THROW(load_state(p), InputError);
  std::remove(p.c_str());
}

TEST(MatrixFile, RoundTripAndValidation) {
  Rng rng(74);
  MatC m(3, 5);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = rng.gaussian_cx();
  std::string p = tmp_path("mat_a.txt");
  save_matrix(p, m);
  EXPECT_EQ((load_matrix(p) - m).norm(), 0.0);
  spit(p, "matrix 1\n2 2\n1 0 2 0\n3 0\n");
  EXPECT_THROW(load_matrix(p), InputError);
  std::remove(p.c_str());
}

TEST(LoadConfig, EmptyPathGivesDefaults) {
  RunConfig cfg = load_config("");
  EXPECT_EQ(cfg.layers, 2);
  EXPECT_EQ(cfg.repeats, 10);
  EXPECT_EQ(cfg.bond, 5);
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.workers, 1);
  EXPECT_EQ(cfg.vumps.tol, VumpsOptions{}.tol);
  EXPECT_EQ(cfg.descent.step, DescentOptions{}.step);
  EXPECT_EQ(cfg.adam.iterations, AdamOptions{}.iterations);
  EXPECT_EQ(cfg.descent.vumps.tol, cfg.vumps.tol);
}

TEST(LoadConfig, JsonOverridesSelectedFields) {
  std::string p = tmp_path("cfg.json");
  spit(p, R"({
    "vumps": {"tol": 1e-8, "max_sweeps": 17, "schmidt_floor": 1e-6},
    "descent": {"step": 0.02, "points": 7, "min_drop": 1e-7, "patience": 5},
    "adam": {"iterations": 42, "rate": 0.005},
    "layers": 1, "repeats": 3, "bond": 2, "seed": 99, "workers": 4
  })");
  RunConfig cfg = load_config(p);
  EXPECT_EQ(cfg.vumps.tol, 1e-8);
  EXPECT_EQ(cfg.vumps.max_sweeps, 17);
  EXPECT_EQ(cfg.vumps.schmidt_floor, 1e-6);
  EXPECT_EQ(cfg.descent.step, 0.02);
  EXPECT_EQ(cfg.descent.points, 7);
  EXPECT_EQ(cfg.descent.min_drop, 1e-7);
  EXPECT_EQ(cfg.descent.patience, 5);
  EXPECT_EQ(cfg.adam.iterations, 42);
  EXPECT_EQ(cfg.adam.rate, 0.005);
  EXPECT_EQ(cfg.layers, 1);
  EXPECT_EQ(cfg.repeats, 3);
  EXPECT_EQ(cfg.bond, 2);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.workers, 4);
  // Untouched fields keep defaults; solver options propagate into descent.
  EXPECT_EQ(cfg.adam.beta1, AdamOptions{}.beta1);
  EXPECT_EQ(cfg.descent.vumps.tol, 1e-8);
  EXPECT_EQ(cfg.descent.vumps.max_sweeps, 17);
  std::remove(p.c_str());
}

TEST(LoadConfig, RejectsBadJsonAndMissingFile) {
  std::string p = tmp_path("cfg_bad.json");
  spit(p, "{ not json");
  EXPECT_THROW(load_config(p), InputError);
  std::remove(p.c_str());
  EXPECT_THROW(load_config(p), InputError);
}
