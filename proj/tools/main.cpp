#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "ctxsim/descent.hpp"
#include "ctxsim/encode.hpp"
#include "ctxsim/io.hpp"
#include "ctxsim/linalg.hpp"
#include "ctxsim/oracle.hpp"
#include "ctxsim/synth.hpp"
#include "ctxsim/vqa.hpp"

namespace fs = std::filesystem;
using namespace ctxsim;

namespace {

std::string csv_num(double x) { return format_g17(x); }

// Fixed-order worker pool: jobs indexed 0..n-1, results stored by index.
void run_pool(int workers, int n_jobs, const std::function<void(int)>& job) {
  if (workers <= 1) {
    for (int i = 0; i < n_jobs; ++i) job(i);
    return;
  }
  std::mutex mtx;
  int next = 0;
  auto worker = [&] {
    for (;;) {
      int mine;
      {
        std::lock_guard<std::mutex> lk(mtx);
        if (next >= n_jobs) return;
        mine = next++;
      }
      job(mine);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

int env_workers(int fallback) {
  if (const char* w = std::getenv("CTXSIM_WORKERS")) {
    int v = std::atoi(w);
    if (v >= 1) return v;
  }
  return fallback;
}

Eigen::Matrix<double, 6, 1> parse_w(const std::vector<double>& v) {
  if (v.size() != 6) throw InputError("expected six observable parameters");
  Eigen::Matrix<double, 6, 1> w;
  for (int i = 0; i < 6; ++i) w[i] = v[i];
  return w;
}

struct TrajWriter {
  std::ofstream f;
  explicit TrajWriter(const std::string& path) : f(path, std::ios::binary) {
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "point_index,w0,w1,w2,w3,w4,w5,energy_density\n";
  }
  void row(int idx, const DescentPoint& p) {
    f << idx;
    for (int i = 0; i < 6; ++i) f << "," << csv_num(p.w[i]);
    f << "," << csv_num(p.energy) << "\n";
  }
};

std::vector<DescentPoint> load_checkpoints(const fs::path& dir) {
  std::vector<DescentPoint> pts;
  for (int i = 0;; ++i) {
    fs::path p = dir / ("point_" + std::to_string(i) + ".txt");
    if (!fs::exists(p)) break;
    DescentPoint pt;
    pt.state = load_umps(p.string());
    pt.w = pt.state.w_params;
    pt.energy = pt.state.energy;
    pts.push_back(std::move(pt));
  }
  return pts;
}

std::vector<DescentPoint> run_descent(const Witness& wit, int bond, std::uint64_t seed,
                                      const DescentOptions& dopt, const fs::path& ckdir) {
  fs::create_directories(ckdir);
  std::vector<DescentPoint> resume = load_checkpoints(ckdir);
  Rng rng(seed);
  Eigen::Matrix<double, 6, 1> w0;
  for (int i = 0; i < 6; ++i) w0[i] = rng.uniform(-0.8, 0.8);
  ObservableParams signs;
  auto on_point = [&](const DescentPoint& p, int idx) {
    UmpsState s = p.state;
    s.energy = p.energy;
    s.w_params = p.w;
    s.witness_id = wit.id;
    save_umps((ckdir / ("point_" + std::to_string(idx) + ".txt")).string(), s);
  };
  return observable_descent(wit, bond, w0, signs, rng, dopt, &resume, on_point);
}

int cmd_solve(int witness, int bond, bool descend, const std::vector<double>& w_flag,
              const RunConfig& cfg, const std::string& out_dir) {
  const Witness& wit = witness_by_id(witness);
  fs::create_directories(out_dir);
  std::string tag = "w" + std::to_string(witness) + "_D" + std::to_string(bond);
  fs::path out(out_dir);
  if (descend) {
    auto traj = run_descent(wit, bond, cfg.seed, cfg.descent, out / ("points_" + tag));
    TrajWriter csv((out / ("trajectory_" + tag + ".csv")).string());
    for (std::size_t i = 0; i < traj.size(); ++i) csv.row(static_cast<int>(i), traj[i]);
    UmpsState endp = traj.back().state;
    endp.energy = traj.back().energy;
    endp.w_params = traj.back().w;
    endp.witness_id = witness;
    save_umps((out / ("umps_" + tag + ".txt")).string(), endp);
    std::cout << "trajectory points: " << traj.size() << "\n";
    std::cout << "endpoint energy density: " << format_g17(traj.back().energy) << "\n";
    return 0;
  }
  Eigen::Matrix<double, 6, 1> w0 = Eigen::Matrix<double, 6, 1>::Zero();
  if (!w_flag.empty()) w0 = parse_w(w_flag);
  ObservableParams signs;
  signs.wx = w0.head<3>();
  signs.wy = w0.tail<3>();
  Mpo mpo = to_mpo(local_term(wit, signs));
  Rng rng(cfg.seed);
  GroundState gs = ground_state(mpo, bond, std::nullopt, rng, cfg.vumps);
  if (!gs.converged) {
    std::cerr << "solver did not converge: gradient norm " << gs.grad_norm << " after "
              << gs.sweeps << " sweeps\n";
    return 3;
  }
  gs.state.witness_id = witness;
  gs.state.w_params = w0;
  gs.state.energy = gs.energy;
  save_umps((out / ("umps_" + tag + ".txt")).string(), gs.state);
  TrajWriter csv((out / ("trajectory_" + tag + ".csv")).string());
  DescentPoint p{w0, gs.energy, gs.state};
  csv.row(0, p);
  std::cout << "energy density: " << format_g17(gs.energy) << "\n";
  return 0;
}

int cmd_purify(const std::string& in_file, const std::string& out_prefix) {
  UmpsState n = load_umps(in_file);
  normalize(n);
  FixedPoints fp = fixed_points(n);
  PurifiedMps p = purify(n, fp);
  save_purified(out_prefix + "_purified.txt", p);
  VecC dense = purified_to_dense(p);
  VecC target = encode_state(dense);
  save_state(out_prefix + "_target.txt", target);

  // Partial trace over the two leftmost and two rightmost sites vs rho3.
  MatC traced = MatC::Zero(27, 27);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int m = 0; m < 27; ++m)
        for (int t = 0; t < 27; ++t)
          traced(m, t) += dense(a * 243 + m * 9 + b) * std::conj(dense(a * 243 + t * 9 + b));
  MatC rho = rho3(n, fp);
  double dist = trace_distance(traced, rho);
  bool ok = dist < 1e-10;
  std::cout << "trace_distance < 1e-10: " << (ok ? "PASS" : "FAIL") << " ("
            << format_g17(dist) << ")\n";
  return ok ? 0 : 4;
}

int cmd_vqa(const std::string& target_file, int layers, int iters, int repeats,
            std::uint64_t seed, const RunConfig& cfg, const std::string& out_csv,
            int witness, int point, int bond, double energy) {
  VecC t = load_state(target_file);
  if (t.size() != (Eigen::Index(1) << kQubits))
    throw InputError("vqa: target must hold 2^14 amplitudes");
  QubitState target;
  target.n = kQubits;
  target.amps = t;
  AdamOptions opt = cfg.adam;
  opt.iterations = iters;
  VqaResult res = optimize_overlap(target, layers, repeats, seed, opt);
  std::ofstream f(out_csv, std::ios::binary);
  if (!f) throw InputError("cannot open for writing: " + out_csv);
  f << "witness_id,point_index,D,layers,repeat,iteration,nlf,energy_density,seed\n";
  for (const VqaRepeat& r : res.repeats) {
    for (std::size_t it = 0; it < r.trace.size(); ++it)
      f << witness << "," << point << "," << bond << "," << layers << "," << r.repeat
        << "," << it << "," << csv_num(r.trace[it]) << "," << csv_num(energy) << ","
        << r.seed << "\n";
    f << witness << "," << point << "," << bond << "," << layers << "," << r.repeat
      << ",final," << (r.failed ? "failed" : csv_num(r.final_nlf)) << ","
      << csv_num(energy) << "," << r.seed << "\n";
  }
  f << witness << "," << point << "," << bond << "," << layers << ",mean,final,"
    << csv_num(res.mean_final_nlf) << "," << csv_num(energy) << "," << seed << "\n";
  std::cout << "mean final NLF: " << format_g17(res.mean_final_nlf) << "\n";
  return 0;
}

int cmd_compile(const std::string& in_file, const std::string& out_file) {
  MatC u = load_matrix(in_file);
  if (u.rows() != 9 || u.cols() != 9) throw InputError("compile: expected a 9x9 matrix");
  CompileResult res = compile_two_qutrit(u);
  save_program(out_file, res.program);
  bool ok = res.residual < 1e-8;
  std::cout << "residual < 1e-8: " << (ok ? "PASS" : "FAIL") << " ("
            << format_g17(res.residual) << ")\n";
  std::cout << "primitives: " << res.primitive_count
            << " multi_qubit: " << res.multi_qubit_count << "\n";
  return ok ? 0 : 4;
}

int cmd_reproduce(int witness, const std::vector<int>& bonds, const RunConfig& cfg,
                  const std::string& out_dir) {
  const Witness& wit = witness_by_id(witness);
  fs::create_directories(out_dir);
  fs::path out(out_dir);
  int workers = env_workers(cfg.workers);

  struct Row {
    int bond, point, layers;
    double energy, mean_nlf;
  };
  std::vector<Row> rows;
  for (int bond : bonds) {
    std::string tag = "w" + std::to_string(witness) + "_D" + std::to_string(bond);
    auto traj = run_descent(wit, bond, cfg.seed, cfg.descent, out / ("points_" + tag));
    TrajWriter csv((out / ("trajectory_" + tag + ".csv")).string());
    for (std::size_t i = 0; i < traj.size(); ++i) csv.row(static_cast<int>(i), traj[i]);

    struct Job {
      int point, layers;
      double mean = 0.0;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < traj.size(); ++i)
      for (int layers : {1, 2}) jobs.push_back({static_cast<int>(i), layers});
    run_pool(workers, static_cast<int>(jobs.size()), [&](int ji) {
      Job& jb = jobs[ji];
      fs::path ck = out / ("vqa_" + tag + "_p" + std::to_string(jb.point) + "_K" +
                           std::to_string(jb.layers) + ".txt");
      if (fs::exists(ck)) {
        std::ifstream f(ck);
        f >> jb.mean;
        return;
      }
      const DescentPoint& pt = traj[jb.point];
      UmpsState norm_state = pt.state;
      normalize(norm_state);
      FixedPoints fp = fixed_points(norm_state);
      QubitState target;
      target.n = kQubits;
      target.amps = encode_state(purified_to_dense(purify(norm_state, fp)));
      std::uint64_t seed = cfg.seed + 1000ull * jb.point + jb.layers;
      VqaResult res = optimize_overlap(target, jb.layers, cfg.repeats, seed, cfg.adam);
      jb.mean = res.mean_final_nlf;
      std::ofstream f(ck, std::ios::binary);
      f << format_g17(jb.mean) << "\n";
    });
    for (const Job& jb : jobs)
      rows.push_back({bond, jb.point, jb.layers, traj[jb.point].energy, jb.mean});
  }

  std::string path = (out / ("fig5_w" + std::to_string(witness) + ".csv")).string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for writing: " + path);
  f << "witness_id,D,point_index,energy_density,layers,mean_final_nlf\n";
  for (const Row& r : rows)
    f << witness << "," << r.bond << "," << r.point << "," << csv_num(r.energy) << ","
      << r.layers << "," << csv_num(r.mean_nlf) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextuality witness simulation pipeline"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");

  auto* solve = app.add_subcommand("solve", "ground state search");
  int witness = 1, bond = 5;
  bool descend = false;
  std::vector<double> w_flag;
  std::uint64_t seed_flag = 0;
  bool seed_set = false;
  solve->add_option("--witness", witness, "witness id 1..5")->required();
  solve->add_option("--bond-dim", bond, "uMPS bond dimension")->required();
  solve->add_flag("--descend", descend, "descend over observable parameters");
  solve->add_option("--w", w_flag, "six observable parameters")->expected(6);
  solve->add_option("--seed", seed_flag, "rng seed");

  auto* purify_cmd = app.add_subcommand("purify", "purify a stored uMPS");
  std::string in_file, out_prefix = "purify_out";
  purify_cmd->add_option("--in", in_file, "uMPS file")->required();
  purify_cmd->add_option("--out-prefix", out_prefix, "output file prefix");

  auto* vqa_cmd = app.add_subcommand("vqa", "optimize circuit overlap with a target");
  std::string target_file, vqa_csv = "vqa.csv";
  int layers = 2, iters = 500, repeats = 10, meta_point = 0, meta_bond = 0;
  double meta_energy = 0.0;
  int meta_witness = 0;
  vqa_cmd->add_option("--target", target_file, "state file")->required();
  vqa_cmd->add_option("--layers", layers, "ansatz layers");
  vqa_cmd->add_option("--iters", iters, "optimizer iterations");
  vqa_cmd->add_option("--repeats", repeats, "independent repeats");
  vqa_cmd->add_option("--seed", seed_flag, "rng seed");
  vqa_cmd->add_option("--csv", vqa_csv, "output CSV path");
  vqa_cmd->add_option("--witness", meta_witness, "metadata column");
  vqa_cmd->add_option("--point", meta_point, "metadata column");
  vqa_cmd->add_option("--bond", meta_bond, "metadata column");
  vqa_cmd->add_option("--energy", meta_energy, "metadata column");

  auto* compile_cmd = app.add_subcommand("compile", "compile a 9x9 unitary");
  std::string unitary_file, program_file = "program.txt";
  compile_cmd->add_option("--in", unitary_file, "matrix file")->required();
  compile_cmd->add_option("--program", program_file, "output program file");

  auto* repro = app.add_subcommand("reproduce", "full trajectory + VQA pipeline");
  std::vector<int> bonds{5};
  repro->add_option("--witness", witness, "witness id 1..5")->required();
  repro->add_option("--bond-dim", bonds, "bond dimensions");
  repro->add_option("--seed", seed_flag, "rng seed");

  for (auto* sc : {solve, vqa_cmd, repro})
    sc->callback([&, sc] { seed_set = sc->count("--seed") > 0; });

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (seed_set) cfg.seed = seed_flag;
    if (app.got_subcommand(solve)) return cmd_solve(witness, bond, descend, w_flag, cfg, out_dir);
    if (app.got_subcommand(purify_cmd)) return cmd_purify(in_file, out_prefix);
    if (app.got_subcommand(vqa_cmd))
      return cmd_vqa(target_file, layers, iters, repeats, cfg.seed, cfg, vqa_csv,
                     meta_witness, meta_point, meta_bond, meta_energy);
    if (app.got_subcommand(compile_cmd)) return cmd_compile(unitary_file, program_file);
    if (app.got_subcommand(repro)) return cmd_reproduce(witness, bonds, cfg, out_dir);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const CompileError& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
