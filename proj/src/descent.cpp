#include "ctxsim/descent.hpp"

#include <optional>

namespace ctxsim {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

ObservableParams params_at(const Vec6& w, const ObservableParams& signs) {
  ObservableParams p = signs;
  p.wx = w.head<3>();
  p.wy = w.tail<3>();
  return p;
}

GroundState solve_at(const Witness& wit, int bond, const Vec6& w,
                     const ObservableParams& signs, const UmpsState* warm, Rng& rng,
                     const VumpsOptions& vopt) {
  Mpo mpo = to_mpo(local_term(wit, params_at(w, signs)));
  std::optional<UmpsState> init;
  if (warm) init = *warm;
  GroundState gs = ground_state(mpo, bond, init, rng, vopt);
  gs.state.witness_id = wit.id;
  gs.state.w_params = w;
  return gs;
}

}  // namespace

std::vector<DescentPoint> observable_descent(
    const Witness& wit, int bond, const Vec6& w0, const ObservableParams& signs,
    Rng& rng, const DescentOptions& opt, const std::vector<DescentPoint>* resume,
    const std::function<void(const DescentPoint&, int)>& on_point) {
  std::vector<DescentPoint> traj;
  UmpsState init0 = random_umps(bond, rng);  // drawn even when resuming
  if (resume && !resume->empty()) {
    traj = *resume;
  } else {
    GroundState first = solve_at(wit, bond, w0, signs, &init0, rng, opt.vumps);
    traj.push_back({w0, first.energy, first.state});
    if (on_point) on_point(traj.back(), 0);
  }

  double step = opt.step;
  int flat_moves = 0;
  while (static_cast<int>(traj.size()) < opt.points) {
    const DescentPoint at = traj.back();

    // Central differences over W. At a solved point the state is stationary,
    // so the minimum-energy derivative equals the frozen-state derivative up
    // to O(fd_step^2), and one set of fixed points prices all twelve
    // evaluations. Falls back to re-solving when the frozen reading disagrees
    // with the solver's (untrustworthy contraction on this state).
    Vec6 grad;
    bool frozen = false;
    try {
      FixedPoints fp = fixed_points(at.state);
      LocalTerm t0 = local_term(wit, params_at(at.w, signs));
      double e0 = energy_density(at.state, fp, t0);
      if (std::abs(e0 - at.energy) <= 1e-6 * (1.0 + std::abs(at.energy))) {
        for (int k = 0; k < 6; ++k) {
          Vec6 wp = at.w, wm = at.w;
          wp[k] += opt.fd_step;
          wm[k] -= opt.fd_step;
          double ep =
              energy_density(at.state, fp, local_term(wit, params_at(wp, signs)));
          double em =
              energy_density(at.state, fp, local_term(wit, params_at(wm, signs)));
          grad[k] = (ep - em) / (2.0 * opt.fd_step);
        }
        frozen = true;
      }
    } catch (const ConvergenceError&) {
    }
    if (!frozen) {
      for (int k = 0; k < 6; ++k) {
        Vec6 wp = at.w, wm = at.w;
        wp[k] += opt.fd_step;
        wm[k] -= opt.fd_step;
        double ep = solve_at(wit, bond, wp, signs, &at.state, rng, opt.vumps).energy;
        double em = solve_at(wit, bond, wm, signs, &at.state, rng, opt.vumps).energy;
        grad[k] = (ep - em) / (2.0 * opt.fd_step);
      }
    }
    if (grad.norm() < opt.grad_tol) break;
    Vec6 dir = -grad / grad.norm();

    bool moved = false;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      Vec6 wnext = at.w + step * dir;
      GroundState trial = solve_at(wit, bond, wnext, signs, &at.state, rng, opt.vumps);
      if (trial.trusted && trial.energy <= at.energy + opt.accept_slack) {
        traj.push_back({wnext, trial.energy, trial.state});
        if (on_point) on_point(traj.back(), static_cast<int>(traj.size()) - 1);
        flat_moves = at.energy - trial.energy < opt.min_drop ? flat_moves + 1 : 0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved || flat_moves >= opt.patience) break;
  }
  return traj;
}

}  // namespace ctxsim
