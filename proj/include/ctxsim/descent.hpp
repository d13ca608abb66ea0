#pragma once

#include <functional>
#include <vector>

#include "ctxsim/vumps.hpp"

namespace ctxsim {

struct DescentOptions {
  double step = 0.05;        // initial step along the normalized gradient
  int points = 60;           // trajectory length cap, including the start
  double fd_step = 1e-4;     // central-difference step per parameter
  int max_halvings = 20;     // line-search budget per move
  double grad_tol = 1e-8;    // gradient norm treated as stationary
  double accept_slack = 1e-9;
  double min_drop = 1e-9;    // moves gaining less than this count as flat
  int patience = 3;          // consecutive flat moves before stopping
  VumpsOptions vumps;
};

struct DescentPoint {
  Eigen::Matrix<double, 6, 1> w;
  double energy = 0.0;
  UmpsState state;
};

// Minimizes the ground-state energy density over the six rotation parameters
// (three per observable direction) at fixed bond dimension. Ground states are
// solved variationally with warm starts from the previous point; each move is
// a halving line search along the negative central-difference gradient, so
// recorded energies never increase beyond accept_slack. A start whose
// gradient norm is below grad_tol yields a length-1 trajectory.
//
// `resume`, when non-empty, replaces the already-computed prefix of the
// trajectory (the rng draw for the initial solve is still consumed, so a
// resumed run continues the same stream). `on_point` fires once per newly
// computed point, in order.
std::vector<DescentPoint> observable_descent(
    const Witness& wit, int bond, const Eigen::Matrix<double, 6, 1>& w0,
    const ObservableParams& signs, Rng& rng, const DescentOptions& opt = {},
    const std::vector<DescentPoint>* resume = nullptr,
    const std::function<void(const DescentPoint&, int)>& on_point = {});

}  // namespace ctxsim
