#pragma once

#include <cstdint>

#include "ctxsim/circuit.hpp"

namespace ctxsim {

struct AdamOptions {
  int iterations = 500;
  double rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double init_scale = 0.1;  // uniform(-s, s) parameter initialization
  // Plateau schedule: halve the rate after `patience` iterations without
  // improvement; a constant rate stalls orders of magnitude above the
  // achievable loss floor.
  int plateau_patience = 15;
  double plateau_factor = 0.5;
  double min_rate = 1e-12;
  double min_delta = 1e-12;
};

struct VqaRepeat {
  int repeat = 0;
  std::uint64_t seed = 0;
  VecR params;
  std::vector<double> trace;  // loss at each iteration, pre-update
  double final_nlf = 0.0;
  bool failed = false;
};

struct VqaResult {
  std::vector<VqaRepeat> repeats;
  double mean_final_nlf = 0.0;  // over non-failed repeats
  int best_repeat = -1;
};

VqaResult optimize_overlap(const QubitState& target, int layers, int repeats,
                           std::uint64_t seed, const AdamOptions& opt = {},
                           int n_sites = kSites);

}  // namespace ctxsim
