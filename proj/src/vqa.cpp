#include "ctxsim/vqa.hpp"

#include <cmath>

#include "ctxsim/rng.hpp"

namespace ctxsim {

VqaResult optimize_overlap(const QubitState& target, int layers, int repeats,
                           std::uint64_t seed, const AdamOptions& opt, int n_sites) {
  if (opt.iterations < 1) throw InputError("optimize_overlap: iterations must be >= 1");
  VqaResult result;
  const int np = ansatz_param_count(layers, n_sites);
  double sum_final = 0.0;
  int n_ok = 0;
  for (int r = 0; r < repeats; ++r) {
    VqaRepeat rep;
    rep.repeat = r;
    rep.seed = seed + static_cast<std::uint64_t>(r);
    Rng rng(rep.seed);
    VecR theta(np);
    for (int j = 0; j < np; ++j) theta[j] = rng.uniform(-opt.init_scale, opt.init_scale);
    VecR m = VecR::Zero(np), v = VecR::Zero(np);
    double rate = opt.rate;
    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    rep.trace.reserve(opt.iterations);
    for (int it = 0; it < opt.iterations; ++it) {
      NlfGradient ng = nlf_gradient(theta, layers, target, n_sites);
      if (!std::isfinite(ng.value)) {
        rep.failed = true;
        break;
      }
      rep.trace.push_back(ng.value);
      if (ng.value < best - opt.min_delta) {
        best = ng.value;
        stall = 0;
      } else if (++stall >= opt.plateau_patience) {
        rate = std::max(rate * opt.plateau_factor, opt.min_rate);
        stall = 0;
      }
      double b1t = 1.0 - std::pow(opt.beta1, it + 1);
      double b2t = 1.0 - std::pow(opt.beta2, it + 1);
      for (int j = 0; j < np; ++j) {
        m[j] = opt.beta1 * m[j] + (1.0 - opt.beta1) * ng.grad[j];
        v[j] = opt.beta2 * v[j] + (1.0 - opt.beta2) * ng.grad[j] * ng.grad[j];
        theta[j] -= rate * (m[j] / b1t) / (std::sqrt(v[j] / b2t) + opt.eps);
      }
    }
    rep.params = theta;
    if (!rep.failed) {
      rep.final_nlf = nlf(prepare(theta, layers, n_sites), target);
      if (!std::isfinite(rep.final_nlf)) rep.failed = true;
    }
    if (!rep.failed) {
      sum_final += rep.final_nlf;
      ++n_ok;
      if (result.best_repeat < 0 ||
          rep.final_nlf < result.repeats[result.best_repeat].final_nlf)
        result.best_repeat = r;
    }
    result.repeats.push_back(std::move(rep));
  }
  result.mean_final_nlf =
      n_ok > 0 ? sum_final / n_ok : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace ctxsim
