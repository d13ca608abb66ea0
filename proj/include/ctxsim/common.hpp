#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctxsim {

using Cx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using Mat3R = Eigen::Matrix3d;
using Mat3C = Eigen::Matrix3cd;

inline constexpr int kQutritDim = 3;
inline constexpr int kSites = 7;         // purified chain length
inline constexpr int kQubits = 2 * kSites;
inline constexpr int kMaxBond = 9;       // largest bond dimension the purifier accepts

// Thrown when an input violates a documented precondition.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative routine fails to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a synthesized gate program fails its verification check.
struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ctxsim
