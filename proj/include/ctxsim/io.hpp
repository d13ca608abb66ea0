#pragma once

#include <cstdint>
#include <string>

#include "ctxsim/descent.hpp"
#include "ctxsim/purify.hpp"
#include "ctxsim/vqa.hpp"

namespace ctxsim {

// Text formats, one value per whitespace-separated token, doubles printed
// with 17 significant digits so save -> load -> save is byte-identical.
// See docs/file_formats.md.

std::string format_g17(double x);

void save_umps(const std::string& path, const UmpsState& s);
UmpsState load_umps(const std::string& path);

void save_purified(const std::string& path, const PurifiedMps& p);
PurifiedMps load_purified(const std::string& path);

// Dense complex vector with explicit dimension (qutrit or qubit states).
void save_state(const std::string& path, const VecC& v);
VecC load_state(const std::string& path);

void save_matrix(const std::string& path, const MatC& m);
MatC load_matrix(const std::string& path);

// Runtime configuration; every numeric default can be overridden from a
// JSON config file, and CLI flags override the config.
struct RunConfig {
  VumpsOptions vumps;
  DescentOptions descent;
  AdamOptions adam;
  int layers = 2;
  int repeats = 10;
  int bond = 5;
  std::uint64_t seed = 1;
  int workers = 1;
};

RunConfig load_config(const std::string& path);  // empty path -> defaults

}  // namespace ctxsim
