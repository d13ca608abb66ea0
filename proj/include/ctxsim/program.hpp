#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctxsim/common.hpp"

namespace ctxsim {

// Primitive gate set. RY/RZ/PS/X act on one wire. CV applies an explicit 2x2
// unitary to one wire under zero or more polarity-qualified controls. RZENC
// and VENC act on a wire pair as the triplet-sector image of a two-level
// qutrit rotation (levels li, lj), optionally controlled.
enum class PrimKind { RY, RZ, PS, X, CV, RZENC, VENC };

struct Primitive {
  PrimKind kind = PrimKind::X;
  std::vector<int> wires;                    // one target wire, or the pair
  std::vector<std::pair<int, int>> controls; // (wire, required bit)
  double theta = 0.0;                        // RY, RZ, PS, RZENC
  Eigen::Matrix2cd v;                        // CV, VENC
  int li = 0, lj = 1;                        // RZENC, VENC
};

struct GateProgram {
  int n_wires = 0;
  std::vector<Primitive> prims;  // application order
};

// Dense 2^n x 2^n local matrix of one primitive embedded on all wires.
MatC primitive_matrix(const Primitive& p, int n_wires);

// Product of all primitives in application order (first primitive acts
// first, i.e. rightmost in the matrix product).
MatC program_matrix(const GateProgram& g);

int multi_qubit_count(const GateProgram& g);

// Line-oriented text form, 17 significant digits. See docs/gate_program.md.
std::string program_to_text(const GateProgram& g);
GateProgram program_from_text(const std::string& text);

void save_program(const std::string& path, const GateProgram& g);
GateProgram load_program(const std::string& path);

}  // namespace ctxsim
