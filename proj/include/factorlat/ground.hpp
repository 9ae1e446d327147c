#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "factorlat/eigensolver.hpp"
#include "factorlat/lattice.hpp"
#include "factorlat/model.hpp"

namespace factorlat {

struct GroundSolve {
  Eigen::VectorXcd psi;       // normalized ground state
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double gap = std::numeric_limits<double>::quiet_NaN();  // set when k = 2
  bool degenerate = false;
};

// Lanczos ground state (and gap when cfg.k == 2), using the real fast path
// when the Hamiltonian is real in the Sz basis.
GroundSolve solve_ground(const ModelParams& params, const Lattice& lat,
                         const SolverConfig& cfg);

}  // namespace factorlat
