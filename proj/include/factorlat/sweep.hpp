#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "factorlat/entanglement.hpp"
#include "factorlat/ground.hpp"
#include "factorlat/lattice.hpp"
#include "factorlat/model.hpp"
#include "factorlat/observables.hpp"

namespace factorlat {

// Sweep of one scalar parameter ("hz", "hx", "hy", "dy", "dz" or "pin");
// remaining parameters are held at `base`.
struct SweepGrid {
  std::string parameter = "hz";
  std::vector<double> values;  // strictly increasing
  ModelParams base;
  LatticeSpec lattice;
  SolverConfig solver;  // solver.k = 2 adds the gap column
  int shells = 0;       // distance classes to report; 0 = all (exact tau2)
};

struct SweepRow {
  double param = 0.0;
  bool failed = false;
  std::string error;

  double energy = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  Eigen::Vector3d M = Eigen::Vector3d::Zero();
  std::vector<PairCorrelations> g;
  EntanglementReport ent;
  double residual = 0.0;
  int iterations = 0;
};

ModelParams with_parameter(const ModelParams& base, const std::string& name,
                           double value);

// Rows in grid order; per-point failures are recorded in the row and do not
// abort the sweep. Points are independent and run on up to `jobs` threads;
// output is identical for any job count.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, int jobs = 1);

struct CrossingEstimate {
  bool found = false;
  double value = 0.0;  // interpolated C1/C2 branch crossing
  double lo = 0.0, hi = 0.0;  // bracketing grid points
};

// Factorizing-field estimate: crossing of the nearest-neighbor C1 and C2
// branches (their simultaneous-vanishing point), linearly interpolated.
CrossingEstimate find_concurrence_zero(const std::vector<SweepRow>& rows);

struct GapMinimum {
  bool found = false;
  bool at_boundary = false;  // minimum sits on the grid edge
  double value = 0.0;        // parabolic-interpolated location
  double gap = 0.0;
  // the estimate is a finite-size surrogate for the critical field
};

GapMinimum find_gap_minimum(const std::vector<SweepRow>& rows);

struct DerivativePoint {
  double x = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double central = 0.0;
  double cusp_score = 0.0;  // |forward - backward| / (|forward| + |backward|)
};

// Finite-difference diagnostics on a uniformly spaced column; throws on
// non-uniform grids. One entry per interior point.
std::vector<DerivativePoint> derivative_diagnostics(
    const std::vector<double>& x, const std::vector<double>& y);

}  // namespace factorlat
