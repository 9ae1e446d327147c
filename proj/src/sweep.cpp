#include "factorlat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace factorlat {

ModelParams with_parameter(const ModelParams& base, const std::string& name,
                           double value) {
  ModelParams p = base;
  if (name == "hz")
    p.field[2] = value;
  else if (name == "hx")
    p.field[0] = value;
  else if (name == "hy")
    p.field[1] = value;
  else if (name == "dy")
    p.delta_y = value;
  else if (name == "dz")
    p.delta_z = value;
  else if (name == "pin")
    p.pinning = value;
  else
    throw std::invalid_argument("unknown sweep parameter: " + name);
  return p;
}

namespace {

SweepRow compute_point(const SweepGrid& grid, const Lattice& lat,
                       const DistanceClasses& classes, double value) {
  SweepRow row;
  row.param = value;
  try {
    const ModelParams params = with_parameter(grid.base, grid.parameter, value);
    const GroundSolve gs = solve_ground(params, lat, grid.solver);
    row.energy = gs.energy;
    row.gap = gs.gap;
    row.degenerate = gs.degenerate;
    row.residual = gs.residual;
    row.iterations = gs.iterations;

    const ObservableSet obs =
        compute_observables(gs.psi, lat, classes, grid.shells);
    row.M = obs.M;
    row.g = obs.g;
    row.ent = compute_entanglement(gs.psi, lat, classes, obs);
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepGrid& grid, int jobs) {
  for (size_t i = 1; i < grid.values.size(); ++i)
    if (grid.values[i] <= grid.values[i - 1])
      throw std::invalid_argument("sweep values must be strictly increasing");
  const Lattice lat = build_lattice(grid.lattice);
  const DistanceClasses classes = distance_classes(grid.lattice);

  std::vector<SweepRow> rows(grid.values.size());
  if (jobs < 1) jobs = 1;
  jobs = int(std::min<std::size_t>(jobs, std::max<std::size_t>(grid.values.size(), 1)));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= grid.values.size()) return;
      rows[i] = compute_point(grid, lat, classes, grid.values[i]);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

CrossingEstimate find_concurrence_zero(const std::vector<SweepRow>& rows) {
  CrossingEstimate best;
  double best_score = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    if (a.failed || b.failed || a.ent.C.empty() || b.ent.C.empty()) continue;
    const double fa = a.ent.C[0].c1 - a.ent.C[0].c2;
    const double fb = b.ent.C[0].c1 - b.ent.C[0].c2;
    if (fa == 0.0 && fb == 0.0) continue;
    if ((fa <= 0.0 && fb > 0.0) || (fa >= 0.0 && fb < 0.0)) {
      const double t = fa / (fa - fb);
      // prefer the crossing where the concurrence itself vanishes
      const double score = std::min(a.ent.C[0].C, b.ent.C[0].C);
      if (score < best_score) {
        best_score = score;
        best.found = true;
        best.value = a.param + t * (b.param - a.param);
        best.lo = a.param;
        best.hi = b.param;
      }
    }
  }
  return best;
}

GapMinimum find_gap_minimum(const std::vector<SweepRow>& rows) {
  GapMinimum out;
  int arg = -1;
  for (int i = 0; i < int(rows.size()); ++i) {
    if (rows[i].failed || !std::isfinite(rows[i].gap)) continue;
    if (arg < 0 || rows[i].gap < rows[arg].gap) arg = i;
  }
  if (arg < 0) return out;
  out.found = true;
  out.value = rows[arg].param;
  out.gap = rows[arg].gap;
  if (arg == 0 || arg == int(rows.size()) - 1 || rows[arg - 1].failed ||
      rows[arg + 1].failed) {
    out.at_boundary = true;
    return out;
  }
  // parabola through the minimum and its neighbors
  const double x0 = rows[arg - 1].param, x1 = rows[arg].param,
               x2 = rows[arg + 1].param;
  const double y0 = rows[arg - 1].gap, y1 = rows[arg].gap,
               y2 = rows[arg + 1].gap;
  const double d = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a =
      (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / d;
  const double b =
      (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / d;
  if (a > 0) {
    const double xv = -b / (2 * a);
    if (xv >= x0 && xv <= x2) {
      out.value = xv;
      out.gap = y1 - a * (x1 - xv) * (x1 - xv);
    }
  }
  return out;
}

std::vector<DerivativePoint> derivative_diagnostics(
    const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("column length mismatch");
  if (x.size() < 3)
    throw std::invalid_argument("need at least 3 grid points");
  const double h = x[1] - x[0];
  if (h <= 0) throw std::invalid_argument("grid must be increasing");
  for (size_t i = 1; i + 1 < x.size(); ++i)
    if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("derivative diagnostics need a uniform grid");

  std::vector<DerivativePoint> out;
  for (size_t i = 1; i + 1 < x.size(); ++i) {
    DerivativePoint p;
    p.x = x[i];
    p.forward = (y[i + 1] - y[i]) / h;
    p.backward = (y[i] - y[i - 1]) / h;
    p.central = (y[i + 1] - y[i - 1]) / (2 * h);
    p.cusp_score = std::abs(p.forward - p.backward) /
                   (std::abs(p.forward) + std::abs(p.backward) + 1e-12);
    out.push_back(p);
  }
  return out;
}

}  // namespace factorlat
