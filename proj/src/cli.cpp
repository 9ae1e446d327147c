#include "factorlat/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "factorlat/factorization.hpp"
#include "factorlat/io.hpp"
#include "factorlat/sweep.hpp"

namespace factorlat {

namespace {

struct CommonOpts {
  std::string lattice = "chain";
  int L = 10;
  int Ly = 0;  // 0 = default (square: Ly = L)
  std::string bc = "periodic";

  double dy = 1.0, dz = 1.0;
  double hx = 0.0, hy = 0.0, hz = 0.0, pin = 0.0;

  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 1;
  int k = 1;

  std::string out_path;
  std::string format = "csv";
};

void add_common(CLI::App& cmd, CommonOpts& o) {
  cmd.add_option("--lattice", o.lattice, "chain | square")
      ->check(CLI::IsMember({"chain", "square"}));
  cmd.add_option("--L", o.L, "linear size");
  cmd.add_option("--Ly", o.Ly, "second dimension (square; default L)");
  cmd.add_option("--bc", o.bc, "periodic | open")
      ->check(CLI::IsMember({"periodic", "open"}));
  cmd.add_option("--dy", o.dy, "y-exchange anisotropy");
  cmd.add_option("--dz", o.dz, "z-exchange anisotropy");
  cmd.add_option("--hx", o.hx, "field x-component");
  cmd.add_option("--hy", o.hy, "field y-component");
  cmd.add_option("--hz", o.hz, "field z-component");
  cmd.add_option("--pin", o.pin, "staggered pinning field");
  cmd.add_option("--tol", o.tol, "eigensolver residual tolerance");
  cmd.add_option("--max-iter", o.max_iter, "matvec budget per eigenpair");
  cmd.add_option("--seed", o.seed, "RNG seed");
  cmd.add_option("--k", o.k, "eigenpairs (2 adds the gap column)")
      ->check(CLI::IsMember({1, 2}));
  cmd.add_option("--out", o.out_path, "output path (default stdout)");
  cmd.add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
}

// flat key=value config support; explicit flags win over file entries
bool apply_common_key(CommonOpts& o, const std::string& k,
                      const std::string& v) {
  if (k == "lattice") o.lattice = v;
  else if (k == "L") o.L = std::stoi(v);
  else if (k == "Ly") o.Ly = std::stoi(v);
  else if (k == "bc") o.bc = v;
  else if (k == "dy") o.dy = std::stod(v);
  else if (k == "dz") o.dz = std::stod(v);
  else if (k == "hx") o.hx = std::stod(v);
  else if (k == "hy") o.hy = std::stod(v);
  else if (k == "hz") o.hz = std::stod(v);
  else if (k == "pin") o.pin = std::stod(v);
  else if (k == "tol") o.tol = std::stod(v);
  else if (k == "max-iter") o.max_iter = std::stoi(v);
  else if (k == "seed") o.seed = std::stoull(v);
  else if (k == "k") o.k = std::stoi(v);
  else if (k == "out") o.out_path = v;
  else if (k == "format") o.format = v;
  else return false;
  return true;
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Applies `path` entries whose flags were not given explicitly. `extra`
// handles subcommand-specific keys; returns false for unknown keys.
template <typename Extra>
int load_config(const CLI::App& cmd, const std::string& path, CommonOpts& o,
                std::ostream& err, const Extra& extra) {
  if (path.empty()) return 0;
  std::ifstream f(path);
  if (!f) {
    err << "error: cannot read config file " << path << "\n";
    return 1;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      err << "error: " << path << ":" << lineno << ": expected key=value\n";
      return 1;
    }
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (cmd.count("--" + k) > 0) continue;  // explicit flag wins
    try {
      if (!apply_common_key(o, k, v) && !extra(k, v)) {
        err << "error: " << path << ":" << lineno << ": unknown key '" << k
            << "'\n";
        return 1;
      }
    } catch (const std::exception&) {
      err << "error: " << path << ":" << lineno << ": bad value for '" << k
          << "'\n";
      return 1;
    }
  }
  return 0;
}

LatticeSpec lattice_spec(const CommonOpts& o) {
  LatticeSpec s;
  s.dimension = o.lattice == "chain" ? 1 : 2;
  s.Lx = o.L;
  s.Ly = s.dimension == 1 ? 1 : (o.Ly > 0 ? o.Ly : o.L);
  s.bc = o.bc == "open" ? Boundary::open : Boundary::periodic;
  return s;
}

ModelParams model_params(const CommonOpts& o) {
  ModelParams p;
  p.delta_y = o.dy;
  p.delta_z = o.dz;
  p.field = {o.hx, o.hy, o.hz};
  p.pinning = o.pin;
  return p;
}

SolverConfig solver_config(const CommonOpts& o) {
  SolverConfig c;
  c.tolerance = o.tol;
  c.max_iterations = o.max_iter;
  c.seed = o.seed;
  c.k = o.k;
  return c;
}

io::RunHeader make_header(const std::string& sub, const CommonOpts& o) {
  io::RunHeader h;
  h.subcommand = sub;
  h.lattice = lattice_spec(o);
  h.model = model_params(o);
  h.solver = solver_config(o);
  return h;
}

int check_cap(const LatticeSpec& s, std::ostream& err) {
  if (s.n_sites() > kMaxSites) {
    err << "error: " << s.n_sites() << " sites exceeds the cap of "
        << kMaxSites << "\n";
    return 1;
  }
  return 0;
}

// Writes `emit(stream)` to o.out_path or to `fallback`.
template <typename Emit>
int with_output(const CommonOpts& o, std::ostream& fallback, std::ostream& err,
                const Emit& emit) {
  if (o.out_path.empty()) {
    emit(fallback);
    return 0;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << o.out_path << "\n";
    return 1;
  }
  emit(f);
  return 0;
}

int default_jobs() {
  if (const char* env = std::getenv("FACTORLAT_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

int cmd_ground(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  const io::RunHeader header = make_header("ground", o);
  if (int rc = check_cap(header.lattice, err)) return rc;

  SweepRow row;
  try {
    const Lattice lat = build_lattice(header.lattice);
    const DistanceClasses classes = distance_classes(header.lattice);
    const GroundSolve gs = solve_ground(header.model, lat, header.solver);
    row.param = header.model.field[2];
    row.energy = gs.energy;
    row.gap = gs.gap;
    row.degenerate = gs.degenerate;
    row.residual = gs.residual;
    row.iterations = gs.iterations;
    const ObservableSet obs = compute_observables(gs.psi, lat, classes);
    row.M = obs.M;
    row.g = obs.g;
    row.ent = compute_entanglement(gs.psi, lat, classes, obs);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: solver failed: " << e.what() << "\n";
    return 2;
  }

  return with_output(o, out, err, [&](std::ostream& os) {
    if (o.format == "json")
      os << io::sweep_json(header, {row}).dump(2) << "\n";
    else
      io::write_sweep_csv(os, header, {row});
  });
}

int cmd_sweep(const CommonOpts& o, const std::string& param, double from,
              double to, double step, int shells, int jobs, std::ostream& out,
              std::ostream& err) {
  io::RunHeader header = make_header("sweep", o);
  header.parameter = param;
  header.from = from;
  header.to = to;
  header.step = step;
  header.shells = shells;
  header.jobs = jobs;
  if (int rc = check_cap(header.lattice, err)) return rc;
  if (step <= 0) {
    err << "error: --step must be positive\n";
    return 1;
  }
  if (to < from) {
    err << "error: --to must be >= --from\n";
    return 1;
  }

  SweepGrid grid;
  grid.parameter = param;
  grid.base = header.model;
  grid.lattice = header.lattice;
  grid.solver = header.solver;
  grid.shells = shells;
  for (int i = 0;; ++i) {
    const double v = from + i * step;
    if (v > to + 0.5 * step) break;
    grid.values.push_back(v);
  }

  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(grid, jobs);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const int rc = with_output(o, out, err, [&](std::ostream& os) {
    if (o.format == "json")
      os << io::sweep_json(header, rows).dump(2) << "\n";
    else
      io::write_sweep_csv(os, header, rows);
  });
  if (rc) return rc;

  size_t failed = 0;
  for (const auto& r : rows)
    if (r.failed) ++failed;
  const CrossingEstimate hf = find_concurrence_zero(rows);
  const GapMinimum gm = find_gap_minimum(rows);
  err << "sweep: " << rows.size() - failed << "/" << rows.size()
      << " points converged";
  if (hf.found)
    err << "; h_f estimate " << io::format_g(hf.value) << " in ["
        << io::format_g(hf.lo) << ", " << io::format_g(hf.hi) << "]";
  if (gm.found && !std::isnan(gm.gap))
    err << "; gap minimum (finite-size surrogate) at "
        << io::format_g(gm.value)
        << (gm.at_boundary ? " [grid boundary]" : "");
  err << "\n";
  if (failed == rows.size() && !rows.empty()) {
    err << "error: every sweep point failed\n";
    return 2;
  }
  return 0;
}

int cmd_factorize(const CommonOpts& o, const std::string& direction,
                  std::ostream& out, std::ostream& err) {
  io::RunHeader header = make_header("factorize", o);
  if (int rc = check_cap(header.lattice, err)) return rc;

  Eigen::Vector3d dir(0, 0, 1);
  if (!direction.empty()) {
    char c1 = 0, c2 = 0;
    std::istringstream ss(direction);
    if (!(ss >> dir[0] >> c1 >> dir[1] >> c2 >> dir[2]) || c1 != ',' ||
        c2 != ',') {
      err << "error: --direction expects ux,uy,uz\n";
      return 1;
    }
  }

  try {
    const Lattice lat = build_lattice(header.lattice);
    const int z = coordination(header.lattice).bulk;
    ModelParams params = header.model;
    params.field = ellipsoid_field(params.delta_y, params.delta_z, dir, z);
    header.model = params;

    ProductAngles angles;
    const bool along_z = dir[0] == 0.0 && dir[1] == 0.0;
    if (params.delta_z == 1.0 && along_z && params.delta_y > 0) {
      angles = product_angles_xyx(params.delta_y);
    } else {
      angles = variational_product_solve(params, z, 16, o.seed).angles;
    }
    const FactorizationCertificate cert =
        certify_factorization(params, lat, angles, header.solver);

    const int rc = with_output(o, out, err, [&](std::ostream& os) {
      os << io::certificate_json(header, cert).dump(2) << "\n";
    });
    if (rc) return rc;
    if (!cert.valid) {
      err << "error: certification failed (residual "
          << io::format_g(cert.residual) << ", is_ground "
          << (cert.is_ground ? "true" : "false") << ")\n";
      return 3;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: solver failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact diagonalization and factorization toolkit for the "
               "spin-1/2 XYZ antiferromagnet"};
  app.require_subcommand(1);

  CommonOpts og, os_, of;
  std::string param = "hz";
  double from = 0.0, to = 0.0, step = 0.0;
  int shells = 0;
  int jobs = default_jobs();
  std::string direction;
  std::string cfg_g, cfg_s, cfg_f;

  CLI::App* ground = app.add_subcommand("ground", "single ground-state solve");
  add_common(*ground, og);
  ground->add_option("--config", cfg_g,
                     "flat key=value file, overridden by explicit flags");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(*sweep, os_);
  sweep->add_option("--config", cfg_s,
                    "flat key=value file, overridden by explicit flags");
  sweep->add_option("--param", param, "hz | hx | hy | dy | dz | pin")
      ->check(CLI::IsMember({"hz", "hx", "hy", "dy", "dz", "pin"}));
  sweep->add_option("--from", from, "first grid value");
  sweep->add_option("--to", to, "last grid value");
  sweep->add_option("--step", step, "grid spacing");
  sweep->add_option("--shells", shells,
                    "distance classes to report (0 = all)");
  sweep->add_option("--jobs", jobs, "worker threads (env FACTORLAT_JOBS)");

  CLI::App* fact =
      app.add_subcommand("factorize", "certify the factorized ground state");
  add_common(*fact, of);
  fact->add_option("--direction", direction, "field direction ux,uy,uz");
  fact->add_option("--config", cfg_f,
                   "flat key=value file, overridden by explicit flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }

  if (ground->parsed()) {
    if (int rc = load_config(*ground, cfg_g, og, err,
                             [](const std::string&, const std::string&) {
                               return false;
                             }))
      return rc;
    return cmd_ground(og, out, err);
  }
  if (sweep->parsed()) {
    bool has_from = sweep->count("--from") > 0;
    bool has_to = sweep->count("--to") > 0;
    bool has_step = sweep->count("--step") > 0;
    if (int rc = load_config(
            *sweep, cfg_s, os_, err,
            [&](const std::string& k, const std::string& v) {
              if (k == "param") param = v;
              else if (k == "from") { from = std::stod(v); has_from = true; }
              else if (k == "to") { to = std::stod(v); has_to = true; }
              else if (k == "step") { step = std::stod(v); has_step = true; }
              else if (k == "shells") shells = std::stoi(v);
              else if (k == "jobs") jobs = std::stoi(v);
              else return false;
              return true;
            }))
      return rc;
    if (!has_from || !has_to || !has_step) {
      err << "error: sweep requires --from, --to and --step\n";
      return 1;
    }
    return cmd_sweep(os_, param, from, to, step, shells, jobs, out, err);
  }
  if (int rc = load_config(*fact, cfg_f, of, err,
                           [&](const std::string& k, const std::string& v) {
                             if (k == "direction") {
                               direction = v;
                               return true;
                             }
                             return false;
                           }))
    return rc;
  return cmd_factorize(of, direction, out, err);
}

}  // namespace factorlat
