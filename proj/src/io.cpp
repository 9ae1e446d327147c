#include "factorlat/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace factorlat::io {

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

const char* bc_name(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "open";
}

std::string lattice_name(const LatticeSpec& s) {
  return s.dimension == 1 ? "chain" : "square";
}

int branch_index(ConcurrenceBranch b) { return int(b); }

}  // namespace

nlohmann::json header_json(const RunHeader& h) {
  nlohmann::json j;
  j["version"] = kArtifactVersion;
  j["subcommand"] = h.subcommand;
  j["lattice"] = {{"type", lattice_name(h.lattice)},
                  {"L", h.lattice.Lx},
                  {"Ly", h.lattice.Ly},
                  {"bc", bc_name(h.lattice.bc)}};
  j["model"] = {{"dy", h.model.delta_y},
                {"dz", h.model.delta_z},
                {"hx", h.model.field[0]},
                {"hy", h.model.field[1]},
                {"hz", h.model.field[2]},
                {"pin", h.model.pinning}};
  j["solver"] = {{"tol", h.solver.tolerance},
                 {"max_iter", h.solver.max_iterations},
                 {"seed", h.solver.seed},
                 {"k", h.solver.k},
                 {"basis_window", h.solver.basis_window}};
  if (h.subcommand == "sweep") {
    j["sweep"] = {{"param", h.parameter}, {"from", h.from},
                  {"to", h.to},           {"step", h.step},
                  {"shells", h.shells},   {"jobs", h.jobs}};
  }
  return j;
}

std::vector<std::string> provenance_lines(const RunHeader& h) {
  std::vector<std::string> out;
  auto kv = [&](const std::string& k, const std::string& v) {
    out.push_back("# " + k + " = " + v);
  };
  kv("version", kArtifactVersion);
  kv("subcommand", h.subcommand);
  kv("lattice", lattice_name(h.lattice));
  kv("L", std::to_string(h.lattice.Lx));
  kv("Ly", std::to_string(h.lattice.Ly));
  kv("bc", bc_name(h.lattice.bc));
  kv("dy", format_g(h.model.delta_y));
  kv("dz", format_g(h.model.delta_z));
  kv("hx", format_g(h.model.field[0]));
  kv("hy", format_g(h.model.field[1]));
  kv("hz", format_g(h.model.field[2]));
  kv("pin", format_g(h.model.pinning));
  kv("tol", format_g(h.solver.tolerance));
  kv("max_iter", std::to_string(h.solver.max_iterations));
  kv("seed", std::to_string(h.solver.seed));
  kv("k", std::to_string(h.solver.k));
  kv("basis_window", std::to_string(h.solver.basis_window));
  if (h.subcommand == "sweep") {
    kv("param", h.parameter);
    kv("from", format_g(h.from));
    kv("to", format_g(h.to));
    kv("step", format_g(h.step));
    kv("shells", std::to_string(h.shells));
  }
  return out;
}

int shell_count(const RunHeader& h) {
  const int all = int(distance_classes(h.lattice).classes.size());
  return (h.shells > 0 && h.shells < all) ? h.shells : all;
}

void write_sweep_csv(std::ostream& os, const RunHeader& h,
                     const std::vector<SweepRow>& rows) {
  for (const auto& line : provenance_lines(h)) os << line << '\n';
  const int K = shell_count(h);

  os << "param,energy,gap,degenerate,Mx,My,Mz";
  for (int k = 1; k <= K; ++k)
    os << ",gxx_d" << k << ",gyy_d" << k << ",gzz_d" << k;
  os << ",tau1";
  for (int k = 1; k <= K; ++k) os << ",C_d" << k;
  for (int k = 1; k <= K; ++k) os << ",branch_d" << k;
  os << ",tau2,R,ckw_margin,residual,iters,error\n";

  for (const auto& r : rows) {
    os << format_g(r.param) << ',';
    if (r.failed) {
      const int total = 14 + 5 * K;  // column count incl. param and error
      for (int i = 0; i < total - 2; ++i) os << ',';
      os << csv_field(r.error) << '\n';
      continue;
    }
    os << format_g(r.energy) << ','
       << (std::isnan(r.gap) ? std::string() : format_g(r.gap)) << ','
       << (r.degenerate ? 1 : 0) << ',' << format_g(r.M[0]) << ','
       << format_g(r.M[1]) << ',' << format_g(r.M[2]);
    for (int k = 0; k < K; ++k) {
      const PairCorrelations g =
          k < int(r.g.size()) ? r.g[k] : PairCorrelations{};
      os << ',' << format_g(g.gxx) << ',' << format_g(g.gyy) << ','
         << format_g(g.gzz);
    }
    os << ',' << format_g(r.ent.tau1);
    for (int k = 0; k < K; ++k)
      os << ','
         << (k < int(r.ent.C.size()) ? format_g(r.ent.C[k].C) : std::string());
    for (int k = 0; k < K; ++k)
      os << ','
         << (k < int(r.ent.C.size())
                 ? std::to_string(branch_index(r.ent.C[k].branch))
                 : std::string());
    os << ',' << format_g(r.ent.tau2) << ','
       << (r.ent.ratio ? format_g(*r.ent.ratio) : std::string()) << ','
       << format_g(r.ent.ckw_margin) << ',' << format_g(r.residual) << ','
       << r.iterations << ",\n";
  }
}

nlohmann::json sweep_json(const RunHeader& h,
                          const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["config"] = header_json(h);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["param"] = r.param;
    if (r.failed) {
      row["error"] = r.error;
      j["rows"].push_back(row);
      continue;
    }
    row["energy"] = r.energy;
    row["gap"] = std::isnan(r.gap) ? nlohmann::json() : nlohmann::json(r.gap);
    row["degenerate"] = r.degenerate;
    row["M"] = {r.M[0], r.M[1], r.M[2]};
    auto shells = nlohmann::json::array();
    for (size_t k = 0; k < r.g.size(); ++k) {
      nlohmann::json s = {{"gxx", r.g[k].gxx},
                          {"gyy", r.g[k].gyy},
                          {"gzz", r.g[k].gzz}};
      if (k < r.ent.C.size()) {
        s["C"] = r.ent.C[k].C;
        s["branch"] = branch_index(r.ent.C[k].branch);
        s["C1"] = r.ent.C[k].c1;
        s["C2"] = r.ent.C[k].c2;
      }
      if (k < r.ent.C_wootters.size()) s["C_wootters"] = r.ent.C_wootters[k];
      shells.push_back(s);
    }
    row["shells"] = shells;
    row["tau1"] = r.ent.tau1;
    row["tau2"] = r.ent.tau2;
    row["R"] = r.ent.ratio ? nlohmann::json(*r.ent.ratio) : nlohmann::json();
    row["ckw_satisfied"] = r.ent.ckw_satisfied;
    row["ckw_margin"] = r.ent.ckw_margin;
    row["residual"] = r.residual;
    row["iters"] = r.iterations;
    j["rows"].push_back(row);
  }
  return j;
}

nlohmann::json certificate_json(const RunHeader& h,
                                const FactorizationCertificate& cert) {
  nlohmann::json j;
  j["config"] = header_json(h);
  j["certificate"] = {
      {"field", {cert.field[0], cert.field[1], cert.field[2]}},
      {"angles",
       {{"theta1", cert.angles.theta1},
        {"phi1", cert.angles.phi1},
        {"theta2", cert.angles.theta2},
        {"phi2", cert.angles.phi2}}},
      {"energy", cert.energy},
      {"energy_per_site", cert.energy_per_site},
      {"residual", cert.residual},
      {"ground_energy", cert.ground_energy},
      {"is_ground", cert.is_ground},
      {"valid", cert.valid}};
  return j;
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string content((std::istreambuf_iterator<char>(is)),
                      std::istreambuf_iterator<char>());
  size_t pos = 0;
  bool header_done = false;
  while (pos < content.size()) {
    if (!header_done && content[pos] == '#') {
      const size_t nl = content.find('\n', pos);
      const size_t end = nl == std::string::npos ? content.size() : nl;
      t.comments.push_back(content.substr(pos, end - pos));
      pos = end + (nl == std::string::npos ? 0 : 1);
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool done = false;
    while (pos < content.size() && !done) {
      const char c = content[pos];
      if (quoted) {
        if (c == '"') {
          if (pos + 1 < content.size() && content[pos + 1] == '"') {
            cur += '"';
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
      } else if (c == '\n') {
        done = true;
      } else if (c != '\r') {
        cur += c;
      }
      ++pos;
    }
    fields.push_back(std::move(cur));
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (!header_done) {
      t.header = std::move(fields);
      header_done = true;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

std::vector<SweepRow> parse_sweep_rows(const CsvTable& table) {
  int K = 0;
  for (const auto& name : table.header)
    if (name.rfind("gxx_d", 0) == 0) ++K;
  const size_t expected = 14 + 5 * size_t(K);
  if (table.header.size() != expected)
    throw std::invalid_argument("unexpected sweep CSV column count");

  auto num = [](const std::string& s) { return std::stod(s); };
  std::vector<SweepRow> rows;
  for (const auto& f : table.rows) {
    if (f.size() != expected)
      throw std::invalid_argument("short CSV row");
    SweepRow r;
    size_t c = 0;
    r.param = num(f[c++]);
    const std::string& err = f.back();
    if (!err.empty()) {
      r.failed = true;
      r.error = err;
      rows.push_back(std::move(r));
      continue;
    }
    r.energy = num(f[c++]);
    r.gap = f[c].empty() ? std::numeric_limits<double>::quiet_NaN()
                         : num(f[c]);
    ++c;
    r.degenerate = f[c++] == "1";
    for (int a = 0; a < 3; ++a) r.M[a] = num(f[c++]);
    r.g.resize(K);
    for (int k = 0; k < K; ++k) {
      r.g[k].gxx = num(f[c++]);
      r.g[k].gyy = num(f[c++]);
      r.g[k].gzz = num(f[c++]);
    }
    r.ent.tau1 = num(f[c++]);
    r.ent.C.resize(K);
    for (int k = 0; k < K; ++k) r.ent.C[k].C = num(f[c++]);
    for (int k = 0; k < K; ++k)
      r.ent.C[k].branch = ConcurrenceBranch(std::stoi(f[c++]));
    r.ent.tau2 = num(f[c++]);
    if (!f[c].empty()) r.ent.ratio = num(f[c]);
    ++c;
    r.ent.ckw_margin = num(f[c++]);
    r.ent.ckw_satisfied = r.ent.ckw_margin >= -1e-9;
    r.residual = num(f[c++]);
    r.iterations = std::stoi(f[c++]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace factorlat::io
