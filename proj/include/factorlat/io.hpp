#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "factorlat/factorization.hpp"
#include "factorlat/sweep.hpp"

namespace factorlat::io {

inline constexpr const char* kArtifactVersion = "factorlat 0.1.0";

// %.12g, the fixed precision of every floating-point field we emit.
std::string format_g(double v);

// RFC-4180 quoting: wraps in double quotes when the field contains a comma,
// quote or newline.
std::string csv_field(const std::string& s);

// Fully resolved run configuration; emitted verbatim into every output file
// so that runs are reproducible from their artifacts alone.
struct RunHeader {
  std::string subcommand;
  LatticeSpec lattice;
  ModelParams model;
  SolverConfig solver;
  // sweep-only fields
  std::string parameter = "hz";
  double from = 0.0, to = 0.0, step = 0.0;
  int shells = 0;
  int jobs = 1;
};

nlohmann::json header_json(const RunHeader& h);

// '#'-prefixed provenance lines (version + resolved config), one per key.
std::vector<std::string> provenance_lines(const RunHeader& h);

// Number of distance classes reported per row under this header.
int shell_count(const RunHeader& h);

// Columns: param,energy,gap,degenerate,Mx,My,Mz,gxx_d1,gyy_d1,gzz_d1,...,
// tau1,C_d1,...,branch_d1,...,tau2,R,ckw_margin,residual,iters,error.
// R prints empty when undefined; failed rows have empty numeric fields and a
// populated error column.
void write_sweep_csv(std::ostream& os, const RunHeader& h,
                     const std::vector<SweepRow>& rows);

// JSON mirror: {config, rows}; same values as the CSV plus the Wootters
// oracle column and the CKW flag.
nlohmann::json sweep_json(const RunHeader& h, const std::vector<SweepRow>& rows);

nlohmann::json certificate_json(const RunHeader& h,
                                const FactorizationCertificate& cert);

struct CsvTable {
  std::vector<std::string> comments;              // leading '#' lines, verbatim
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180-style reader (quotes, embedded commas/newlines); '#' lines before
// the header are collected as comments.
CsvTable read_csv(std::istream& is);

// Reconstructs sweep rows from a table written by write_sweep_csv; fields not
// present in the CSV (Wootters column, branch internals) are left default.
std::vector<SweepRow> parse_sweep_rows(const CsvTable& table);

}  // namespace factorlat::io
