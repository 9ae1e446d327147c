#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "factorlat/cli.hpp"
#include "factorlat/io.hpp"

using namespace factorlat;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "factorlat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("missing subcommand or flag is a usage error") {
  CHECK(run({}).code == 1);
  CHECK(run({"sweep", "--L", "8"}).code == 1);  // --from/--to/--step missing
  CHECK(run({"ground", "--lattice", "cube"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
}

TEST_CASE("help exits zero") {
  RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ground") != std::string::npos);
}

TEST_CASE("site-count cap is a usage error") {
  RunResult r = run({"ground", "--lattice", "square", "--L", "6"});
  CHECK(r.code == 1);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("ground run emits one CSV record") {
  RunResult r = run({"ground", "--L", "6", "--dy", "0.25", "--hz", "1.0"});
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  io::CsvTable t = io::read_csv(is);
  REQUIRE(t.rows.size() == 1);
  auto rows = io::parse_sweep_rows(t);
  CHECK_FALSE(rows[0].failed);
  CHECK(rows[0].energy < 0);
}

TEST_CASE("solver failure maps to exit 2") {
  RunResult r = run({"ground", "--L", "8", "--dy", "0.25", "--hz", "1.0",
                     "--max-iter", "2", "--tol", "1e-14"});
  CHECK(r.code == 2);
  CHECK(r.err.find("solver failed") != std::string::npos);
}

TEST_CASE("sweep validates the grid flags") {
  CHECK(run({"sweep", "--L", "6", "--from", "0", "--to", "1", "--step", "0"})
            .code == 1);
  CHECK(run({"sweep", "--L", "6", "--from", "2", "--to", "1", "--step", "0.5"})
            .code == 1);
}

TEST_CASE("sweep writes files deterministically and prints a summary") {
  const std::string path_a = "/tmp/factorlat_test_a.csv";
  const std::string path_b = "/tmp/factorlat_test_b.csv";
  std::vector<std::string> args = {"sweep", "--L",   "8",   "--dy",  "0.25",
                                   "--from", "1.3",  "--to", "1.8",
                                   "--step", "0.1",  "--k",  "2"};
  auto with_out = [&](const std::string& p) {
    auto a = args;
    a.push_back("--out");
    a.push_back(p);
    return a;
  };
  RunResult ra = run(with_out(path_a));
  RunResult rb = run(with_out(path_b));
  CHECK(ra.code == 0);
  CHECK(ra.err.find("h_f estimate") != std::string::npos);
  std::ifstream fa(path_a), fb(path_b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK_FALSE(sa.str().empty());
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("sweep JSON format round-trips through the parser") {
  RunResult r = run({"sweep", "--L", "6", "--dy", "0.25", "--from", "1.0",
                     "--to", "1.4", "--step", "0.2", "--format", "json"});
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 3);
  CHECK(j["config"]["sweep"]["param"] == "hz");
}

TEST_CASE("factorize certifies the chain closed form") {
  RunResult r = run({"factorize", "--dy", "0.25", "--dz", "1", "--L", "10"});
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["certificate"]["valid"] == true);
  CHECK(std::abs(j["certificate"]["energy_per_site"].get<double>() + 0.5625) <
        1e-10);
}

TEST_CASE("factorize with a malformed direction is a usage error") {
  CHECK(run({"factorize", "--direction", "1;2;3"}).code == 1);
}

TEST_CASE("factorize general direction passes at N = 8") {
  RunResult r = run({"factorize", "--dy", "0.5", "--dz", "0.8", "--L", "8",
                     "--direction", "1,1,1"});
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["certificate"]["valid"] == true);
}

TEST_CASE("config file provides defaults that flags override") {
  const std::string cfg = "/tmp/factorlat_test.cfg";
  {
    std::ofstream f(cfg);
    f << "L=6\ndy=0.25\nhz=1.0\n";
  }
  RunResult file_only = run({"ground", "--config", cfg});
  CHECK(file_only.code == 0);
  CHECK(file_only.out.find("# dy = 0.25") != std::string::npos);
  RunResult overridden = run({"ground", "--config", cfg, "--dy", "0.5"});
  CHECK(overridden.code == 0);
  CHECK(overridden.out.find("# dy = 0.5") != std::string::npos);
  std::remove(cfg.c_str());
}
