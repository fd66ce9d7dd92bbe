// End-to-end tests that drive the installed CLI binary. The binary path
// arrives as --qbell-bin=<path>, injected by ctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

std::string g_bin;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = g_bin + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "qbell_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string path_of(const char* name) { return (temp_dir() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("make + analyze on the maximally entangled state") {
  const std::string bell = path_of("bell.json");
  CHECK(run("make --family gamma --theta 0.7853981633974483 --out " + bell).exit_code ==
        0);
  const RunResult res = run("analyze " + bell);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("C       = 1.000000") != std::string::npos);
  CHECK(res.output.find("N       = 2.828427") != std::string::npos);
  CHECK(res.output.find("slack   = 0.000000") != std::string::npos);
  CHECK(res.output.find("member  = true") != std::string::npos);
}

TEST_CASE("analyze on the maximally mixed state") {
  const std::string mixed = path_of("mixed.json");
  std::ofstream out(mixed);
  out << R"({"re": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]],)"
      << R"("im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";
  out.close();
  const RunResult res = run("analyze " + mixed);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("C       = 0.000000") != std::string::npos);
  CHECK(res.output.find("N       = 0.000000") != std::string::npos);
  CHECK(res.output.find("slack   = 2.000000") != std::string::npos);
  CHECK(res.output.find("member  = false") != std::string::npos);
  CHECK(res.output.find("zero correlation") != std::string::npos);
}

TEST_CASE("analyze reports validation failures with exit 2") {
  const std::string bad = path_of("bad.json");
  std::ofstream out(bad);
  out << R"({"re": [[0.5,0,0,0],[0,0.6,0,0],[0,0,0,0],[0,0,0,-0.1]],)"
      << R"("im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";
  out.close();
  const RunResult res = run("analyze " + bad);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("NotPSD") != std::string::npos);
}

TEST_CASE("analyze --json emits machine-readable output") {
  const std::string file = path_of("vw.json");
  CHECK(run("make --family vw --p 0.3 --theta 0.5235987755982988 --out " + file)
            .exit_code == 0);
  const RunResult res = run("analyze --json " + file);
  CHECK(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.output);
  CHECK(std::abs(j["slack"].get<double>()) <= 1e-8);
  CHECK(j["member"].get<bool>());
  CHECK(std::abs(j["C"].get<double>() - 0.86602540378443860) <= 1e-9);
}

TEST_CASE("scan is deterministic and respects the bound") {
  const std::string out1 = path_of("scan1.csv"), out2 = path_of("scan2.csv");
  CHECK(run("scan --count 300 --seed 7 --out " + out1).exit_code == 0);
  CHECK(run("scan --count 300 --seed 7 --out " + out2).exit_code == 0);
  const std::string csv1 = slurp(out1);
  CHECK(csv1 == slurp(out2));  // byte identical
  CHECK(csv1.rfind("id,C,eof,N,bound,slack\n", 0) == 0);

  std::istringstream lines(csv1);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string field;
    std::vector<double> vals;
    std::getline(row, field, ',');  // id
    while (std::getline(row, field, ',')) vals.push_back(std::stod(field));
    REQUIRE(vals.size() == 5);
    const double n = vals[2], slack = vals[4];
    CHECK(n <= 2.0 * std::sqrt(2.0) + 1e-9);
    CHECK(slack >= -1e-8);
    ++rows;
  }
  CHECK(rows == 300);
}

TEST_CASE("rank-1 scans saturate the pure-state relation") {
  const std::string out = path_of("scan_rank1.csv");
  CHECK(run("scan --count 1000 --seed 3 --rank 1 --out " + out).exit_code == 0);
  std::istringstream lines(slurp(out));
  std::string line;
  std::getline(lines, line);
  double max_gap = 0.0;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 6);
    max_gap = std::max(max_gap,
                       std::abs(std::stod(fields[3]) - std::stod(fields[4])));
  }
  CHECK(max_gap <= 1e-7);
}

TEST_CASE("pair-check exit codes") {
  const std::string g1 = path_of("gamma1.json"), g2 = path_of("gamma2.json"),
                    om = path_of("omega.json");
  CHECK(run("make --family gamma --theta 0.39269908169872414 --out " + g1).exit_code == 0);
  CHECK(run("make --family gamma --theta 1.1780972450961724 --out " + g2).exit_code == 0);
  CHECK(run("make --family omega --theta 0.39269908169872414 --out " + om).exit_code == 0);

  const RunResult shared = run("pair-check " + g1 + " " + g2);
  CHECK(shared.exit_code == 0);
  CHECK(shared.output.find("certificate      = true") != std::string::npos);

  const RunResult unshared = run("pair-check " + g1 + " " + om);
  CHECK(unshared.exit_code == 1);
  CHECK(unshared.output.find("certificate      = false") != std::string::npos);

  const std::string garbled = path_of("garbled.json");
  std::ofstream out(garbled);
  out << "{ not json";
  out.close();
  CHECK(run("pair-check " + g1 + " " + garbled).exit_code == 2);
}

TEST_CASE("oracle-compare") {
  const RunResult res = run("oracle-compare --count 5 --seed 11 --grid 16");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("max  |analytic - oracle|") != std::string::npos);

  CHECK(run("oracle-compare --count 5 --grid 4").exit_code == 2);  // usage error
}

TEST_CASE("make validates family parameters") {
  CHECK(run("make --family lambda --theta 0.3 --delta 2 --out " + path_of("l.json"))
            .exit_code == 2);
  CHECK(run("make --family nosuch --theta 0.3 --out " + path_of("n.json")).exit_code ==
        2);
  CHECK(run("make --family vw --p 1.5 --theta 0.3 --out " + path_of("v.json"))
            .exit_code == 2);

  // lambda with a legal sign round-trips through analyze
  const std::string lam = path_of("lambda.json");
  CHECK(run("make --family lambda --theta 0.3 --delta -1 --out " + lam).exit_code == 0);
  CHECK(run("analyze " + lam).exit_code == 0);
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  std::vector<const char*> forwarded;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--qbell-bin=", 0) == 0)
      g_bin = arg.substr(std::string("--qbell-bin=").size());
    else
      forwarded.push_back(argv[i]);
  }
  if (g_bin.empty()) {
    std::fprintf(stderr, "missing --qbell-bin=<path to qbell binary>\n");
    return 1;
  }
  ctx.applyCommandLine(static_cast<int>(forwarded.size()), forwarded.data());
  return ctx.run();
}
