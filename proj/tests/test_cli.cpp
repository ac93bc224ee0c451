#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "ffdot/cli.hpp"
#include "ffdot/pointset.hpp"

using namespace ffdot;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

// In-process invocation with stdout/stderr captured.
RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
  RunResult r;
  try {
    r.code = ffdot_main(args);
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// CSV field splitter aware of double-quoted cells.
std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (quoted) {
      if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"construct"}).code == 2);  // missing required flags
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"construct", "--help"}).code == 0);
}

TEST_CASE("construct writes the documented format") {
  RunResult r = run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "# ffdot pointset v1\nq=3 d=2\n1,0\n2,0\n0,1\n0,2\n");
  CHECK(r.err.find("construct: family=sphere") != std::string::npos);

  TempFile tmp("cli_construct_out.txt");
  RunResult f = run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "2", "--param",
                         "j=1", "--out", tmp.path});
  CHECK(f.code == 0);
  CHECK(slurp(tmp.path) == r.out);
}

TEST_CASE("construct validates its arguments") {
  CHECK(run_cli({"construct", "--family", "blob", "--q", "3", "--d", "2"}).code == 2);
  CHECK(run_cli({"construct", "--family", "sphere", "--q", "4", "--d", "2"}).code == 2);
  CHECK(run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "0"}).code == 2);
  // 127^3 exceeds the space cap.
  CHECK(run_cli({"construct", "--family", "sphere", "--q", "127", "--d", "3"}).code == 2);
  // variety family needs a --variety spec.
  CHECK(run_cli({"construct", "--family", "variety", "--q", "3", "--d", "2"}).code == 2);
  // size beyond the family is a usage error.
  CHECK(run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "2", "--size", "5"}).code ==
        2);
}

TEST_CASE("construct then analyze round-trips") {
  TempFile e("cli_e.txt"), f("cli_f.txt");
  REQUIRE(run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "2", "--out", e.path})
              .code == 0);
  REQUIRE(run_cli({"construct", "--family", "sphere", "--q", "3", "--d", "2", "--out", f.path})
              .code == 0);

  RunResult r = run_cli({"analyze", "--e", e.path, "--f", f.path, "--seed", "11"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["q"] == 3);
  CHECK(j["e_size"] == 4);
  CHECK(j["pi_size"] == 3);
  CHECK(j["nu_second_moment"] == "96");
  CHECK(j["seed"] == 11);
  CHECK(j["e_family"] == "file");

  RunResult c = run_cli({"analyze", "--e", e.path, "--f", f.path, "--format", "csv"});
  REQUIRE(c.code == 0);
  auto rows = lines_of(c.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rfind("q,d,", 0) == 0);
  CHECK(split_row(rows[1]).size() == split_row(rows[0]).size());
}

TEST_CASE("analyze rejects bad inputs") {
  CHECK(run_cli({"analyze", "--e", "no_such_file.txt", "--f", "no_such_file.txt"}).code == 2);

  TempFile bad("cli_bad_set.txt");
  std::ofstream(bad.path) << "# ffdot pointset v1\nq=3 d=2\n7,1\n";
  CHECK(run_cli({"analyze", "--e", bad.path, "--f", bad.path}).code == 2);

  TempFile e(std::string("cli_e2.txt"));
  std::ofstream(e.path) << "# ffdot pointset v1\nq=3 d=2\n1,0\n";
  TempFile g("cli_g.txt");
  std::ofstream(g.path) << "# ffdot pointset v1\nq=5 d=2\n1,0\n";
  CHECK(run_cli({"analyze", "--e", e.path, "--f", g.path}).code == 2);  // mismatched spaces
  CHECK(run_cli({"analyze", "--e", e.path, "--f", e.path, "--format", "xml"}).code == 2);
}

TEST_CASE("verify runs a suite from the command line") {
  RunResult r = run_cli({"verify", "--suite", "plancherel", "--q", "5", "--d", "2", "--trials",
                         "10", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("suite plancherel: PASS") != std::string::npos);
  CHECK(run_cli({"verify", "--suite", "warp", "--q", "5", "--d", "2"}).code == 2);
  CHECK(run_cli({"verify", "--q", "2", "--d", "2"}).code == 2);
}

TEST_CASE("sweep emits one reproducible row per cell") {
  std::vector<std::string> args = {"sweep", "--q",      "3",  "--d",    "2", "--k",
                                   "2",     "--trials", "10", "--seed", "5"};
  RunResult a = run_cli(args);
  REQUIRE(a.code == 0);
  RunResult b = run_cli(args);
  CHECK(a.out == b.out);  // same seed, byte-identical output

  auto rows = lines_of(a.out);
  REQUIRE(rows.size() == 2);  // header + one cell
  auto header = split_row(rows[0]);
  auto cell = split_row(rows[1]);
  REQUIRE(header.size() == cell.size());
  CHECK(header[0] == "q");
  CHECK(cell[0] == "3");
  CHECK(cell[2] == "uniform-random");
  CHECK(cell[3] == "uniform-random");

  // Two grid values produce two rows.
  RunResult two = run_cli({"sweep", "--q", "3", "5", "--d", "2", "--k", "2", "--trials", "5"});
  REQUIRE(two.code == 0);
  CHECK(lines_of(two.out).size() == 3);
}

TEST_CASE("sweep closed-form sanity on a sphere pair cell") {
  RunResult r = run_cli({"sweep", "--q", "13", "--d", "2", "--family", "sphere", "--k", "4",
                         "--trials", "40", "--seed", "7"});
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);
  auto header = split_row(rows[0]);
  auto cell = split_row(rows[1]);
  auto field = [&](const std::string& name) -> std::string {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return cell[i];
    FAIL("missing column " << name);
    return {};
  };
  double e_size = std::stod(field("e_size"));
  double f_size = std::stod(field("f_size"));
  long trials = std::stol(field("trials"));
  CHECK(std::stol(field("n_valid_fourier")) == trials);  // spheres avoid the origin
  double kk = e_size * f_size / 169.0;
  double closed_form = 13.0 * kk / (kk + 2.0);
  CHECK(std::stod(field("min_fourier_over_q")) * 13.0 >= closed_form - 1e-6);
  CHECK(std::stod(field("min_pi_over_q")) * 13.0 >= closed_form - 1e-6);
}

TEST_CASE("sweep validates its grid") {
  CHECK(run_cli({"sweep", "--q", "4", "--d", "2", "--k", "2", "--trials", "5"}).code == 2);
  CHECK(run_cli({"sweep", "--q", "3", "--d", "1", "--k", "2", "--trials", "5"}).code == 2);
  CHECK(run_cli({"sweep", "--q", "3", "--d", "2", "--k", "0", "--trials", "5"}).code == 2);
  CHECK(run_cli({"sweep", "--q", "3", "--d", "2", "--k", "2", "--trials", "0"}).code == 2);
  CHECK(run_cli({"sweep", "--q", "3", "--d", "2", "--k", "2", "--format", "json"}).code == 2);
  CHECK(run_cli({"sweep", "--q", "3", "--d", "2", "--family", "variety"}).code == 2);  // no spec
}

TEST_CASE("probe accepts origin-free varieties only") {
  RunResult sphere = run_cli({"probe", "--variety", "1,1,1;0,0,0;-1", "--q", "5", "--d", "3",
                              "--k", "2", "--trials", "10", "--seed", "3"});
  REQUIRE(sphere.code == 0);
  auto rows = lines_of(sphere.out);
  REQUIRE(rows.size() == 2);
  auto header = split_row(rows[0]);
  auto cell = split_row(rows[1]);
  REQUIRE(header.size() == cell.size());
  auto field = [&](const std::string& name) -> std::string {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return cell[i];
    FAIL("missing column " << name);
    return {};
  };
  CHECK(field("v_size") == "30");
  CHECK(std::stol(field("v_max_line_count")) <= 2);
  CHECK(std::stod(field("min_pi_over_q")) > 0.0);

  // The cone passes through the origin: refused outright.
  RunResult cone =
      run_cli({"probe", "--variety", "1,1,1;0,0,0;0", "--q", "5", "--d", "3", "--trials", "5"});
  CHECK(cone.code == 2);
  CHECK(cone.err.find("origin") != std::string::npos);

  // A translate that moves it off the origin is accepted.
  RunResult moved = run_cli({"probe", "--variety", "1,1,1;0,0,0;0", "--translate", "0,0,1", "--q",
                             "5", "--d", "3", "--trials", "5"});
  CHECK(moved.code == 0);

  // Reproducible output, like sweep.
  RunResult again = run_cli({"probe", "--variety", "1,1,1;0,0,0;-1", "--q", "5", "--d", "3",
                             "--k", "2", "--trials", "10", "--seed", "3"});
  CHECK(again.out == sphere.out);
}

TEST_CASE("probe validates its variety text") {
  CHECK(run_cli({"probe", "--variety", "1,1;0,0,0;4", "--q", "5", "--d", "3"}).code == 2);
  CHECK(run_cli({"probe", "--variety", "garbage", "--q", "5", "--d", "3"}).code == 2);
  CHECK(run_cli({"probe", "--q", "5", "--d", "3"}).code == 2);  // --variety is required
}
