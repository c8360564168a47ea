#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "smoothnum/cli.hpp"
#include "smoothnum/errors.hpp"

using namespace smoothnum;

namespace {

const std::string kCli = SMOOTHNUM_CLI;
const std::string kZeros = std::string(SMOOTHNUM_FIXTURES) + "/zeros1e4.txt";

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

Outcome invoke(const std::string& args) {
  std::string err_path = "/tmp/smoothnum_cli_err.txt";
  std::string cmd = kCli + " " + args + " 2>" + err_path;
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream e(err_path);
  o.err.assign(std::istreambuf_iterator<char>(e), {});
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("format_real round-trips exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t bits = rng();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (std::isnan(v)) continue;
    std::string text = format_real(v);
    double back = 0;
    std::istringstream in("v\n" + text + "\n");
    CsvTable t = parse_csv(in);
    back = t.rows.at(0).at(0);
    CHECK(same_bits(v, back));
  }
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1e300) == "1.0000000000000001e+300");
  CHECK(format_real(7) == "7");
}

TEST_CASE("parse_csv reports the failing line") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_csv(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1L;
  };
  CHECK(line_of("a,b\n1,2\n3\n") == 3);
  CHECK(line_of("a,b\n1,2\n3,x\n") == 3);
  CHECK(line_of("a,b\n\n1,2\n") == 2);
  std::istringstream ok("a,b\n1,nan\n");
  CsvTable t = parse_csv(ok);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(std::isnan(t.rows[0][1]));
}

TEST_CASE("grid specifications") {
  GridSpec g = parse_grid("500:5000:8");
  auto pts = g.points();
  REQUIRE(pts.size() == 8);
  CHECK(pts.front() == 500);
  CHECK(pts.back() == 5000);
  CHECK(pts[1] / pts[0] == doctest::Approx(pts[7] / pts[6]).epsilon(1e-12));
  CHECK(parse_grid("1:2:0").points().empty());
  CHECK(parse_grid("7:9:1").points() == std::vector<double>{7});
  CHECK_THROWS_AS(parse_grid("500:5000"), ParseError);
  CHECK_THROWS_AS(parse_grid("a:5000:3"), ParseError);
  CHECK_THROWS_AS(parse_grid("1:2:3:4"), ParseError);
}

TEST_CASE("run in process") {
  RunConfig cfg;
  cfg.command = Command::Psi;
  cfg.x = 10;
  cfg.y = 3;
  std::ostringstream out, log;
  run(cfg, out, log);
  CHECK(out.str() == "7\n");

  RunConfig grid;
  grid.command = Command::VerifyTheorem1;
  grid.grid = parse_grid("500:5000:0");
  grid.beta0s = {0.7};
  std::ostringstream g;
  run(grid, g, log);
  CHECK(g.str() ==
        "x,y,u,beta,psi_exact,lambda,g_beta,ratio_uncorrected,ratio_corrected,model_rhs,"
        "normalized_deviation,psiover_rhs\n");

  RunConfig bad = grid;
  bad.beta0s = {0.4};
  CHECK_THROWS_AS(validate(bad), DomainError);
  RunConfig no_zeros;
  no_zeros.command = Command::LiDensity;
  CHECK_THROWS_AS(validate(no_zeros), DomainError);
}

TEST_CASE("binary: outputs and exit codes") {
  Outcome psi = invoke("psi --x 10 --y 3");
  CHECK(psi.status == 0);
  CHECK(psi.out == "7\n");

  Outcome empty = invoke("verify-theorem1 --grid 500:5000:0 --beta0 0.7");
  CHECK(empty.status == 0);
  CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);

  struct Case {
    std::string args;
    int status;
    std::string prefix;
  };
  for (const Case& c : {Case{"psi --x 10", 2, "error[usage]:"},
                        Case{"nosuchcommand", 2, "error[usage]:"},
                        Case{"verify-theorem1 --grid 5:6 --beta0 0.7", 3, "error[parse]:"},
                        Case{"verify-theorem1 --grid 500:600:2 --beta0 0.3", 4, "error[domain]:"},
                        Case{"li-density --zeros " + kZeros + " --T 99999 --n 1000", 5, "error[range]:"},
                        Case{"psi --x 1000000000000000000 --y 5000", 6, "error[resource]:"},
                        Case{"li-density --zeros /nonexistent --n 1000", 7, "error[io]:"}}) {
    Outcome o = invoke(c.args);
    CAPTURE(c.args);
    CHECK(o.status == c.status);
    CHECK(o.err.rfind(c.prefix, 0) == 0);
    CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
  }

  std::ofstream("/tmp/smoothnum_bad_zeros.txt") << "14.134725\n21.02\nxyz\n";
  Outcome bad = invoke("li-density --zeros /tmp/smoothnum_bad_zeros.txt --n 1000");
  CHECK(bad.status == 3);
  CHECK(bad.err.find("line 3") != std::string::npos);
}

TEST_CASE("binary: config file values yield to flags") {
  std::ofstream("/tmp/smoothnum_cfg.toml") << "[psi]\nx = 100\ny = 2\n";
  CHECK(invoke("--config /tmp/smoothnum_cfg.toml psi").out == "7\n");
  CHECK(invoke("--config /tmp/smoothnum_cfg.toml psi --y 3").out ==
        invoke("psi --x 100 --y 3").out);
}

TEST_CASE("binary: reports are byte-identical across runs and threads") {
  std::string args = "verify-psiover --grid 500:3000:4 --beta0 0.8 --u 2.5 --zeros " + kZeros +
                     " --T 1000 -o /tmp/smoothnum_a.csv";
  REQUIRE(invoke(args).status == 0);
  REQUIRE(invoke("verify-psiover --grid 500:3000:4 --beta0 0.8 --u 2.5 --zeros " + kZeros +
                 " --T 1000 --threads 3 -o /tmp/smoothnum_b.csv")
              .status == 0);
  std::string a = slurp("/tmp/smoothnum_a.csv");
  CHECK(a == slurp("/tmp/smoothnum_b.csv"));
  std::istringstream in(a);
  CsvTable t = parse_csv(in);
  CHECK(t.rows.size() == 8);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    bool ordered = t.rows[i - 1][1] < t.rows[i][1] ||
                   (t.rows[i - 1][1] == t.rows[i][1] && t.rows[i - 1][0] < t.rows[i][0]);
    CHECK(ordered);
  }
}

TEST_CASE("binary: plot data and script") {
  Outcome o = invoke("li-density --zeros " + kZeros +
                     " --ordinates 50 --n 2000 --plot /tmp/smoothnum_plot.dat");
  CHECK(o.status == 0);
  std::string data = slurp("/tmp/smoothnum_plot.dat");
  CHECK(data.rfind("# sample histogram\n", 0) == 0);
  CHECK(slurp("/tmp/smoothnum_plot.dat.py").find("matplotlib") != std::string::npos);
}

}  // TEST_SUITE
