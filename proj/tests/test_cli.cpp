#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "helpers.hpp"
#include "zlab/cli.hpp"

using namespace zlab;
using namespace zlab::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "centralizer_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("1") == cplx(1.0));
  CHECK(parse_complex("-0.5") == cplx(-0.5));
  CHECK(parse_complex("2j") == cplx(0.0, 2.0));
  CHECK(parse_complex("1+2j") == cplx(1.0, 2.0));
  CHECK(parse_complex("1.5e-3-4e-2j") == cplx(1.5e-3, -4e-2));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK_THROWS_AS(parse_complex("abc"), UsageError);
  CHECK_THROWS_AS(parse_complex(""), UsageError);
  const auto list = parse_complex_list("0,0.5,0.3+0.2j");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == cplx(0.3, 0.2));
  CHECK(format_complex(cplx(0.25, -1.0)) == "0.25-1j");
  const cplx z(0.1, 1.0 / 3.0);
  CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("JSON configuration") {
  RunConfig cfg;
  apply_json_config(cfg, R"({"n": 3, "seed": 7, "samples": 5, "tolerances": {"chamber": 1e-8,
                             "toda.embedding_roundtrip": 1e-6}, "t": ["0.1", "1+1j"]})");
  CHECK(cfg.n == 3);
  CHECK(cfg.seed == 7);
  CHECK(cfg.samples == 5);
  CHECK(cfg.tol.chamber == 1e-8);
  CHECK(cfg.thresholds.at("toda.embedding_roundtrip") == 1e-6);
  REQUIRE(cfg.times.size() == 2);
  CHECK(cfg.times[1] == cplx(1.0, 1.0));
  CHECK_THROWS_AS(apply_json_config(cfg, "{\"n\": 3,"), UsageError);
  CHECK_THROWS_AS(apply_json_config(cfg, R"({"colour": 1})"), UsageError);
  CHECK_THROWS_AS(apply_json_config(cfg, R"({"n": "three"})"), UsageError);
  CHECK_THROWS_AS(apply_tolerance(cfg, "bogus", 1.0), UsageError);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"check", "--n", "9"}).code == 2);
  CHECK(invoke({"check", "--n", "1"}).code == 2);
  CHECK(invoke({"check", "--samples", "0"}).code == 2);
  CHECK(invoke({"check", "--tol.unknown", "1"}).code == 2);
  CHECK(invoke({"check", "--module", "nope"}).code == 2);
  CHECK(invoke({"flow", "--i", "2"}).code == 2);
  CHECK(invoke({"flow", "--roots=-1"}).code == 2);
  CHECK(invoke({"cjl", "--fd-step", "1e-2"}).code == 2);
  CHECK(invoke({"embed", "--diag", "0,0,0"}).code == 2);
  CHECK(invoke({"check", "--config", "/nonexistent/config.json"}).code == 2);
}

TEST_CASE("flow CSV for the sl2 golden point") {
  const Outcome o = invoke({"flow", "--n", "2", "--t", "0,0.25,1,2"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "t,a1,a2,y1,f1");
  const double ts[] = {0.0, 0.25, 1.0, 2.0};
  for (int k = 0; k < 4; ++k) {
    const auto f = fields(rows[static_cast<std::size_t>(k + 1)]);
    REQUIRE(f.size() == 5);
    const double t = ts[k];
    CHECK(std::abs(parse_complex(f[1]) - std::tanh(t)) <= 1e-10);
    CHECK(std::abs(parse_complex(f[2]) + std::tanh(t)) <= 1e-10);
    CHECK(std::abs(parse_complex(f[3]) - 1.0 / (std::cosh(t) * std::cosh(t))) <= 1e-10);
    CHECK(std::abs(parse_complex(f[4]) - 1.0) <= 1e-10);
  }
}

TEST_CASE("flow reports the blow-up and exits with 1") {
  const Outcome o = invoke({"flow", "--t", "0,1.5707963267948966j"});
  CHECK(o.code == 1);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].find("NotInGStar(minor=1)") != std::string::npos);
  CHECK(std::count(rows[2].begin(), rows[2].end(), ',') == 4);
}

TEST_CASE("flow as JSON") {
  const Outcome o = invoke({"flow", "--t", "0.5", "--format", "json"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("\"command\":\"flow\"") != std::string::npos);
}

TEST_CASE("embed of the sl2 golden point") {
  const Outcome o = invoke({"embed", "--format", "csv"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "field,row,col,value");
  const double expected_g[] = {0, 1, 1, 0};
  const double expected_x[] = {0, 1, 1, 0};
  for (int k = 0; k < 4; ++k) {
    const auto g = fields(rows[static_cast<std::size_t>(1 + k)]);
    const auto x = fields(rows[static_cast<std::size_t>(5 + k)]);
    CHECK(g[0] == "g");
    CHECK(x[0] == "x");
    CHECK(std::abs(parse_complex(g[3]) - expected_g[k]) <= 1e-12);
    CHECK(std::abs(parse_complex(x[3]) - expected_x[k]) <= 1e-12);
  }
  CHECK(std::stod(fields(rows[9])[3]) <= 1e-8);
  CHECK(invoke({"embed", "--tol.toda.embedding_roundtrip", "1e-20"}).code == 1);
}

TEST_CASE("check output is deterministic and excludes timing") {
  const Outcome a = invoke({"check", "--n", "3", "--samples", "5", "--module", "toda"});
  const Outcome b = invoke({"check", "--n", "3", "--samples", "5", "--module", "toda"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wall") == std::string::npos);
  CHECK(a.err.find("wall") != std::string::npos);
  const Outcome csv = invoke({"check", "--samples", "3", "--module", "linalg", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(lines(csv.out)[0] == "name,max_deviation,tolerance,bound,pass,samples,skipped,errors,first_error");
}

TEST_CASE("a threshold override can fail a check") {
  const Outcome o = invoke({"check", "--samples", "3", "--module", "linalg",
                            "--tol.linalg.eig_reconstruction=1e-300"});
  CHECK(o.code == 1);
  CHECK(o.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("cjl subcommand") {
  const Outcome o = invoke({"cjl", "--n", "2", "--samples", "3", "--format", "csv"});
  CHECK(o.code == 0);
  CHECK(lines(o.out).size() == 5);
}

TEST_CASE("the installed binary honours --out and exit codes") {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "centralizer_lab_cli_test.json";
  const fs::path cfg = fs::temp_directory_path() / "centralizer_lab_cli_test_cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"n": 2, "samples": 3, "module": "lie_core"})";
  }
  const std::string bin = CENTRALIZER_LAB_BIN;
  const auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " 2>/dev/null").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(bin + " check --config " + cfg.string() + " --out " + out.string()) == 0);
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("lie_core.sl2_triple") != std::string::npos);
  CHECK(status(bin + " check --n 9 >/dev/null") == 2);
  CHECK(status(bin + " flow --t 1.5707963267948966j >/dev/null") == 1);
  fs::remove(out);
  fs::remove(cfg);
}
