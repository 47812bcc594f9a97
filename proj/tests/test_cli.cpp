#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pscale/cli.hpp"
#include "pscale/model_io.hpp"
#include "pscale/scale.hpp"

using namespace pscale;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "parisian-scale");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_dir() {
  const char* d = std::getenv("PSCALE_TEST_TMP");
  return d ? d : ".";
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = tmp_dir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

const std::string m1_path = write_file("m1.json", R"({"c": 1, "lambda": 1, "phases": [{"weight": 1, "rate": 2}]})");
const std::string m2_path = write_file("m2.json", R"({"c": 0, "sigma2": 2})");

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("scale table header and values") {
  auto r = run({"scale", "--model", m1_path, "--q", "0", "--x-grid", "0:2:5"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(r.out.substr(0, r.out.find('\n')) == "x,W,dW,Wbar,Z,Zbar,Z1");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::stod(rows[1][4]) == 1.0);

  r = run({"scale", "--model", m2_path, "--q", "1", "--x", "1"});
  REQUIRE(r.code == 0);
  rows = parse_csv(r.out);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
  CHECK(rows[1][1].substr(0, 9) == "1.1752011");

  r = run({"scale", "--model", m2_path, "--q", "1", "--r", "3", "--theta", "0.5", "--x-grid", "0:1:3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "x,W,dW,Wbar,Z,Zbar,Z1,Z_theta,W_qr,Z_qr,S");
}

TEST_CASE("CSV output re-parses to the library values exactly") {
  const auto r = run({"scale", "--model", m1_path, "--q", "0.6667", "--r", "0.3", "--x-grid", "0:3:7"});
  REQUIRE(r.code == 0);
  const ScaleContext ctx(load_model(m1_path), 0.6667);
  const ParisianContext p(ctx, 0.3);
  const auto rows = parse_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::strtod(rows[i][0].c_str(), nullptr);
    CHECK(std::strtod(rows[i][1].c_str(), nullptr) == ctx.W(x));
    CHECK(std::strtod(rows[i][3].c_str(), nullptr) == ctx.Wbar(x));
    CHECK(std::strtod(rows[i][6].c_str(), nullptr) == ctx.plain(x, ZKind::Z1));
    CHECK(std::strtod(rows[i][7].c_str(), nullptr) == p.W(x));
    CHECK(std::strtod(rows[i][9].c_str(), nullptr) == p.scriptS(x));
  }
}

TEST_CASE("laws") {
  auto r = run({"law", "--law", "two_sided", "--model", m1_path, "--q", "0", "--x", "1", "--b", "2"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "value"});
  CHECK(std::stod(rows[1][1]) == doctest::Approx((2 - std::exp(-1.0)) / (2 - std::exp(-2.0))).epsilon(1e-12));

  r = run({"law", "--law", "parisian_up_exit", "--model", m2_path, "--q", "1", "--r", "3", "--theta", "INF", "--x", "0", "--b", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(parse_csv(r.out)[1][1]) == doctest::Approx(2.0 / (3 * std::exp(1.0) - std::exp(-1.0))).epsilon(1e-12));

  r = run({"law", "--law", "no_such_law", "--model", m1_path});
  CHECK(r.code == 2);
  CHECK(r.err.find("two_sided") != std::string::npos);
  CHECK(r.err.find("parisian_dividends_penalty") != std::string::npos);

  r = run({"law", "--law", "parisian_severity", "--model", m1_path, "--q", "0.5", "--x", "1", "--b", "2"});
  CHECK(r.code == 2);
}

TEST_CASE("values") {
  auto r = run({"value", "--objective", "dividends_classic", "--model", m2_path, "--q", "1", "--x-grid", "0:1:3", "--b", "1"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "b", "value"});
  CHECK(std::stod(rows[3][2]) == doctest::Approx(std::sinh(1.0) / std::cosh(1.0)).epsilon(1e-12));

  r = run({"value", "--objective", "slg_parisian", "--model", m1_path, "--q", "0.3333333333333333", "--r", "0.3333333333333333",
           "--k", "5", "--b", "optimal", "--x", "0"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(parse_csv(r.out)[1][1]) > 0.0);

  r = run({"value", "--objective", "slg_classic", "--model", m1_path, "--q", "0.5", "--k", "2", "--b", "optimal", "--b-max", "0.01"});
  CHECK(r.code == 1);

  r = run({"value", "--objective", "bogus", "--model", m1_path, "--q", "0.5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("slg_parisian") != std::string::npos);
}

TEST_CASE("efficiency JSON") {
  auto r = run({"efficiency", "--model", m1_path, "--q", "0.3333333333333333", "--r", "0.3333333333333333", "--k", "3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["threshold"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(j["efficient"].get<bool>());
  CHECK(j["patience"].get<double>() == 0.0);

  r = run({"efficiency", "--model", m1_path, "--q", "0.3333333333333333", "--r", "0.3333333333333333", "--k", "5"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK_FALSE(j["efficient"].get<bool>());
  CHECK(j["patience"].get<double>() > 0.0);
}

TEST_CASE("simulate JSON") {
  const auto r = run({"simulate", "--law", "two_sided", "--model", m1_path, "--q", "0", "--x", "1", "--b", "2", "--paths", "20000", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["analytic"].get<double>() == doctest::Approx(0.8752895).epsilon(1e-6));
  CHECK(std::abs(j["z_score"].get<double>()) < 4.0);
  CHECK(j["n_paths"].get<std::size_t>() == 20000);
  CHECK(j["ci95"].size() == 2);

  CHECK(run({"simulate", "--law", "two_sided", "--model", m2_path, "--q", "1", "--x", "1", "--b", "2"}).code == 2);
}

TEST_CASE("network JSON") {
  const std::string spec = write_file("net.json", R"({"q": 0.2, "cb": {"c": 1},
    "subsidiaries": [{"c": 2, "lambda": 1, "phases": [{"weight": 1, "rate": 1.5}], "alpha": 0.5},
                     {"c": 3, "lambda": 1.5, "phases": [{"weight": 1, "rate": 2}], "alpha": 0.5}]})");
  const auto r = run({"network", "--spec", spec, "--u0", "1", "--b", "2", "--paths", "2000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["cheap"].get<bool>());
  CHECK(j["gamma"].get<double>() == doctest::Approx(2.0));
  CHECK(j["c_tilde"].get<double>() == doctest::Approx(10.0));
  CHECK(j["max_path_gap"].get<double>() < 1e-9);
  CHECK(j["bailouts"].get<std::size_t>() == 0);
}

TEST_CASE("exit codes and output files") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"scale", "--model", tmp_dir() + "/missing.json"}).code == 2);
  const std::string bad = write_file("bad.json", R"({"c": 1, "lambda": 1, "phases": [{"weight": 0.5, "rate": 2}]})");
  CHECK(run({"scale", "--model", bad}).code == 2);
  CHECK(run({"scale", "--model", m1_path, "--x-grid", "2:1:3"}).code == 2);
  const std::string out = tmp_dir() + "/out.csv";
  CHECK(run({"scale", "--model", m1_path, "--x", "0.5", "--out", out}).code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,W,dW,Wbar,Z,Zbar,Z1");
}

TEST_CASE("model JSON round trip") {
  const auto m = load_model(m1_path);
  const auto back = parse_model(model_to_json(m));
  CHECK(back.premium() == m.premium());
  CHECK(back.intensity() == m.intensity());
  CHECK(back.phases().size() == 1);
  CHECK(back.phases()[0].rate == 2.0);
}
