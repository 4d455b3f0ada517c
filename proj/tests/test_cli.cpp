#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "alr/cli.hpp"

namespace fs = std::filesystem;
using alr::cli::json;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("alr_cli_test_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Runs the installed binary; returns its exit status.
int run_binary(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(ALR_CLI_PATH) + " " + args + " 2>" + (dir / "stderr.txt").string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path write_spec(const fs::path& dir, const std::string& name, const json& spec) {
  const auto p = dir / name;
  std::ofstream(p) << spec.dump();
  return p;
}

const json sweep_spec = json::parse(R"({
  "condition": "denominator", "n0": 2,
  "config": {"eps_s": -1.2, "delta": 0.01},
  "grid": {"min": 0.5, "max": 3.0, "count": 26}
})");

}  // namespace

TEST_CASE("find-resonance through the binary reproduces the n0 = 2 pair") {
  Scratch s("fr");
  const auto spec = write_spec(s.dir, "fr.json", json{{"n0", 2}, {"output", {{"format", "json"}}}});
  REQUIRE(run_binary("find-resonance --spec " + spec.string() + " --out " + (s.dir / "out").string(), s.dir) == 0);
  const auto doc = json::parse(slurp(s.dir / "out" / "find-resonance.json"));
  const auto& r = doc["result"]["results"][0];
  CHECK(std::abs(r["eps_s"].get<double>() + 1.237160) < 1e-6);  // tabulated to six places
  CHECK(std::abs(r["delta"].get<double>() - 0.038434) < 1e-6);
  CHECK(doc["spec"]["max_iter"] == 200);

  const auto manifest = json::parse(slurp(s.dir / "out" / "manifest.json"));
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["outputs"][0] == "find-resonance.json");
  CHECK(manifest["build"].contains("boost"));
  CHECK(manifest["spec"] == doc["spec"]);
}

TEST_CASE("transparent solve returns the source field and zero energy") {
  Scratch s("solve");
  json spec{{"config", {{"eps_s", 1.0}, {"k", 1.3}}},
            {"source", {{"type", "point"}, {"radius", 2.0}, {"n_max", 30}}},
            {"output", {{"format", "json"}}}};
  auto res = alr::cli::run("solve", spec, s.dir, 1);
  REQUIRE(res.exit_code == 0);
  const auto doc = json::parse(slurp(s.dir / "solve.json"));
  for (const auto& p : doc["result"]["samples"]) {
    CHECK(p["u"]["re"].get<double>() == Catch::Approx(p["source"]["re"].get<double>()).epsilon(1e-9));
    CHECK(p["u"]["im"].get<double>() == Catch::Approx(p["source"]["im"].get<double>()).epsilon(1e-9));
  }
  CHECK(doc["result"]["samples"].size() == 16);
  CHECK(doc["result"]["energy"]["total"] == 0.0);
}

TEST_CASE("sweep-condition CSV layout and job-count independence") {
  Scratch s("sweep");
  const auto spec = write_spec(s.dir, "sw.json", sweep_spec);
  REQUIRE(run_binary("sweep-condition --spec " + spec.string() + " --jobs 1 --out " + (s.dir / "a").string(), s.dir) == 0);
  REQUIRE(run_binary("sweep-condition --spec " + spec.string() + " --jobs 3 --out " + (s.dir / "b").string(), s.dir) == 0);
  const auto a = slurp(s.dir / "a" / "sweep-condition.csv");
  CHECK(a == slurp(s.dir / "b" / "sweep-condition.csv"));
  CHECK(a.rfind("k,denominator_re,denominator_im,denominator_abs,raw_log10_abs,error\n", 0) == 0);
  CHECK(a.find("\n# brackets\nlo,hi,part,root,") != std::string::npos);
  // Three sign changes on this grid, each refined.
  const auto doc = alr::cli::run("sweep-condition", sweep_spec, s.dir / "c", 1);
  REQUIRE(doc.exit_code == 0);
  std::istringstream lines(a.substr(a.find("# brackets")));
  std::string line;
  int brackets = 0;
  std::getline(lines, line);
  std::getline(lines, line);
  while (std::getline(lines, line) && !line.empty()) ++brackets;
  CHECK(brackets == 3);
}

TEST_CASE("failing grid points become error rows") {
  Scratch s("errrows");
  json spec = sweep_spec;
  spec["grid"] = {{"parameter", "delta"}, {"values", {-1e-3, 1e-3, 1e-2}}};
  auto res = alr::cli::run("sweep-condition", spec, s.dir, 1);
  REQUIRE(res.exit_code == 0);
  const auto csv = slurp(s.dir / "sweep-condition.csv");
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(first.rfind("-0.001,nan,nan,nan,nan,", 0) == 0);
  CHECK(first.size() > std::string("-0.001,nan,nan,nan,nan,").size());
  CHECK(second.find("nan") == std::string::npos);
}

TEST_CASE("invalid specs exit 2 with an error record") {
  Scratch s("invalid");
  const auto out = (s.dir / "out").string();
  auto spec = write_spec(s.dir, "bad.json", json{{"n0", 2}, {"max_iter", 0}});
  CHECK(run_binary("find-resonance --spec " + spec.string() + " --out " + out, s.dir) == 2);
  auto err = json::parse(slurp(s.dir / "out" / "error.json"));
  CHECK(err["kind"] == "validation");
  CHECK(err["message"].get<std::string>().find("max_iter") != std::string::npos);
  CHECK(slurp(s.dir / "stderr.txt").find("max_iter") != std::string::npos);
  CHECK(json::parse(slurp(s.dir / "out" / "manifest.json"))["exit_code"] == 2);

  std::ofstream(s.dir / "junk.json") << "{not json";
  CHECK(run_binary("solve --spec " + (s.dir / "junk.json").string(), s.dir) == 2);
  CHECK(run_binary("solve --spec " + (s.dir / "missing.json").string(), s.dir) == 2);
  CHECK(run_binary("frobnicate --spec " + spec.string(), s.dir) == 2);
  CHECK(run_binary("solve", s.dir) == 2);

  auto rejects = [](const std::string& cmd, const json& sp) {
    CHECK_THROWS_AS(alr::cli::validate_spec(cmd, sp), alr::cli::ValidationError);
  };
  rejects("find-resonance", json{{"n0", 2}, {"command", "solve"}});
  rejects("find-resonance", json{{"n0", 2}, {"extra", 1}});
  rejects("find-resonance", json{{"n0", -1}});
  rejects("solve", json{{"config", {{"eps_s", -1.1}, {"r_i", 1.0}}},
                        {"source", {{"type", "point"}, {"radius", 2.0}}}});
  rejects("solve", json{{"config", {{"eps_s", -1.1}}}, {"source", {{"type", "point"}, {"radius", 0.5}}}});
  rejects("sweep-condition", json{{"condition", "nocore"}, {"n0", 10}, {"config", {{"eps_s", -1.1}}},
                                  {"grid", {{"min", 1}, {"max", 2}, {"count", 3}}}});
  rejects("sweep-condition", json{{"condition", "denominator"}, {"n0", 2}, {"config", {{"eps_s", -1.1}}},
                                  {"grid", {{"spacing", "log"}, {"min", 0}, {"max", 2}, {"count", 3}}}});
  rejects("dichotomy", json{{"inside_radius", 1.6}});
  rejects("np-crosscheck", json{{"config", {{"eps_s", 2.0}, {"dim", 2}}},
                                {"source", {{"type", "point"}, {"radius", 2.0}}}});
  rejects("np-spectrum", json{{"k", 1.0}, {"m_max", 3}, {"output", {{"name", "../escape"}}}});
}

TEST_CASE("computation failures exit 3 with module and mode") {
  Scratch s("fail");
  auto spec = write_spec(s.dir, "nr.json", json{{"n0", 2}, {"max_iter", 1}, {"tolerance", 1e-30}});
  CHECK(run_binary("find-resonance --spec " + spec.string() + " --out " + s.dir.string(), s.dir) == 3);
  auto err = json::parse(slurp(s.dir / "error.json"));
  CHECK(err["kind"] == "no_root_found");
  CHECK(err["module"] == "resonance_search");
  CHECK(err["mode"] == 2);
  // The partial table is still written, with a marker row.
  CHECK(slurp(s.dir / "find-resonance.csv").find("2,nan,nan,nan,,no_root_found") != std::string::npos);
}

TEST_CASE("normalized specs validate to themselves") {
  const json specs = json::parse(R"({
    "solve": {"config": {"eps_s": -1.1, "delta": 0.01},
              "source": {"type": "point", "radius": 2.0, "strength": {"re": 1.0, "im": 0.5}}},
    "energy-curve": {"config": {"eps_s": -1.2},
                     "source": {"type": "coefficients", "support_radius": 2.0, "beta": [{"n": 2, "re": 1.0}]},
                     "grid": {"spacing": "log", "min": 1e-3, "max": 1e-1, "count": 5}},
    "find-resonance": {"n0_list": [2, 3], "dim": 2},
    "dichotomy": {},
    "np-spectrum": {"k": 2.0, "m_max": 4, "output": {"format": "json", "name": "spectrum"}},
    "np-crosscheck": {"config": {"eps_s": 2.0, "delta": 0.1}, "source": {"type": "point", "radius": 2.0}}
  })");
  std::vector<std::pair<std::string, json>> cases{{"sweep-condition", sweep_spec}};
  for (auto it = specs.begin(); it != specs.end(); ++it) cases.emplace_back(it.key(), it.value());
  for (const auto& [cmd, spec] : cases) {
    INFO(cmd);
    const json once = alr::cli::validate_spec(cmd, spec);
    CHECK(alr::cli::validate_spec(cmd, once) == once);
    CHECK(once["command"] == cmd);
  }
}

TEST_CASE("np commands") {
  Scratch s("np");
  auto r = alr::cli::run("np-spectrum", json{{"k", 1.0}, {"m_max", 5}, {"output", {{"format", "json"}}}}, s.dir, 1);
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(slurp(s.dir / "np-spectrum.json"));
  REQUIRE(doc["result"]["rows"].size() == 6);
  for (const auto& row : doc["result"]["rows"]) {
    const std::complex<double> a(row["funk_hecke"]["re"], row["funk_hecke"]["im"]);
    const std::complex<double> b(row["funk_hecke_quadrature"]["re"], row["funk_hecke_quadrature"]["im"]);
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(a));
    CHECK(row["assumption"] == true);
  }

  r = alr::cli::run("np-crosscheck",
                    json{{"config", {{"eps_s", -1.224395}, {"delta", 0.001203}}},
                         {"source", {{"type", "coefficients"}, {"support_radius", 2.0},
                                     {"beta", {{{"n", 3}, {"re", 1.0}}}}}},
                         {"output", {{"format", "json"}}}},
                    s.dir, 1);
  REQUIRE(r.exit_code == 0);
  doc = json::parse(slurp(s.dir / "np-crosscheck.json"));
  CHECK(doc["result"]["route_residual"].get<double>() < 1e-8);
  CHECK(doc["result"]["max_field_rel_diff"].get<double>() < 1e-8);
}
