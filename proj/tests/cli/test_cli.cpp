#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + CONECALC_BIN + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scenario(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name + ".json"; }

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("conecalc_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("verify exits 0 on the shipped scenarios") {
  for (const auto& name : {"cp1", "cp2", "cp2-w012", "hexagon-gl3"}) {
    CAPTURE(name);
    auto r = run("verify " + scenario(name));
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["command"] == "verify");
  }
}

TEST_CASE("lattice-count --d 20") {
  auto r = run("lattice-count " + scenario("cp2") + " --d 20");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"231\"") != std::string::npos);
  CHECK(r.out.find("\"31/400\"") != std::string::npos);
}

TEST_CASE("built-in names resolve without a file") {
  auto r = run("lattice-count examples/cp2.json --d 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"6\"") != std::string::npos);
}

TEST_CASE("seed handling") {
  auto a = run("heckman " + scenario("cp2") + " --seed 5");
  auto b = run("heckman " + scenario("cp2") + " --seed 5");
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["seed"] == 5);
  auto env = run("heckman " + scenario("cp2") + " --seed 5", "CONECALC_SEED=9");
  CHECK(nlohmann::json::parse(env.out)["seed"] == 9);
  CHECK(run("heckman " + scenario("cp2"), "CONECALC_SEED=abc").code == 2);
}

TEST_CASE("exit codes") {
  auto dir = scratch();
  SUBCASE("missing file") { CHECK(run("verify " + (dir / "absent.json").string()).code == 2); }
  SUBCASE("malformed JSON") {
    auto path = dir / "bad.json";
    std::ofstream(path) << "{ not json";
    CHECK(run("verify " + path.string()).code == 2);
  }
  SUBCASE("schema violation") {
    auto path = dir / "schema.json";
    std::ofstream(path) << R"({"name": "x", "rank": 0})";
    CHECK(run("verify " + path.string()).code == 2);
  }
  SUBCASE("unknown command") { CHECK(run("frobnicate " + scenario("cp2")).code == 2); }
  SUBCASE("failing verdict") {
    std::ifstream in(scenario("cp2-w012"));
    auto j = nlohmann::ordered_json::parse(in);
    j["cc_tables"][0]["restrictions"]["1"] = nlohmann::json::array({{{"coeff", "1"}, {"exponents", {1, 0}}}});
    auto path = dir / "broken.json";
    std::ofstream(path) << j.dump(2);
    auto r = run("cc " + path.string());
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["passed"] == false);
  }
  fs::remove_all(dir);
}

TEST_CASE("--out writes the report") {
  auto dir = scratch();
  auto path = dir / "report.json";
  auto r = run("moments " + scenario("cp2") + " --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  CHECK(j["command"] == "moments");
  fs::remove_all(dir);
}

TEST_CASE("plot writes an SVG") {
  auto dir = scratch();
  auto path = dir / "cp2.svg";
  auto r = run("plot " + scenario("cp2") + " --window -1:2,-1:2 --res 50 --out " + path.string());
  CHECK(r.code == 0);
  REQUIRE(fs::exists(path));
  std::ifstream in(path);
  std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("flipped") != std::string::npos);
  CHECK(run("plot " + scenario("cp2") + " --window 2:1,0:1 --out " + path.string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("examples writes every built-in scenario") {
  auto dir = scratch() / "examples";
  auto r = run("examples --out " + dir.string());
  CHECK(r.code == 0);
  std::size_t count = 0;
  for (const auto& e : fs::directory_iterator(dir)) count += e.path().extension() == ".json";
  CHECK(count == 8);
  CHECK(run("verify " + (dir / "trapezoid.json").string()).code == 0);
  fs::remove_all(dir.parent_path());
}
