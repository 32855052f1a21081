// End-to-end checks of the voa binary: exit codes, stdout shape, artifact
// determinism. Paths come from the environment (VOA_BIN, VOA_DATA) so the
// test works from any build directory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult res;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) res.out.append(buf, n);
  int status = pclose(p);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string bin() {
  const char* b = std::getenv("VOA_BIN");
  REQUIRE(b != nullptr);
  return std::string("\"") + b + "\"";
}

std::string data(const std::string& name) {
  const char* d = std::getenv("VOA_DATA");
  REQUIRE(d != nullptr);
  return std::string("\"") + d + "/" + name + "\"";
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("voa_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build prints dims and writes a deterministic artifact") {
  fs::path out1 = scratch() / "a1_one.json";
  fs::path out2 = scratch() / "a1_two.json";
  auto r1 = run(bin() + " build --lattice " + data("a1.json") +
                " --max-weight 8 --canonical --out \"" + out1.string() + "\"");
  CHECK(r1.code == 0);
  CHECK(r1.out.find("1 3 4 7 13 19 29 43 62") != std::string::npos);
  auto r2 = run(bin() + " build --lattice " + data("a1.json") +
                " --max-weight 8 --canonical --out \"" + out2.string() + "\"");
  CHECK(r2.code == 0);
  CHECK(slurp(out1) == slurp(out2));

  json art = json::parse(slurp(out1));
  CHECK(art["max_weight"] == 8);
  CHECK(art["dims"][0] == 1);
  CHECK(art["dims"][4] == 13);
  CHECK(!art.contains("meta"));
}

TEST_CASE("build on a rank 2 lattice") {
  auto r = run(bin() + " build --lattice " + data("r2.json") +
               " --max-weight 4 --out \"" + (scratch() / "r2.json").string() +
               "\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("1 4 11 28 60") != std::string::npos);
}

TEST_CASE("missing lattice file is a usage error") {
  auto r = run(bin() + " build --lattice /nonexistent/nothing.json");
  CHECK(r.code == 2);
}

TEST_CASE("verify derivations reports the solution space") {
  auto r = run(bin() + " verify --suite derivations --lattice " +
               data("a1.json") + " --max-weight 8 --canonical");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["suite"] == "derivations");
  CHECK(j["ok"] == true);
  CHECK(j["dim"] == 3);
  CHECK(j["inner_dim"] == 3);
  CHECK(j["perp_dim"] == 0);
}

TEST_CASE("verify forms finds the first nondegenerate pairing") {
  auto r = run(bin() + " verify --suite forms --lattice " + data("a1.json") +
               " --max-weight 6 --canonical");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["witness_n"] == 1);
  CHECK(j["det"] == "-128");
}

TEST_CASE("verify ideals tracks the chain dimensions") {
  auto r = run(bin() + " verify --suite ideals --n 2 --lattice " +
               data("a1.json") + " --max-weight 6 --canonical");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  std::vector<int> dims = j["dims"];
  CHECK(dims == std::vector<int>{0, 0, 0, 0, 1, 1, 2});
}

TEST_CASE("unknown suite and bad gating are usage errors") {
  auto bad = run(bin() + " verify --suite nonsense --lattice " +
                 data("a1.json"));
  CHECK(bad.code == 2);
  auto gated = run(bin() + " verify --suite fixedpoint --lattice " +
                   data("r2.json") + " --max-weight 4");
  CHECK(gated.code == 2);
}

TEST_CASE("canonical output is stable, default output carries metadata") {
  std::string cmd = bin() + " verify --suite forms --lattice " +
                    data("a1.json") + " --max-weight 4";
  auto c1 = run(cmd + " --canonical");
  auto c2 = run(cmd + " --canonical");
  CHECK(c1.code == 0);
  CHECK(c1.out == c2.out);
  auto plain = run(cmd);
  CHECK(plain.code == 0);
  CHECK(plain.out.find("\"meta\"") != std::string::npos);
  CHECK(c1.out.find("\"meta\"") == std::string::npos);
}

TEST_CASE("report runs every applicable suite") {
  fs::path out = scratch() / "report_a1.json";
  auto r = run(bin() + " report --lattice " + data("a1.json") +
               " --max-weight 5 --canonical --out \"" + out.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);
  json j = json::parse(slurp(out));
  CHECK(j["all_ok"] == true);
  CHECK(j["suites"].size() == 8);
  CHECK(j["suites"]["generation"]["ok"] == true);
}

TEST_CASE("a corrupted cocycle flips reported signs without breaking checks") {
  fs::path good = scratch() / "rep_good.json";
  fs::path flip = scratch() / "rep_flip.json";
  auto r1 = run(bin() + " report --lattice " + data("a1.json") +
                " --max-weight 5 --canonical --out \"" + good.string() + "\"");
  auto r2 = run(bin() + " report --lattice " + data("a1_flipeps.json") +
                " --max-weight 5 --canonical --out \"" + flip.string() + "\"");
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  json jg = json::parse(slurp(good));
  json jf = json::parse(slurp(flip));
  CHECK(jg["suites"]["automorphisms"]["scaled_residual"] == "-1");
  CHECK(jf["suites"]["automorphisms"]["scaled_residual"] == "1");
  CHECK(jg["suites"]["ideals"]["climbing_coeff"] == "1");
  CHECK(jf["suites"]["ideals"]["climbing_coeff"] == "-1");
  CHECK(jf["all_ok"] == true);
}

TEST_CASE("report over a directory aggregates stored results") {
  fs::path dir = scratch() / "agg";
  fs::create_directories(dir);
  auto empty = run(bin() + " report --dir \"" + dir.string() + "\"");
  CHECK(empty.code == 0);
  CHECK(empty.out.find("nothing to report") != std::string::npos);

  std::ofstream(dir / "one.json") << "{\"suite\":\"x\",\"ok\":false}\n";
  auto failed = run(bin() + " report --dir \"" + dir.string() + "\"");
  CHECK(failed.code == 1);
  CHECK(failed.out.find("FAIL") != std::string::npos);

  std::ofstream(dir / "one.json") << "{\"suite\":\"x\",\"ok\":true}\n";
  auto ok = run(bin() + " report --dir \"" + dir.string() + "\"");
  CHECK(ok.code == 0);
}
