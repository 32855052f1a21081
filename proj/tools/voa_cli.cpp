#include <CLI11.hpp>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "voa/json_io.hpp"

using namespace voa;
namespace fs = std::filesystem;

namespace {

struct Opts {
  RunConfig cfg;
  std::string suite;
  std::string out;
  std::string dir;
  bool canonical = false;
};

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json with_meta(json j, bool canonical) {
  if (!canonical) j["meta"] = json{{"tool", "voa"}, {"generated", iso_now()}};
  return j;
}

int emit(const json& j, const std::string& out_path, bool to_stdout) {
  std::string text = dump_json(j);
  if (to_stdout) std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return 0;
}

int cmd_build(const Opts& o) {
  std::string err;
  auto lat = load_lattice_file(o.cfg.lattice_path, &err);
  if (!lat) {
    std::cerr << err << "\n";
    return 2;
  }
  LatticeArena arena(*lat, o.cfg.max_weight);
  for (int m = 0; m <= arena.max_weight(); ++m)
    std::cout << (m ? " " : "") << arena.dim(m);
  std::cout << "\n";
  std::string out = o.out;
  if (out.empty())
    out = fs::path(o.cfg.lattice_path).stem().string() + ".arena.json";
  // the artifact carries no run metadata, so a rerun is byte identical
  return emit(build_artifact(arena, *lat), out, false);
}

int cmd_verify(const Opts& o) {
  std::string err;
  auto lat = load_lattice_file(o.cfg.lattice_path, &err);
  if (!lat) {
    std::cerr << err << "\n";
    return 2;
  }
  LatticeArena arena(*lat, o.cfg.max_weight);
  SuiteOut res = run_suite(arena, o.cfg, o.suite, &err);
  if (!err.empty()) {
    std::cerr << err << "\n";
    return 2;
  }
  int rc = emit(with_meta(res.j, o.canonical), o.out, true);
  if (rc) return rc;
  return res.ok ? 0 : 1;
}

int cmd_report_dir(const Opts& o) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(o.dir, ec))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) {
    std::cerr << "cannot read directory " << o.dir << "\n";
    return 2;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cout << "nothing to report\n";
    return 0;
  }
  json suites = json::object();
  bool all_ok = true;
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      std::cerr << "bad json in " << f.string() << ": " << e.what() << "\n";
      return 2;
    }
    std::string name =
        j.contains("suite") ? j["suite"].get<std::string>() : f.stem().string();
    bool ok = j.value("ok", false);
    all_ok = all_ok && ok;
    suites[name] = std::move(j);
    std::cout << "suite " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  }
  std::cout << (all_ok ? "all checks passed" : "some checks failed") << "\n";
  json agg{{"suites", std::move(suites)}, {"all_ok", all_ok}};
  int rc = emit(with_meta(std::move(agg), o.canonical), o.out, false);
  if (rc) return rc;
  return all_ok ? 0 : 1;
}

int cmd_report(const Opts& o) {
  if (!o.dir.empty()) return cmd_report_dir(o);
  std::string err;
  auto lat = load_lattice_file(o.cfg.lattice_path, &err);
  if (!lat) {
    std::cerr << err << "\n";
    return 2;
  }
  LatticeArena arena(*lat, o.cfg.max_weight);
  json suites = json::object();
  bool all_ok = true;
  for (const std::string& name : suites_for(*lat, o.cfg.max_weight)) {
    SuiteOut res = run_suite(arena, o.cfg, name, &err);
    if (!err.empty()) {
      std::cerr << err << "\n";
      return 2;
    }
    all_ok = all_ok && res.ok;
    std::cout << "suite " << name << ": " << (res.ok ? "pass" : "FAIL")
              << "\n";
    suites[name] = std::move(res.j);
  }
  std::cout << (all_ok ? "all checks passed" : "some checks failed") << "\n";
  json agg{{"suites", std::move(suites)},
           {"all_ok", all_ok},
           {"max_weight", o.cfg.max_weight}};
  int rc = emit(with_meta(std::move(agg), o.canonical), o.out, o.out.empty());
  if (rc) return rc;
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for weight truncated lattice vertex algebras"};
  app.require_subcommand(1);
  Opts o;

  auto add_common = [&](CLI::App* sub, bool lattice_required) {
    auto* l = sub->add_option("--lattice", o.cfg.lattice_path,
                              "lattice json file (gram, optional eps)");
    if (lattice_required) l->required();
    sub->add_option("--max-weight", o.cfg.max_weight, "truncation window")
        ->check(CLI::Range(2, 64));
    sub->add_option("--gen-bound", o.cfg.gen_bound,
                    "generator weight bound, 0 = automatic");
    sub->add_option("--out", o.out, "write the json output here");
    sub->add_flag("--canonical", o.canonical,
                  "reproducible output: no run metadata");
  };

  CLI::App* build = app.add_subcommand(
      "build", "construct the arena, print dims, store the artifact");
  add_common(build, true);

  CLI::App* verify =
      app.add_subcommand("verify", "run one verification suite");
  add_common(verify, true);
  verify->add_option("--suite", o.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(kAllSuites));
  verify->add_option("--n", o.cfg.ideal_n, "exponential index for ideals");
  verify->add_option("--summands", o.cfg.summands_path,
                     "summand spec json for dsum");

  CLI::App* report = app.add_subcommand(
      "report", "run every applicable suite, or aggregate stored outputs");
  add_common(report, false);
  report->add_option("--n", o.cfg.ideal_n, "exponential index for ideals");
  report->add_option("--summands", o.cfg.summands_path,
                     "summand spec json for dsum");
  report->add_option("--dir", o.dir,
                     "aggregate suite json files from this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (build->parsed()) return cmd_build(o);
  if (verify->parsed()) return cmd_verify(o);
  if (report->parsed()) {
    if (o.dir.empty() && o.cfg.lattice_path.empty()) {
      std::cerr << "report needs --lattice or --dir\n";
      return 2;
    }
    return cmd_report(o);
  }
  return 2;
}
