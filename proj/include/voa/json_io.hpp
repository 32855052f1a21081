#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "voa/fixpoint.hpp"

namespace voa {

using nlohmann::json;

// partition numbers p(0..cutoff) by coin-change, used as the independent
// expectation for every fixed-point dimension table
std::vector<long> partition_table(int cutoff);

struct RunConfig {
  std::string lattice_path;
  int max_weight = 6;
  int gen_bound = 0;  // 0 picks the smallest generating bound for the rank
  int ideal_n = 1;
  std::string summands_path;  // optional direct-sum spec file
};

// lattice file: {"gram": [[...]], "eps": [[...]] optional}
std::optional<Lattice> load_lattice_file(const std::string& path,
                                         std::string* err);
// summand spec file: {"hw_weights": [...], "cutoff": N}
std::optional<DsumSpec> load_dsum_file(const std::string& path,
                                       std::string* err);

int auto_gen_bound(const Lattice& lat);

struct SuiteOut {
  bool ok = false;
  json j;
};

extern const std::vector<std::string> kAllSuites;

// suites that make sense for this lattice and window
std::vector<std::string> suites_for(const Lattice& lat, int max_weight);

// runs one named suite against a shared arena; a nonempty *err means the
// request itself was malformed (unknown suite, unsupported rank, bad spec)
SuiteOut run_suite(const LatticeArena& arena, const RunConfig& cfg,
                   const std::string& name, std::string* err);

// deterministic arena artifact: dims, labels, distinguished vectors
json build_artifact(const LatticeArena& arena, const Lattice& lat);

std::string dump_json(const json& j);

}  // namespace voa
