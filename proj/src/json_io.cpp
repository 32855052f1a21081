#include "voa/json_io.hpp"

#include <algorithm>
#include <fstream>

#include "voa/check.hpp"

namespace voa {

namespace {

json wvec_json(const WVec& w) {
  json v = json::array();
  for (const auto& x : w.v) v.push_back(rat_str(x));
  return json{{"m", w.m}, {"v", v}};
}

json auto_check_json(const AutoCheck& r) {
  json j{{"ok", r.ok},
         {"invertible", r.invertible},
         {"fixes_vacuum", r.fixes_vacuum},
         {"fixes_omega", r.fixes_omega},
         {"triples_checked", r.triples_checked},
         {"violation", r.violation}};
  if (r.violation)
    j["violation_at"] = json{{"p", r.p}, {"i", r.i}, {"n", r.n},
                             {"q", r.q}, {"j", r.j}};
  return j;
}

// block-one candidate for the standard rank one root lattice: images of
// the two exponentials and the current
BlockMaps root_candidate(const LatticeArena& arena, int e, int a, int f,
                         const Rat& ce, const Rat& ca, const Rat& cf,
                         bool swap_ef) {
  BlockMaps g;
  g.bound = 1;
  g.maps.push_back(lin::Mat::identity(1));
  lin::Mat m1(arena.dim(1), arena.dim(1));
  if (swap_ef) {
    m1.at(e, f) = cf;
    m1.at(f, e) = ce;
  } else {
    m1.at(e, e) = ce;
    m1.at(f, f) = cf;
  }
  m1.at(a, a) = ca;
  g.maps.push_back(m1);
  return g;
}

SuiteOut suite_generation(const LatticeArena& arena, int gb) {
  SuiteOut out;
  CompBasis cb = explore_compositions(arena, gb);
  std::vector<WVec> gens{arena.vacuum()};
  int rank = arena.lattice().rank;
  for (int c = 0; c < rank; ++c) {
    std::vector<int> unit(rank, 0);
    unit[c] = 1;
    gens.push_back(arena.exp_state(unit));
    unit[c] = -1;
    gens.push_back(arena.exp_state(unit));
  }
  SpanProbe probe = span_probe(arena, gens);
  bool span_full = true;
  for (int m = 0; m <= arena.max_weight(); ++m) span_full &= probe.full_at(m);
  out.ok = cb.complete && span_full;
  json dims = json::array();
  for (int m = 0; m <= arena.max_weight(); ++m) dims.push_back(arena.dim(m));
  out.j = json{{"suite", "generation"},
               {"description",
                "iterated products of the low blocks and of the unit "
                "exponentials reach every graded piece"},
               {"gen_bound", gb},
               {"complete", cb.complete},
               {"dims", dims},
               {"ranks", cb.ranks},
               {"span_target", probe.target},
               {"span_achieved", probe.achieved},
               {"span_full", span_full},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_automorphisms(const LatticeArena& arena, std::string* err) {
  SuiteOut out;
  if (arena.lattice().rank != 1 || arena.lattice().g(0, 0) != 2) {
    *err = "automorphisms suite needs the rank one lattice with (a,a) = 2";
    return out;
  }
  CompBasis cb = explore_compositions(arena, 1);
  int e = -1, a = -1, f = -1;
  for (int i = 0; i < arena.dim(1); ++i) {
    auto s = arena.basis_label(1, i);
    if (s == "e(1)") e = i;
    if (s == "a0(-1)") a = i;
    if (s == "e(-1)") f = i;
  }
  check(cb.complete && e >= 0 && a >= 0 && f >= 0,
        "automorphisms suite: unexpected weight one block");

  GradedMaps theta = extend_map(
      arena, cb, root_candidate(arena, e, a, f, 1, -1, 1, true));
  AutoCheck theta_res = check_automorphism(arena, theta);
  bool theta_involution =
      maps_equal(compose_maps(theta, theta), identity_maps_full(arena));

  auto torus = [&](const Rat& s) {
    return extend_map(arena, cb,
                      root_candidate(arena, e, a, f, s, 1, 1 / s, false));
  };
  bool torus_ok = true;
  json torus_checked = json::array();
  for (const Rat& s : {Rat(2), Rat(-1), Rat(1, 3)}) {
    torus_ok = torus_ok && check_automorphism(arena, torus(s)).ok;
    torus_checked.push_back(rat_str(s));
  }
  bool torus_hom =
      maps_equal(compose_maps(torus(2), torus(Rat(1, 3))), torus(Rat(2, 3))) &&
      maps_equal(compose_maps(torus(Rat(1, 2)), torus(2)),
                 identity_maps_full(arena));

  GradedMaps scaled = extend_map(
      arena, cb, root_candidate(arena, e, a, f, 2, 1, 1, false));
  AutoCheck scaled_res = check_automorphism(arena, scaled);
  WVec resid = aut_residual(arena, scaled, basis_wvec(arena, 1, e), 1,
                            basis_wvec(arena, 1, f));
  Rat resid_coeff = resid.m == 0 ? resid.v[0] : Rat(0);

  WVec ew = arena.exp_state({1});
  bool exp_ok = true;
  for (const Rat& t : {Rat(1), Rat(-1), Rat(1, 2)})
    exp_ok = exp_ok && check_automorphism(arena, exp_zero_mode(arena, ew, t)).ok;
  exp_ok = exp_ok &&
           maps_equal(compose_maps(exp_zero_mode(arena, ew, Rat(1, 2)),
                                   exp_zero_mode(arena, ew, Rat(1, 2))),
                      exp_zero_mode(arena, ew, 1));

  out.ok = theta_res.ok && theta_involution && torus_ok && torus_hom &&
           !scaled_res.ok && scaled_res.violation && !is_zero(resid_coeff) &&
           exp_ok;
  out.j = json{{"suite", "automorphisms"},
               {"description",
                "charge flip, torus scalings and exponentiated nilpotent "
                "zero modes pass; a lone rescaled exponential fails at the "
                "pairing product"},
               {"theta", auto_check_json(theta_res)},
               {"theta_involution", theta_involution},
               {"torus_checked", torus_checked},
               {"torus_ok", torus_ok},
               {"torus_homomorphism", torus_hom},
               {"scaled_rejected", !scaled_res.ok},
               {"scaled_residual", rat_str(resid_coeff)},
               {"exp_zero_mode_ok", exp_ok},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_derivations(const LatticeArena& arena, int gb) {
  SuiteOut out;
  CompBasis cb = explore_compositions(arena, gb);
  check(cb.complete, "derivations suite: composition basis incomplete");
  DerivationSpace ders = solve_derivations(arena, cb);
  InnerReport inner =
      inner_test(arena, ders, std::min(4, arena.max_weight()));
  FormWitness wit = nondegeneracy_witness(arena);
  DecompReport dec = der_decomposition(arena, ders.basis, wit.n);
  out.ok = ders.cross_check_ok && inner.contained && inner.all_obstructed &&
           wit.found && dec.ok;
  out.j = json{{"suite", "derivations"},
               {"description",
                "weight preserving Leibniz maps: solved space, its inner "
                "part and the trace form decomposition"},
               {"dim", ders.dim()},
               {"gen_bound", gb},
               {"cross_check_ok", ders.cross_check_ok},
               {"inner_dim", inner.inner_dim},
               {"contained", inner.contained},
               {"all_obstructed", inner.all_obstructed},
               {"witness_n", wit.n},
               {"perp_dim", dec.perp_dim},
               {"direct", dec.direct},
               {"ideal_ok", dec.ideal_ok},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_forms(const LatticeArena& arena) {
  SuiteOut out;
  FormWitness wit = nondegeneracy_witness(arena);
  json degen = json::array();
  for (int n = 0; n < wit.n; ++n) degen.push_back(n);
  SplitReport split = reductive_split(arena);
  out.ok = wit.found && split.direct && split.simples_ok;
  out.j = json{{"suite", "forms"},
               {"description",
                "trace forms on the weight one block: first nondegenerate "
                "weight, determinant there, and the center plus simple "
                "ideals split"},
               {"witness_n", wit.n},
               {"det", rat_str(wit.det)},
               {"degenerate_below", degen},
               {"center_dim", split.t_dim},
               {"derived_dim", split.s_dim},
               {"killing_det", rat_str(split.killing_det)},
               {"killing_nondegenerate", split.killing_nondeg},
               {"simple_dims", split.simple_dims},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_radical(const LatticeArena& arena) {
  SuiteOut out;
  int window = std::max(2, arena.max_weight() - 3);
  RadicalReport rep = radical_check(arena, window);
  out.ok = rep.inclusion_ok && rep.dims_match;
  out.j = json{{"suite", "radical"},
               {"description",
                "shifted translation images are annihilated by every zero "
                "mode on the window and the kernel count matches"},
               {"window", rep.window},
               {"inclusion_ok", rep.inclusion_ok},
               {"ker_dim", rep.ker_dim},
               {"image_dim", rep.image_dim},
               {"dims_match", rep.dims_match},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_fixedpoint(const LatticeArena& arena, std::string* err) {
  SuiteOut out;
  if (arena.lattice().rank != 1 || arena.max_weight() < 4) {
    *err = "fixedpoint suite needs a rank one lattice and max weight >= 4";
    return out;
  }
  int N = arena.max_weight();
  FixedPointAlgebra fpa = fixed_point_subalgebra(arena, N);
  const SubAlgebra& A = fpa.sub();
  auto p = partition_table(N);
  json dims = json::array(), expected = json::array();
  bool dims_ok = true;
  for (int k = 0; k <= N; ++k) {
    dims.push_back(A.dim(k));
    expected.push_back(p[k]);
    dims_ok = dims_ok && A.dim(k) == p[k];
  }
  HwReport hw = virasoro_highest_weights(A);
  bool hw_ok = true;
  for (int k = 0; k <= N; ++k) {
    int r = 0;
    while (r * r < k) ++r;
    hw_ok = hw_ok && hw.kernel_dims[k] == (r * r == k ? 1 : 0);
  }

  bool sigma_ok = true;
  json sigma_checked = json::array();
  for (const Rat& lam : {Rat(2), Rat(1, 2), Rat(-1)}) {
    sigma_ok = sigma_ok && sigma_lambda_check(fpa, lam).ok;
    sigma_checked.push_back(rat_str(lam));
  }
  GradedMaps bad = charge_scaling(fpa, Rat(2));
  bool planted = false;
  for (int m = 0; m <= N && !planted; ++m)
    for (int i = 0; i < A.dim(m) && !planted; ++i)
      if (fpa.charge[m][i] == 2) {
        bad.maps[m].at(i, i) = 3;
        planted = true;
      }
  AutoCheck bad_res = check_automorphism(A, bad);
  bool inconsistent_rejected = planted && !bad_res.ok && bad_res.violation;

  CompBasis cb = explore_compositions(A, 2);
  int der_dim = -1;
  if (cb.complete) der_dim = solve_derivations(A, cb).dim();

  out.ok = dims_ok && hw_ok && sigma_ok && inconsistent_rejected &&
           cb.complete && der_dim == 1;
  out.j = json{{"suite", "fixedpoint"},
               {"description",
                "kernel of the exponential zero mode: partition dims, "
                "square highest weights, charge scalings, one dimensional "
                "derivation space"},
               {"dims", dims},
               {"expected_dims", expected},
               {"dims_ok", dims_ok},
               {"hw_kernel_dims", hw.kernel_dims},
               {"hw_weights", hw.weights},
               {"hw_ok", hw_ok},
               {"sigma_checked", sigma_checked},
               {"sigma_ok", sigma_ok},
               {"inconsistent_rejected", inconsistent_rejected},
               {"derivation_dim", der_dim},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_ideals(const LatticeArena& arena, int n, std::string* err) {
  SuiteOut out;
  long a = arena.lattice().rank == 1 ? arena.lattice().g(0, 0) / 2 : 0;
  int N = arena.max_weight();
  if (arena.lattice().rank != 1 || n < 1 || long(n) * n * a > N) {
    *err = "ideals suite needs a rank one lattice and n^2 (a,a)/2 <= N";
    return out;
  }
  FixedPointAlgebra fpa = fixed_point_subalgebra(arena, N);
  IdealChain chain = ideal_chain(fpa, n);
  auto p = partition_table(N);
  json dims = json::array(), expected = json::array();
  bool dims_ok = true;
  for (int k = 0; k <= N; ++k) {
    long want = k - long(n) * n * a < 0 ? 0 : p[k - n * n * a];
    dims.push_back(chain.dims[k]);
    expected.push_back(want);
    dims_ok = dims_ok && chain.dims[k] == want;
  }
  bool climb_ok = !chain.climbing_applicable ||
                  (chain.climbing_in_ideal && !is_zero(chain.climbing_coeff));
  out.ok = chain.stable && dims_ok && climb_ok;
  out.j = json{{"suite", "ideals"},
               {"description",
                "the ideal generated by one exponential: shifted partition "
                "dims and the climb to the next exponential"},
               {"n", n},
               {"dims", dims},
               {"expected_dims", expected},
               {"dims_ok", dims_ok},
               {"stable", chain.stable},
               {"climbing_mode", chain.climbing_mode},
               {"climbing_applicable", chain.climbing_applicable},
               {"climbing_in_ideal", chain.climbing_in_ideal},
               {"climbing_coeff", rat_str(chain.climbing_coeff)},
               {"ok", out.ok}};
  return out;
}

SuiteOut suite_dsum(const LatticeArena& arena, const RunConfig& cfg,
                    std::string* err) {
  SuiteOut out;
  DsumSpec spec;
  if (cfg.summands_path.empty()) {
    spec.hw_weights = {0, 1, 4};
    spec.cutoff = std::min(arena.max_weight(), 6);
  } else {
    auto loaded = load_dsum_file(cfg.summands_path, err);
    if (!loaded) return out;
    spec = *loaded;
  }
  if (arena.lattice().rank != 1 || spec.hw_weights.empty() ||
      spec.hw_weights.back() > spec.cutoff ||
      spec.cutoff > arena.max_weight()) {
    *err = "dsum suite needs a rank one lattice and hw weights within the "
           "cutoff";
    return out;
  }
  DsumBuild b = build_dsum_voa(arena, spec);
  json j{{"suite", "dsum"},
         {"description",
          "direct sum with abelianized positive summands: creation, "
          "translation and skew symmetry axioms, then its automorphisms"},
         {"hw_weights", spec.hw_weights},
         {"cutoff", spec.cutoff}};
  if (!b.ok && !b.alg) {
    j["error"] = b.error;
    j["ok"] = false;
    out.j = std::move(j);
    return out;
  }
  const DirectSumVOA& D = *b.alg;
  json sdims = json::array();
  for (int s = 0; s < D.summands(); ++s) {
    json row = json::array();
    for (int k = 0; k <= D.max_weight(); ++k) row.push_back(D.summand_dim(k, s));
    sdims.push_back(row);
  }
  int gb = std::max(2, spec.hw_weights.back());
  CompBasis cb = explore_compositions(D, gb);
  DsumAutReport aut;
  if (cb.complete) aut = dsum_automorphisms(D, cb);
  json probes = json::array();
  bool probes_ok = cb.complete;
  if (cb.complete) {
    NonGenReport below =
        non_generation_probe(D, spec.hw_weights.back() - 1);
    NonGenReport full = non_generation_probe(D, spec.hw_weights.back());
    probes.push_back(json{{"bound", below.bound},
                          {"first_failure", below.first_failure}});
    probes.push_back(
        json{{"bound", full.bound}, {"first_failure", full.first_failure}});
    probes_ok = below.first_failure == spec.hw_weights.back() &&
                full.first_failure == -1;
  }
  out.ok = b.ok && cb.complete && aut.ok && probes_ok;
  j["vacuum_ok"] = b.vacuum_ok;
  j["translation_ok"] = b.translation_ok;
  j["skew_ok"] = b.skew_ok;
  j["products_checked"] = b.products_checked;
  j["summand_dims"] = sdims;
  j["aut"] = json{{"positive_summands", aut.positive_summands},
                  {"diagonals_accepted", aut.diagonals_accepted},
                  {"mixing_rejected", aut.mixing_rejected},
                  {"derivation_dim", aut.derivation_dim},
                  {"derivations_diagonal", aut.derivations_diagonal},
                  {"ok", aut.ok}};
  j["non_generation"] = probes;
  j["ok"] = out.ok;
  out.j = std::move(j);
  return out;
}

}  // namespace

std::vector<long> partition_table(int cutoff) {
  std::vector<long> p(cutoff + 1, 0);
  p[0] = 1;
  for (int s = 1; s <= cutoff; ++s)
    for (int d = s; d <= cutoff; ++d) p[d] += p[d - s];
  return p;
}

std::optional<Lattice> load_lattice_file(const std::string& path,
                                         std::string* err) {
  std::ifstream in(path);
  if (!in) {
    *err = "cannot open lattice file: " + path;
    return std::nullopt;
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    *err = "bad json in " + path + ": " + e.what();
    return std::nullopt;
  }
  if (!j.contains("gram") || !j["gram"].is_array()) {
    *err = "lattice file needs a \"gram\" matrix";
    return std::nullopt;
  }
  std::vector<std::vector<long>> gram;
  for (const auto& row : j["gram"])
    gram.push_back(row.get<std::vector<long>>());
  std::vector<std::vector<int>> eps;
  if (j.contains("eps"))
    for (const auto& row : j["eps"])
      eps.push_back(row.get<std::vector<int>>());
  return make_lattice(gram, eps, err);
}

std::optional<DsumSpec> load_dsum_file(const std::string& path,
                                       std::string* err) {
  std::ifstream in(path);
  if (!in) {
    *err = "cannot open summand spec: " + path;
    return std::nullopt;
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    *err = "bad json in " + path + ": " + e.what();
    return std::nullopt;
  }
  if (!j.contains("hw_weights") || !j.contains("cutoff")) {
    *err = "summand spec needs \"hw_weights\" and \"cutoff\"";
    return std::nullopt;
  }
  DsumSpec spec;
  spec.hw_weights = j["hw_weights"].get<std::vector<int>>();
  spec.cutoff = j["cutoff"].get<int>();
  return spec;
}

int auto_gen_bound(const Lattice& lat) {
  long b = 1;
  for (int i = 0; i < lat.rank; ++i) b = std::max(b, lat.g(i, i) / 2);
  return int(b);
}

const std::vector<std::string> kAllSuites{
    "generation", "automorphisms", "derivations", "forms",
    "radical",    "fixedpoint",    "ideals",      "dsum"};

std::vector<std::string> suites_for(const Lattice& lat, int max_weight) {
  std::vector<std::string> out{"generation", "derivations", "forms",
                               "radical"};
  if (lat.rank == 1 && lat.g(0, 0) == 2)
    out.insert(out.begin() + 1, "automorphisms");
  if (lat.rank == 1 && max_weight >= 4) {
    out.push_back("fixedpoint");
    out.push_back("ideals");
    out.push_back("dsum");
  }
  return out;
}

SuiteOut run_suite(const LatticeArena& arena, const RunConfig& cfg,
                   const std::string& name, std::string* err) {
  int gb = cfg.gen_bound > 0 ? cfg.gen_bound : auto_gen_bound(arena.lattice());
  if (name == "generation") return suite_generation(arena, gb);
  if (name == "automorphisms") return suite_automorphisms(arena, err);
  if (name == "derivations") return suite_derivations(arena, gb);
  if (name == "forms") return suite_forms(arena);
  if (name == "radical") return suite_radical(arena);
  if (name == "fixedpoint") return suite_fixedpoint(arena, err);
  if (name == "ideals") return suite_ideals(arena, cfg.ideal_n, err);
  if (name == "dsum") return suite_dsum(arena, cfg, err);
  *err = "unknown suite: " + name;
  return {};
}

json build_artifact(const LatticeArena& arena, const Lattice& lat) {
  json gram = json::array();
  for (int i = 0; i < lat.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < lat.rank; ++j) row.push_back(lat.g(i, j));
    gram.push_back(row);
  }
  json eps = json::array();
  for (int i = 0; i < lat.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < lat.rank; ++j) row.push_back(lat.eps(i, j));
    eps.push_back(row);
  }
  json dims = json::array();
  json blocks = json::array();
  for (int m = 0; m <= arena.max_weight(); ++m) {
    dims.push_back(arena.dim(m));
    json labels = json::array();
    for (int i = 0; i < arena.dim(m); ++i)
      labels.push_back(arena.basis_label(m, i));
    blocks.push_back(json{{"weight", m}, {"labels", labels}});
  }
  return json{{"gram", gram},
              {"eps", eps},
              {"max_weight", arena.max_weight()},
              {"dims", dims},
              {"blocks", blocks},
              {"vacuum", wvec_json(arena.vacuum())},
              {"omega", wvec_json(arena.omega())},
              {"central_charge", rat_str(arena.central_charge())}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace voa
