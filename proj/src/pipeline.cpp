#include "stabring/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <random>
#include <set>

#include "stabring/error.hpp"
#include "stabring/oracle.hpp"

namespace stabring {

namespace {

template <class T>
T read_key(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known = {"group", "n_max", "p_max", "depth", "state_cap",
                                              "threads", "cache_dir", "out_dir", "random_pairs",
                                              "seed", "modular_genus", "sp_genus"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  PipelineConfig c;
  if (!j.contains("group")) throw ConfigError("config: missing 'group'");
  c.group = j.at("group");
  c.n_max = read_key(j, "n_max", c.n_max);
  c.p_max = read_key(j, "p_max", c.p_max);
  c.depth = read_key(j, "depth", c.depth);
  c.state_cap = read_key(j, "state_cap", c.state_cap);
  c.threads = read_key(j, "threads", c.threads);
  if (j.contains("cache_dir")) c.cache_dir = read_key<std::string>(j, "cache_dir", "");
  c.out_dir = read_key<std::string>(j, "out_dir", c.out_dir.string());
  c.random_pairs = read_key(j, "random_pairs", c.random_pairs);
  c.seed = read_key(j, "seed", c.seed);
  c.modular_genus = read_key(j, "modular_genus", c.modular_genus);
  c.sp_genus = read_key(j, "sp_genus", c.sp_genus);
  c.validate();
  return c;
}

void PipelineConfig::validate() const {
  if (n_max < 1) throw ConfigError("config: n_max must be at least 1");
  if (p_max < 1) throw ConfigError("config: p_max must be at least 1");
  if (p_max > n_max) throw ConfigError("config: p_max must not exceed n_max");
  if (depth < 0 || depth > 2) throw ConfigError("config: depth must be 0, 1 or 2");
  if (state_cap == 0) throw ConfigError("config: state_cap must be positive");
  if (modular_genus < 0 || sp_genus < 0) throw ConfigError("config: genus limits must be non-negative");
}

nlohmann::json PipelineConfig::content_json() const {
  return {{"group", group},          {"n_max", n_max},
          {"p_max", p_max},          {"depth", depth},
          {"state_cap", state_cap},  {"random_pairs", random_pairs},
          {"seed", seed},            {"modular_genus", modular_genus},
          {"sp_genus", sp_genus}};
}

std::optional<std::filesystem::path> effective_cache_dir(const PipelineConfig& config) {
  if (const char* env = std::getenv("STABRING_CACHE"); env && *env) return std::filesystem::path(env);
  return config.cache_dir;
}

Verdict Report::overall() const {
  Verdict v = failed_stage ? Verdict::fail : Verdict::pass;
  for (const auto& c : verdicts) v = combine(v, c.verdict);
  return v;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["config"] = config;
  j["group"] = group;
  j["ring"] = ring;
  j["modules"] = modules;
  j["kcomplex"] = kcomplex;
  j["oracles"] = oracles;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& h : homology)
    rows.push_back({{"module", h.module},
                    {"p", h.p},
                    {"n", h.n},
                    {"group", homology_json(h.group)},
                    {"certified", h.certified}});
  j["homology"] = std::move(rows);
  nlohmann::json checks = nlohmann::json::array();
  std::size_t tally[3] = {0, 0, 0};
  for (const auto& c : verdicts) {
    checks.push_back(c.to_json());
    ++tally[static_cast<int>(c.verdict)];
  }
  j["verdicts"] = std::move(checks);
  j["summary"] = {{"overall", to_string(overall())},
                  {"pass", tally[0]},
                  {"fail", tally[1]},
                  {"inconclusive", tally[2]}};
  j["error"] = failed_stage ? nlohmann::json{{"stage", *failed_stage}, {"message", error.value_or("")}}
                            : nlohmann::json(nullptr);
  return j;
}

Check stable_count_check(const GradedRing& ring, const StabilityProfile& profile, const FiniteGroup& group) {
  Check c{"stable_count", "|R_top| = sum_H |H_2(H)| |[H,H]|; trivial boundary value: sum_H |H_2(H)|",
          Verdict::pass, ""};
  const int top = ring.n_max();
  if (!profile.stable_within_window) {
    c.verdict = Verdict::inconclusive;
    c.witness = "stability not certified in window";
    return c;
  }
  const StableCountPrediction pred = stable_count_prediction(group);
  std::uint64_t closed = 0;
  for (std::size_t j = 0; j < ring.basis_size(top); ++j) closed += ring.beta(top, j) == 0;
  const std::uint64_t total = ring.basis_size(top);
  if (total != pred.bounded || closed != pred.closed) {
    c.verdict = Verdict::fail;
    c.witness = "n = " + std::to_string(top) + ": " + std::to_string(total) + " classes (" + std::to_string(closed) +
                " closed), predicted " + std::to_string(pred.bounded) + " (" + std::to_string(pred.closed) + ")";
  }
  return c;
}

Check representative_check(const GradedRing& ring, const KComplex* k, std::size_t pairs, std::uint64_t seed) {
  Check c{"representative_independence", "class(u v) = class(u) class(v); S_(g,h) independent of the representative",
          Verdict::pass, ""};
  std::mt19937_64 rng(seed);
  const std::size_t g = ring.group().order();
  auto random_tuple = [&](int genus) {
    std::vector<Element> t(2 * genus);
    for (auto& x : t) x = static_cast<Element>(rng() % g);
    return t;
  };
  const int top = ring.n_max();
  for (std::size_t i = 0; i < pairs; ++i) {
    const int m = static_cast<int>(rng() % (top + 1));
    const int n = static_cast<int>(rng() % (top - m + 1));
    const auto u = random_tuple(m), v = random_tuple(n);
    std::vector<Element> uv(u);
    uv.insert(uv.end(), v.begin(), v.end());
    if (ring.class_of(uv) != ring.product(m, ring.class_of(u), n, ring.class_of(v))) {
      c.verdict = Verdict::fail;
      c.witness = "product, draw " + std::to_string(i) + ", degrees " + std::to_string(m) + " + " + std::to_string(n);
      return c;
    }
    if (!k) continue;
    const int p = static_cast<int>(rng() % (std::min(k->p_max(), k->n_max()) + 1));
    const int kk = static_cast<int>(rng() % (k->n_max() - p + 1));
    const auto t = random_tuple(p), w = random_tuple(kk);
    const Element a = static_cast<Element>(rng() % g), b = static_cast<Element>(rng() % g);
    const std::size_t col = TupleCodec(g, 2 * p).encode(t) * ring.basis_size(kk) + ring.class_of(w);
    if (k->homotopy_with_rep(p, p + kk, col, a, b, w) != k->homotopy(p, p + kk, col, a, b)) {
      c.verdict = Verdict::fail;
      c.witness = "S, draw " + std::to_string(i) + ", p = " + std::to_string(p) + ", n = " + std::to_string(p + kk);
      return c;
    }
  }
  return c;
}

namespace {

std::vector<GradedModule> left_battery(const GradedRing& ring) {
  using K = ModuleRecipe::Kind;
  const ModuleRecipe r = ModuleRecipe::make(K::regular);
  std::vector<ModuleRecipe> recipes = {r, ModuleRecipe::make(K::bar), ModuleRecipe::make(K::u_torsion),
                                       ModuleRecipe::make(K::positive), ModuleRecipe::shift(r, 1),
                                       ModuleRecipe::truncate(r, 1), ModuleRecipe::quotient_u(ModuleRecipe::shift(r, 1))};
  std::vector<GradedModule> out;
  for (const auto& rec : recipes) out.push_back(derive_module(ring, rec));
  return out;
}

std::vector<GradedModule> right_battery(const GradedRing& ring) {
  using K = ModuleRecipe::Kind;
  std::vector<GradedModule> out;
  for (K k : {K::trivial, K::positive, K::u_image}) out.push_back(derive_module(ring, ModuleRecipe::make(k, Side::right)));
  return out;
}

nlohmann::json dims_json(const GradedModule& m) {
  nlohmann::json gens = nlohmann::json::array(), rels = nlohmann::json::array();
  for (int n = 0; n <= m.top; ++n) {
    gens.push_back(m.gens(n));
    rels.push_back(m.relations(n).cols());
  }
  return {{"side", m.side == Side::left ? "left" : "right"},
          {"top", m.top},
          {"generators", gens},
          {"relations", rels},
          {"degree", deg_to_string(m.degree())},
          {"degree_certified", m.degree_certified()}};
}

void add_homology(Report& r, const KComplex& k, const KHomology& hom, bool certified) {
  nlohmann::json h = nlohmann::json::array();
  for (std::size_t p = 0; p < hom.h.size(); ++p)
    h.push_back({{"p", p}, {"h", deg_to_string(hom.h[p])}, {"window_edge", static_cast<bool>(hom.reaches_window_edge[p])}});
  r.kcomplex[k.module().name] = {{"p_max", k.p_max()}, {"n_max", k.n_max()}, {"h", h}};
  for (const auto& s : hom.spots) r.homology.push_back({k.module().name, s.p, s.n, s.group, certified});
}

}  // namespace

Report run_pipeline(const PipelineConfig& config) {
  Report r;
  r.config = config.content_json();
  std::string stage = "config";
  auto timed = [&](const char* name, auto&& body) {
    stage = name;
    const auto t0 = std::chrono::steady_clock::now();
    body();
    r.timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  };
  try {
    config.validate();
    std::optional<FiniteGroup> group;
    timed("load", [&] {
      group = load_group(config.group);
      nlohmann::json ab = nlohmann::json::array();
      for (const auto& x : abelianization_invariants(*group)) ab.push_back(x.get_si());
      r.group = {{"name", group->name()},
                 {"order", group->order()},
                 {"hash", to_hex(group->hash())},
                 {"abelian", group->is_abelian()},
                 {"abelianization", ab}};
    });
    const FiniteGroup& G = *group;

    std::vector<MoveSet> moves;
    timed("moves", [&] {
      nlohmann::json images = nlohmann::json::array();
      for (int n = 0; n <= config.n_max; ++n) moves.push_back(MoveSet::build(n, config.depth));
      for (int n = 1; n <= std::min(config.modular_genus, config.n_max); ++n)
        for (int prime : {2, 3}) {
          const ModularImage img = move_image_mod_p(moves[n].automorphisms, n, prime);
          images.push_back({{"genus", n},
                            {"prime", prime},
                            {"generated_order", img.generated_order},
                            {"symplectic_order", img.symplectic_order},
                            {"capped", img.capped}});
          Check c{"move_image/n=" + std::to_string(n) + "/p=" + std::to_string(prime),
                  "abelianized moves generate Sp(2n, F_p)", Verdict::pass, ""};
          if (img.capped) {
            c.verdict = Verdict::inconclusive;
            c.witness = "closure capped at " + std::to_string(img.generated_order);
          } else if (img.generated_order != img.symplectic_order) {
            c.verdict = Verdict::fail;
            c.witness = "generated " + std::to_string(img.generated_order) + " of " + std::to_string(img.symplectic_order);
          }
          r.verdicts.push_back(std::move(c));
        }
      r.oracles["move_image"] = std::move(images);
    });

    std::vector<OrbitTable> tables;
    std::vector<DegreeBuildInfo> info(config.n_max + 1);
    timed("orbits", [&] {
      RingBuildOptions opt;
      opt.depth = config.depth;
      opt.orbit.state_cap = config.state_cap;
      opt.orbit.threads = config.threads;
      opt.cache_dir = effective_cache_dir(config);
      for (int n = 0; n <= config.n_max; ++n) {
        tables.push_back(degree_table(G, moves[n], opt, info[n]));
        const std::uint64_t stride = std::max<std::uint64_t>(1, tables[n].states() / 50000);
        Check c{"orbit_invariants/n=" + std::to_string(n),
                "move images, boundary value and image subgroup constant on orbits", Verdict::pass, ""};
        if (auto bad = check_orbit_invariants(tables[n], G, moves[n].compile(G), stride)) {
          c.verdict = Verdict::fail;
          c.witness = *bad;
        }
        r.verdicts.push_back(std::move(c));
      }
    });

    std::optional<GradedRing> ring;
    timed("ring", [&] {
      ring = GradedRing::from_tables(G, std::move(tables), std::move(info));
      r.ring = ring->summary_json();
      r.profile = ring->stability_profile();
      r.counts = r.profile->counts;
    });
    const StabilityProfile& prof = *r.profile;

    std::vector<GradedModule> left, right;
    timed("modules", [&] {
      left = left_battery(*ring);
      right = right_battery(*ring);
      for (const auto& m : left) {
        const DeltaBounds d = delta_and_bounds(m, prof);
        nlohmann::json mj = dims_json(m);
        mj["delta"] = d.to_json();
        r.modules[m.name] = std::move(mj);
        r.verdicts.push_back(generation_check(m));
        r.verdicts.push_back(d.a_delta);
      }
      for (const auto& m : right) {
        r.modules[m.name] = dims_json(m);
        r.verdicts.push_back(generation_check(m));
      }
      for (const auto& n : right)
        for (const auto& m : left) r.verdicts.push_back(tensor_degree_check(n, m));
    });

    std::optional<KComplex> kr;
    timed("kcomplex", [&] {
      kr.emplace(left[0], config.p_max, config.n_max);
      const KHomology hom = kc_homology(*kr);
      add_homology(r, *kr, hom, prof.stable_within_window);
      r.verdicts.push_back(verify_d_squared(*kr));
      r.verdicts.push_back(homotopy_check(*kr));
      r.verdicts.push_back(annihilation_check(*kr));
      r.verdicts.push_back(u_commutes_check(*kr));
      for (auto& c : bound_checks(prof, hom, config.n_max)) r.verdicts.push_back(std::move(c));
      const KComplex kbar(left[1], config.p_max, std::min(config.n_max, left[1].top));
      add_homology(r, kbar, kc_homology(kbar), prof.stable_within_window);
      r.verdicts.push_back(verify_d_squared(kbar));
      r.verdicts.push_back(u_commutes_check(kbar));
    });

    timed("oracles", [&] {
      const BarHomology bar = bar_homology(G);
      r.oracles["bar"] = {{"h1", homology_json(bar.h1)}, {"h2", homology_json(bar.h2)}};
      {
        Check c{"bar_complex", "d_2 d_3 = 0 on the normalized bar complex", Verdict::pass, ""};
        if (!(bar.d2 * bar.d3).is_zero()) c.verdict = Verdict::fail, c.witness = "nonzero composite";
        r.verdicts.push_back(std::move(c));
      }
      {
        Check c{"bar_h1_abelianization", "H_1(G) = G/[G,G]", Verdict::pass, ""};
        if (bar.h1.free_rank != 0 || bar.h1.torsion != abelianization_invariants(G)) {
          c.verdict = Verdict::fail;
          c.witness = "bar H_1 = " + bar.h1.to_string();
        }
        r.verdicts.push_back(std::move(c));
      }
      const StableCountPrediction pred = stable_count_prediction(G);
      nlohmann::json subs = nlohmann::json::array();
      for (const auto& s : pred.subgroups)
        subs.push_back({{"order", s.order}, {"schur_order", s.schur_order}, {"commutator_order", s.commutator_order}});
      r.oracles["stable_count"] = {{"closed", pred.closed}, {"bounded", pred.bounded}, {"subgroups", subs}};
      r.verdicts.push_back(stable_count_check(*ring, prof, G));
      if (G.is_abelian()) {
        nlohmann::json sp = nlohmann::json::array();
        for (int n = 1; n <= std::min(config.sp_genus, config.n_max); ++n) {
          const auto states = state_count(G.order(), n);
          if (!states || *states > (std::uint64_t{1} << 24)) break;
          const std::size_t count = sp_orbit_count(G, n);
          sp.push_back({{"genus", n}, {"orbits", count}});
          Check c{"sp_orbit_count/n=" + std::to_string(n), "|G^{2n} / Gamma| = |G^{2n} / Sp(2n, Z)| for abelian G",
                  Verdict::pass, ""};
          if (count != ring->basis_size(n)) {
            c.verdict = Verdict::fail;
            c.witness = "orbit engine " + std::to_string(ring->basis_size(n)) + ", symplectic " + std::to_string(count);
          }
          r.verdicts.push_back(std::move(c));
        }
        r.oracles["sp_orbits"] = std::move(sp);
      }
      r.verdicts.push_back(representative_check(*ring, &*kr, config.random_pairs, config.seed));
    });
  } catch (const std::exception& e) {
    r.failed_stage = stage;
    r.error = e.what();
  }
  return r;
}

}  // namespace stabring
