// stabring: orbit ring, K-complex and oracle checks for a finite group.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabring/error.hpp"
#include "stabring/oracle.hpp"
#include "stabring/pipeline.hpp"
#include "stabring/report.hpp"

using namespace stabring;

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// A built-in name, inline JSON, or a path to a JSON file.
nlohmann::json group_spec(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '"')) return nlohmann::json::parse(arg);
  if (std::filesystem::is_regular_file(arg)) return read_json_file(arg);
  return arg;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::inconclusive: return 2;
    default: return 1;
  }
}

int cmd_run(const std::string& config_path, std::optional<unsigned> threads, std::optional<std::string> cache,
            std::optional<std::string> out) {
  PipelineConfig cfg = PipelineConfig::from_json(read_json_file(config_path));
  if (threads) cfg.threads = *threads;
  if (cache) cfg.cache_dir = *cache;
  if (out) cfg.out_dir = *out;
  const Report report = run_pipeline(cfg);
  emit_report(report, cfg.out_dir);
  std::cout << text_summary(report);
  std::cout << "report written to " << cfg.out_dir.string() << "\n";
  return exit_code(report.overall());
}

int cmd_orbits(const std::string& spec, int n, int depth, unsigned threads) {
  const FiniteGroup G = load_group(group_spec(spec));
  const MoveSet moves = MoveSet::build(n, depth);
  OrbitOptions opt;
  opt.threads = threads;
  const OrbitTable t = enumerate_orbits(G, n, moves.compile(G), moves.hash, opt);
  nlohmann::json orbits = nlohmann::json::array();
  const auto sizes = t.orbit_sizes();
  const TupleCodec codec(G.order(), 2 * n);
  for (std::size_t o = 0; o < t.count(); ++o) {
    const auto rep = codec.decode(t.reps[o]);
    orbits.push_back({{"rep", rep}, {"size", sizes[o]}, {"boundary", evaluate_boundary(rep, G)}});
  }
  nlohmann::json j = {{"group", G.name()},       {"order", G.order()}, {"n", n},
                      {"moves", moves.automorphisms.size()}, {"moves_hash", to_hex(moves.hash)},
                      {"count", t.count()},       {"orbits", orbits}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_oracle(const std::string& spec, int sp_genus) {
  const FiniteGroup G = load_group(group_spec(spec));
  const BarHomology bar = bar_homology(G);
  const StableCountPrediction pred = stable_count_prediction(G);
  nlohmann::json ab = nlohmann::json::array();
  for (const auto& x : abelianization_invariants(G)) ab.push_back(x.get_si());
  nlohmann::json j = {{"group", G.name()},
                      {"order", G.order()},
                      {"abelianization", ab},
                      {"h1", homology_json(bar.h1)},
                      {"h2", homology_json(bar.h2)},
                      {"stable_count", {{"closed", pred.closed}, {"bounded", pred.bounded}}}};
  if (G.is_abelian()) {
    nlohmann::json sp = nlohmann::json::array();
    for (int n = 1; n <= sp_genus; ++n) {
      const auto states = state_count(G.order(), n);
      if (!states || *states > (std::uint64_t{1} << 24)) break;
      sp.push_back({{"genus", n}, {"orbits", sp_orbit_count(G, n)}});
    }
    j["sp_orbits"] = sp;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabring: stable orbit rings of Hurwitz vectors"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the full pipeline from a config file");
  std::string config_path;
  std::optional<unsigned> threads;
  std::optional<std::string> cache, out;
  run->add_option("--config", config_path, "config JSON")->required();
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_option("--cache", cache, "orbit cache directory");
  run->add_option("--out", out, "report directory");

  auto* orbits = app.add_subcommand("orbits", "enumerate orbits of G^{2n}");
  std::string group;
  int n = 1, depth = 2;
  unsigned orbit_threads = 0;
  orbits->add_option("--group", group, "group name, JSON spec or spec file")->required();
  orbits->add_option("--n", n, "genus")->required()->check(CLI::Range(0, 16));
  orbits->add_option("--depth", depth, "move search depth")->check(CLI::Range(0, 2));
  orbits->add_option("--threads", orbit_threads, "worker threads");

  auto* oracle = app.add_subcommand("oracle", "group homology and stable-count oracles");
  std::string oracle_group;
  int sp_genus = 2;
  oracle->add_option("--group", oracle_group, "group name, JSON spec or spec file")->required();
  oracle->add_option("--sp-genus", sp_genus, "largest genus for the symplectic oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    if (*run) return cmd_run(config_path, threads, cache, out);
    if (*orbits) return cmd_orbits(group, n, depth, orbit_threads);
    if (*oracle) return cmd_oracle(oracle_group, sp_genus);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
