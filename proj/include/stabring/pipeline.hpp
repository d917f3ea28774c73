#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabring/kcomplex.hpp"
#include "stabring/modules.hpp"
#include "stabring/ring.hpp"
#include "stabring/verdict.hpp"

namespace stabring {

struct PipelineConfig {
  nlohmann::json group = "trivial";
  int n_max = 3;
  int p_max = 2;
  /// Whitehead search depth of the move sets.
  int depth = 2;
  std::uint64_t state_cap = std::uint64_t{1} << 32;
  unsigned threads = 0;
  std::optional<std::filesystem::path> cache_dir;
  std::filesystem::path out_dir = "report";
  /// Randomized representative pairs in the well-definedness check.
  std::size_t random_pairs = 1000;
  std::uint64_t seed = 1;
  /// Genera up to which the abelianized move image is computed mod 2 and 3.
  int modular_genus = 2;
  /// Genera up to which the symplectic orbit oracle runs (abelian G).
  int sp_genus = 3;

  /// Reads a config document; unknown keys are rejected. Throws ConfigError.
  static PipelineConfig from_json(const nlohmann::json& j);
  void validate() const;
  /// The fields that determine report content (no threads, no paths).
  nlohmann::json content_json() const;
};

/// STABRING_CACHE when set, else the configured directory.
std::optional<std::filesystem::path> effective_cache_dir(const PipelineConfig& config);

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct HomologyRow {
  std::string module;
  int p = 0;
  int n = 0;
  HomologyGroup group;
  bool certified = false;
};

struct Report {
  static constexpr int schema_version = 1;

  nlohmann::json config;
  nlohmann::json group;
  nlohmann::json ring;
  std::vector<std::size_t> counts;
  std::optional<StabilityProfile> profile;
  nlohmann::json modules = nlohmann::json::object();
  nlohmann::json kcomplex = nlohmann::json::object();
  nlohmann::json oracles = nlohmann::json::object();
  std::vector<HomologyRow> homology;
  std::vector<Check> verdicts;
  std::vector<StageTiming> timings;
  /// Set when a stage threw; results of earlier stages are kept.
  std::optional<std::string> failed_stage;
  std::optional<std::string> error;

  /// fail if any verdict fails or a stage failed, inconclusive if any is.
  Verdict overall() const;
  /// Everything except timings, keys sorted.
  nlohmann::json to_json() const;
};

Report run_pipeline(const PipelineConfig& config);

/// class(u v) = class(u) class(v) and S computed from a random representative
/// agrees with S computed from the canonical one, on `pairs` random draws.
Check representative_check(const GradedRing& ring, const KComplex* k, std::size_t pairs, std::uint64_t seed);

/// Top-degree count against the subgroup-sum predictions: all classes
/// against `bounded`, classes with trivial boundary value against `closed`.
Check stable_count_check(const GradedRing& ring, const StabilityProfile& profile, const FiniteGroup& group);

}  // namespace stabring
