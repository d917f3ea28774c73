#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabring/free_group.hpp"
#include "stabring/group.hpp"
#include "stabring/hash.hpp"

namespace stabring {

/// Mixed-radix encoding of G^{len}; the first coordinate is most significant,
/// so the all-identity tuple has rank 0.
class TupleCodec {
 public:
  TupleCodec(std::size_t order, std::size_t length);

  std::uint64_t size() const { return size_; }
  std::size_t length() const { return length_; }
  std::uint64_t encode(std::span<const Element> v) const;
  void decode(std::uint64_t rank, std::span<Element> out) const;
  std::vector<Element> decode(std::uint64_t rank) const;

 private:
  std::size_t order_;
  std::size_t length_;
  std::uint64_t size_;
};

/// |G|^{2n}, or nullopt when it exceeds 2^64.
std::optional<std::uint64_t> state_count(std::size_t order, int genus);

/// The partition of G^{2n} into orbits. Orbits are numbered by increasing
/// minimum rank and reps[o] is that minimum.
struct OrbitTable {
  int n = 0;
  std::size_t group_order = 0;
  Digest group_hash{};
  Digest moves_hash{};
  std::vector<std::uint64_t> reps;
  std::vector<std::uint32_t> orbit_id;

  std::size_t count() const { return reps.size(); }
  std::uint64_t states() const { return orbit_id.size(); }
  std::uint32_t orbit_of(std::uint64_t rank) const { return orbit_id[rank]; }
  std::uint64_t canonical_rank(std::uint64_t rank) const { return reps[orbit_id[rank]]; }
  std::vector<std::uint64_t> orbit_sizes() const;

  friend bool operator==(const OrbitTable&, const OrbitTable&) = default;
};

struct OrbitOptions {
  std::uint64_t state_cap = std::uint64_t{1} << 32;
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;
};

/// Closure of G^{2n} under the compiled moves (a genus-n move set).
OrbitTable enumerate_orbits(const FiniteGroup& group, int genus, const std::vector<CompiledMove>& moves,
                            const Digest& moves_hash, const OrbitOptions& options = {});

/// Minimum-rank tuple in the orbit of v.
std::vector<Element> canonical_rep(const OrbitTable& table, std::span<const Element> v);

/// Checks orbit constancy of move images, of the evaluated boundary and of
/// the generated subgroup, visiting every stride-th rank. Returns a witness
/// description of the first violation.
std::optional<std::string> check_orbit_invariants(const OrbitTable& table, const FiniteGroup& group,
                                                  const std::vector<CompiledMove>& moves,
                                                  std::uint64_t stride = 1);

void cache_store(const OrbitTable& table, const std::filesystem::path& path);
/// Throws CacheError on a bad header, a hash mismatch or a short payload.
OrbitTable cache_load(const std::filesystem::path& path, const Digest& group_hash, const Digest& moves_hash);

/// File name used for a table inside a cache directory.
std::string cache_file_name(const Digest& group_hash, const Digest& moves_hash, int genus);

}  // namespace stabring
