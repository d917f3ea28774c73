#include "stabring/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "stabring/error.hpp"

namespace stabring {

TupleCodec::TupleCodec(std::size_t order, std::size_t length) : order_(order), length_(length), size_(1) {
  for (std::size_t i = 0; i < length; ++i) {
    if (size_ > UINT64_MAX / order) throw CapExceeded("tuple space exceeds 64-bit ranks");
    size_ *= order;
  }
}

std::uint64_t TupleCodec::encode(std::span<const Element> v) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < length_; ++i) r = r * order_ + v[i];
  return r;
}

void TupleCodec::decode(std::uint64_t rank, std::span<Element> out) const {
  for (std::size_t i = length_; i-- > 0;) {
    out[i] = static_cast<Element>(rank % order_);
    rank /= order_;
  }
}

std::vector<Element> TupleCodec::decode(std::uint64_t rank) const {
  std::vector<Element> v(length_);
  decode(rank, v);
  return v;
}

std::optional<std::uint64_t> state_count(std::size_t order, int genus) {
  std::uint64_t s = 1;
  for (int i = 0; i < 2 * genus; ++i) {
    if (s > UINT64_MAX / order) return std::nullopt;
    s *= order;
  }
  return s;
}

std::vector<std::uint64_t> OrbitTable::orbit_sizes() const {
  std::vector<std::uint64_t> s(reps.size(), 0);
  for (auto id : orbit_id) ++s[id];
  return s;
}

namespace {

using Parent = std::atomic<std::uint32_t>;

std::uint32_t find_root(Parent* parent, std::uint32_t x) {
  for (;;) {
    std::uint32_t p = parent[x].load(std::memory_order_relaxed);
    if (p == x) return x;
    std::uint32_t gp = parent[p].load(std::memory_order_relaxed);
    if (gp != p) parent[x].compare_exchange_weak(p, gp, std::memory_order_relaxed);
    x = gp;
  }
}

// Links the larger root below the smaller one, so every root is the minimum
// of its class.
void unite(Parent* parent, std::uint32_t a, std::uint32_t b) {
  for (;;) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    std::uint32_t expected = a;
    if (parent[a].compare_exchange_strong(expected, b, std::memory_order_acq_rel)) return;
  }
}

}  // namespace

OrbitTable enumerate_orbits(const FiniteGroup& group, int genus, const std::vector<CompiledMove>& moves,
                            const Digest& moves_hash, const OrbitOptions& options) {
  if (genus < 0) throw Error("orbit enumeration: negative genus");
  const auto total = state_count(group.order(), genus);
  if (!total || *total > options.state_cap || *total > (std::uint64_t{1} << 32)) {
    std::ostringstream os;
    os << "orbit enumeration: |G|^{2n} for |G| = " << group.order() << ", n = " << genus
       << " exceeds the state cap " << options.state_cap << "; lower n or use a smaller group";
    throw CapExceeded(os.str());
  }
  for (const auto& m : moves)
    if (m.arity() != static_cast<std::size_t>(2 * genus))
      throw Error("orbit enumeration: move arity does not match the genus");

  const std::uint64_t n_states = *total;
  OrbitTable t;
  t.n = genus;
  t.group_order = group.order();
  t.group_hash = group.hash();
  t.moves_hash = moves_hash;

  std::unique_ptr<Parent[]> parent(new Parent[n_states]);
  for (std::uint64_t i = 0; i < n_states; ++i) parent[i].store(static_cast<std::uint32_t>(i), std::memory_order_relaxed);

  std::vector<const CompiledMove*> active;
  for (const auto& m : moves)
    if (!m.is_identity()) active.push_back(&m);

  const TupleCodec codec(group.order(), 2 * genus);
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  if (n_states < 4096) threads = 1;
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Element> v(2 * genus), w(2 * genus);
    for (std::uint64_t r = begin; r < end; ++r) {
      codec.decode(r, v);
      for (const auto* m : active) {
        m->apply(v, w);
        const std::uint64_t s = codec.encode(w);
        if (s != r) unite(parent.get(), static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(s));
      }
    }
  };
  if (threads == 1) {
    worker(0, n_states);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n_states + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      const std::uint64_t b = std::min<std::uint64_t>(n_states, k * chunk);
      const std::uint64_t e = std::min<std::uint64_t>(n_states, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Roots are class minima; scanning in rank order numbers orbits by minimum.
  t.orbit_id.resize(n_states);
  for (std::uint64_t r = 0; r < n_states; ++r) {
    const std::uint32_t root = find_root(parent.get(), static_cast<std::uint32_t>(r));
    if (root == r) {
      t.orbit_id[r] = static_cast<std::uint32_t>(t.reps.size());
      t.reps.push_back(r);
    } else {
      t.orbit_id[r] = t.orbit_id[root];
    }
  }
  return t;
}

std::vector<Element> canonical_rep(const OrbitTable& table, std::span<const Element> v) {
  if (v.size() != static_cast<std::size_t>(2 * table.n)) throw Error("canonical_rep: tuple length mismatch");
  const TupleCodec codec(table.group_order, 2 * table.n);
  for (auto x : v)
    if (x >= table.group_order) throw Error("canonical_rep: element index out of range");
  return codec.decode(table.canonical_rank(codec.encode(v)));
}

std::optional<std::string> check_orbit_invariants(const OrbitTable& table, const FiniteGroup& group,
                                                  const std::vector<CompiledMove>& moves,
                                                  std::uint64_t stride) {
  const TupleCodec codec(group.order(), 2 * table.n);
  std::vector<Element> beta(table.count());
  std::vector<std::vector<Element>> image(table.count());
  for (std::size_t o = 0; o < table.count(); ++o) {
    auto v = codec.decode(table.reps[o]);
    beta[o] = evaluate_boundary(v, group);
    image[o] = generated_subgroup(group, v);
  }
  std::vector<Element> v(2 * table.n), w(2 * table.n);
  for (std::uint64_t r = 0; r < table.states(); r += std::max<std::uint64_t>(1, stride)) {
    codec.decode(r, v);
    const auto o = table.orbit_id[r];
    for (std::size_t k = 0; k < moves.size(); ++k) {
      moves[k].apply(v, w);
      if (table.orbit_id[codec.encode(w)] != o)
        return "move " + std::to_string(k) + " leaves the orbit of rank " + std::to_string(r);
    }
    if (evaluate_boundary(v, group) != beta[o]) return "boundary not orbit-constant at rank " + std::to_string(r);
    if (generated_subgroup(group, v) != image[o])
      return "generated subgroup not orbit-constant at rank " + std::to_string(r);
  }
  return std::nullopt;
}

namespace {

constexpr char kMagic[4] = {'H', 'W', 'O', 'T'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw CacheError("orbit cache: truncated payload");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

void cache_store(const OrbitTable& t, const std::filesystem::path& path) {
  if (t.group_order > 0xffff || t.n > 0xffff) throw CacheError("orbit cache: header field overflow");
  std::string out(kMagic, 4);
  put_le<std::uint16_t>(out, kVersion);
  out.append(reinterpret_cast<const char*>(t.group_hash.data()), t.group_hash.size());
  out.append(reinterpret_cast<const char*>(t.moves_hash.data()), t.moves_hash.size());
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(t.n));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(t.group_order));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.reps.size()));
  for (auto r : t.reps) put_le<std::uint64_t>(out, r);
  for (auto id : t.orbit_id) put_le<std::uint32_t>(out, id);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CacheError("orbit cache: cannot write " + tmp);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw CacheError("orbit cache: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

OrbitTable cache_load(const std::filesystem::path& path, const Digest& group_hash, const Digest& moves_hash) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CacheError("orbit cache: cannot open " + path.string());
  std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (in.size() < 4 || !std::equal(kMagic, kMagic + 4, in.begin())) throw CacheError("orbit cache: bad magic");
  std::size_t pos = 4;
  if (get_le<std::uint16_t>(in, pos) != kVersion) throw CacheError("orbit cache: unsupported version");
  if (pos + 64 > in.size()) throw CacheError("orbit cache: truncated header");
  OrbitTable t;
  std::copy_n(in.begin() + pos, 32, t.group_hash.begin());
  std::copy_n(in.begin() + pos + 32, 32, t.moves_hash.begin());
  pos += 64;
  if (t.group_hash != group_hash) throw CacheError("orbit cache: group hash mismatch");
  if (t.moves_hash != moves_hash) throw CacheError("orbit cache: move-set hash mismatch");
  t.n = get_le<std::uint16_t>(in, pos);
  t.group_order = get_le<std::uint16_t>(in, pos);
  const auto count = get_le<std::uint32_t>(in, pos);
  const auto states = state_count(t.group_order, t.n);
  if (!states) throw CacheError("orbit cache: state count overflow");
  const std::uint64_t need = std::uint64_t{count} * 8 + *states * 4;
  if (in.size() - pos != need) throw CacheError("orbit cache: payload length mismatch");
  t.reps.resize(count);
  for (auto& r : t.reps) r = get_le<std::uint64_t>(in, pos);
  t.orbit_id.resize(*states);
  for (auto& id : t.orbit_id) {
    id = get_le<std::uint32_t>(in, pos);
    if (id >= count) throw CacheError("orbit cache: orbit id out of range");
  }
  return t;
}

std::string cache_file_name(const Digest& group_hash, const Digest& moves_hash, int genus) {
  return "orbits-" + to_hex(group_hash).substr(0, 16) + "-" + to_hex(moves_hash).substr(0, 16) + "-n" +
         std::to_string(genus) + ".hwot";
}

}  // namespace stabring
