#include "stabring/free_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "stabring/error.hpp"

namespace stabring {

std::vector<Letter> reduce_word(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeWord::FreeWord(std::vector<Letter> letters) : letters_(reduce_word(std::move(letters))) {}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> r(letters_.rbegin(), letters_.rend());
  for (auto& l : r) l = -l;
  FreeWord w;
  w.letters_ = std::move(r);
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& rhs) const {
  std::vector<Letter> v(letters_);
  v.insert(v.end(), rhs.letters_.begin(), rhs.letters_.end());
  return FreeWord(std::move(v));
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << std::abs(letters_[i]);
    if (letters_[i] < 0) os << "^-1";
  }
  return os.str();
}

FreeWord boundary_word(int genus) {
  if (genus < 1) throw Error("boundary word: genus must be at least 1");
  std::vector<Letter> w;
  for (int i = 1; i <= genus; ++i) {
    const int a = 2 * i - 1, b = 2 * i;
    w.insert(w.end(), {a, b, -a, -b});
  }
  return FreeWord(std::move(w));
}

FreeWord Substitution::apply(const FreeWord& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const FreeWord& img = images.at(std::abs(l) - 1);
    if (l > 0) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) out.push_back(-*it);
    }
  }
  return FreeWord(std::move(out));
}

Substitution Substitution::after(const Substitution& other) const {
  Substitution r;
  r.images.reserve(other.images.size());
  for (const auto& w : other.images) r.images.push_back(apply(w));
  return r;
}

bool Substitution::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto l = images[i].letters();
    if (l.size() != 1 || l[0] != static_cast<Letter>(i + 1)) return false;
  }
  return true;
}

Substitution Substitution::identity(int rank) {
  Substitution s;
  for (int i = 1; i <= rank; ++i) s.images.push_back(FreeWord::generator(i));
  return s;
}

std::vector<std::vector<long>> Substitution::abelianization() const {
  const int r = rank();
  std::vector<std::vector<long>> m(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (Letter l : images[i].letters()) m[i][std::abs(l) - 1] += l > 0 ? 1 : -1;
  return m;
}

namespace {

FreeWord word(std::initializer_list<Letter> l) { return FreeWord(std::vector<Letter>(l)); }

MarkedAutomorphism make_named(int rank, std::map<int, FreeWord> fwd, std::map<int, FreeWord> inv,
                              std::string name) {
  MarkedAutomorphism m;
  m.forward = Substitution::identity(rank);
  m.inverse = Substitution::identity(rank);
  for (auto& [k, w] : fwd) m.forward.images[k - 1] = w;
  for (auto& [k, w] : inv) m.inverse.images[k - 1] = w;
  m.origin = MoveOrigin::named;
  m.provenance = std::move(name);
  return m;
}

MarkedAutomorphism inverted(const MarkedAutomorphism& m) {
  MarkedAutomorphism r{m.inverse, m.forward, m.origin, m.provenance + "^-1"};
  return r;
}

}  // namespace

std::vector<MarkedAutomorphism> named_moves(int genus) {
  const int rank = 2 * genus;
  std::vector<MarkedAutomorphism> out;
  for (int i = 1; i <= genus; ++i) {
    const int a = 2 * i - 1, b = 2 * i;
    auto t1 = make_named(rank, {{a, word({a, b})}}, {{a, word({a, -b})}}, "T1_" + std::to_string(i));
    auto t2 = make_named(rank, {{b, word({b, a})}}, {{b, word({b, -a})}}, "T2_" + std::to_string(i));
    out.push_back(t1);
    out.push_back(inverted(t1));
    out.push_back(t2);
    out.push_back(inverted(t2));
  }
  for (int i = 1; i < genus; ++i) {
    const int a = 2 * i - 1, b = 2 * i, c = 2 * i + 1, d = 2 * i + 2;
    // (a_i, b_i, a_{i+1}, b_{i+1}) -> (a_{i+1}, b_{i+1}, a_i^C, b_i^C), C = [a_{i+1}, b_{i+1}].
    const FreeWord C = word({c, d, -c, -d});
    const FreeWord E = word({a, b, -a, -b});
    auto s = make_named(rank,
                        {{a, word({c})},
                         {b, word({d})},
                         {c, C.inverse() * word({a}) * C},
                         {d, C.inverse() * word({b}) * C}},
                        {{a, E * word({c}) * E.inverse()},
                         {b, E * word({d}) * E.inverse()},
                         {c, word({a})},
                         {d, word({b})}},
                        "S_" + std::to_string(i));
    out.push_back(s);
    out.push_back(inverted(s));
  }
  return out;
}

namespace {

// Type-2 Whitehead automorphism (A, a): every generator x other than a^{+-1}
// carries a state: 0 fixed, 1 x -> x a, 2 x -> a^-1 x, 3 x -> a^-1 x a.
struct WhiteheadTwo {
  Letter a;
  std::vector<std::uint8_t> state;
};

Substitution whitehead_two(int rank, Letter a, const std::vector<std::uint8_t>& state) {
  Substitution s = Substitution::identity(rank);
  for (int j = 1; j <= rank; ++j) {
    switch (state[j - 1]) {
      case 1: s.images[j - 1] = word({j, a}); break;
      case 2: s.images[j - 1] = word({-a, j}); break;
      case 3: s.images[j - 1] = word({-a, j, a}); break;
      default: break;
    }
  }
  return s;
}

// Signed permutation sigma with sigma(W) = u letter by letter, if one exists.
std::optional<Substitution> match_signed_permutation(const FreeWord& w, const FreeWord& u, int rank) {
  if (w.length() != u.length()) return std::nullopt;
  std::vector<Letter> img(rank, 0);
  auto wl = w.letters();
  auto ul = u.letters();
  for (std::size_t k = 0; k < wl.size(); ++k) {
    const int j = std::abs(wl[k]);
    const Letter want = wl[k] > 0 ? ul[k] : -ul[k];
    if (img[j - 1] == 0) {
      img[j - 1] = want;
    } else if (img[j - 1] != want) {
      return std::nullopt;
    }
  }
  std::vector<bool> used(rank, false);
  for (int j = 0; j < rank; ++j) {
    if (img[j] == 0) return std::nullopt;
    const int t = std::abs(img[j]) - 1;
    if (used[t]) return std::nullopt;
    used[t] = true;
  }
  Substitution s;
  for (Letter l : img) s.images.push_back(FreeWord({l}));
  return s;
}

Substitution signed_permutation_inverse(const Substitution& s) {
  Substitution r = Substitution::identity(s.rank());
  for (int j = 0; j < s.rank(); ++j) {
    const Letter l = s.images[j].letters()[0];
    r.images[std::abs(l) - 1] = FreeWord({l > 0 ? j + 1 : -(j + 1)});
  }
  return r;
}

struct VecHash {
  std::size_t operator()(const std::vector<Letter>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : v) h = (h ^ static_cast<std::size_t>(l + 1024)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<MarkedAutomorphism> enumerate_stabilizing_automorphisms(int genus, int depth,
                                                                    WhiteheadSearchStats* stats) {
  if (genus < 1) throw Error("automorphism search: genus must be at least 1");
  if (depth < 1 || depth > 2) throw Error("automorphism search: depth must be 1 or 2");
  const int rank = 2 * genus;
  const FreeWord W = boundary_word(genus);

  // All nontrivial type-2 Whitehead automorphisms, grouped by the image of W.
  std::vector<WhiteheadTwo> twos;
  for (int g = 1; g <= rank; ++g) {
    for (Letter a : {g, -g}) {
      std::vector<std::uint8_t> state(rank, 0);
      const std::size_t combos = std::size_t{1} << (2 * (rank - 1));
      for (std::size_t code = 1; code < combos; ++code) {
        std::size_t c = code;
        for (int j = 1; j <= rank; ++j) {
          if (j == g) {
            state[j - 1] = 0;
            continue;
          }
          state[j - 1] = static_cast<std::uint8_t>(c & 3);
          c >>= 2;
        }
        twos.push_back({a, state});
      }
    }
  }
  std::unordered_map<std::vector<Letter>, std::vector<std::uint32_t>, VecHash> by_image;
  std::vector<FreeWord> image_of(twos.size());
  for (std::uint32_t i = 0; i < twos.size(); ++i) {
    image_of[i] = whitehead_two(rank, twos[i].a, twos[i].state).apply(W);
    auto l = image_of[i].letters();
    by_image[std::vector<Letter>(l.begin(), l.end())].push_back(i);
  }
  auto forward_two = [&](std::uint32_t i) { return whitehead_two(rank, twos[i].a, twos[i].state); };
  auto inverse_two = [&](std::uint32_t i) { return whitehead_two(rank, -twos[i].a, twos[i].state); };

  std::map<Substitution, MarkedAutomorphism> found;
  auto offer = [&](Substitution fwd, Substitution inv, int d) {
    if (!(fwd.apply(W) == W)) return;
    if (found.count(fwd)) return;
    MarkedAutomorphism m{fwd, inv, MoveOrigin::whitehead, "whitehead:" + std::to_string(d)};
    found.emplace(std::move(fwd), std::move(m));
  };

  // Depth 1. The only signed permutation fixing W letterwise is the identity.
  if (auto sigma = match_signed_permutation(W, W, rank)) {
    offer(*sigma, signed_permutation_inverse(*sigma), 1);
  }
  const std::vector<Letter> w_key(W.letters().begin(), W.letters().end());
  if (auto it = by_image.find(w_key); it != by_image.end()) {
    for (auto i : it->second) offer(forward_two(i), inverse_two(i), 1);
  }
  const std::size_t singles = found.size();

  if (depth >= 2) {
    // psi^-1 o phi fixes W iff phi(W) = psi(W).
    for (const auto& [img, members] : by_image) {
      if (members.size() < 2) continue;
      for (auto i : members)
        for (auto j : members) {
          if (i == j) continue;
          offer(inverse_two(j).after(forward_two(i)), inverse_two(i).after(forward_two(j)), 2);
        }
    }
    // Mixed composites with a signed permutation sigma, matched positionally.
    for (std::uint32_t i = 0; i < twos.size(); ++i) {
      auto sigma = match_signed_permutation(W, image_of[i], rank);
      if (!sigma) continue;
      const Substitution sigma_inv = signed_permutation_inverse(*sigma);
      // sigma^-1 o psi (psi(W) = sigma(W)).
      offer(sigma_inv.after(forward_two(i)), inverse_two(i).after(*sigma), 2);
      // psi^-1 o sigma (sigma(W) = psi(W)).
      offer(inverse_two(i).after(*sigma), sigma_inv.after(forward_two(i)), 2);
    }
  }

  // Verify inverses; every offered map already fixes W exactly.
  std::vector<MarkedAutomorphism> searched;
  for (auto& [fwd, m] : found) {
    if (!m.forward.after(m.inverse).is_identity() || !m.inverse.after(m.forward).is_identity()) {
      throw Error("automorphism search: inverse verification failed for " + m.provenance);
    }
    searched.push_back(m);
  }
  if (stats) {
    stats->whitehead_count = twos.size() + 1;
    stats->single_fixing = singles;
    stats->composite_fixing = found.size() - singles;
  }

  std::vector<MarkedAutomorphism> out = named_moves(genus);
  std::set<Substitution> seen;
  for (const auto& m : out) seen.insert(m.forward);
  for (auto& m : searched) {
    if (seen.insert(m.forward).second) out.push_back(std::move(m));
  }
  for (const auto& m : out) {
    if (!(m.forward.apply(W) == W)) {
      throw Error("automorphism search: move " + m.provenance + " does not fix the boundary word");
    }
  }
  return out;
}

CompiledMove::CompiledMove(const Substitution& phi, const FiniteGroup& group)
    : group_(&group), identity_(phi.is_identity()) {
  offsets_.push_back(0);
  for (const auto& w : phi.images) {
    for (Letter l : w.letters()) {
      code_.push_back(static_cast<std::uint32_t>((std::abs(l) - 1) * 2 + (l < 0 ? 1 : 0)));
    }
    offsets_.push_back(static_cast<std::uint32_t>(code_.size()));
  }
}

void CompiledMove::apply(std::span<const Element> v, std::span<Element> out) const {
  const FiniteGroup& g = *group_;
  const std::size_t coords = offsets_.size() - 1;
  for (std::size_t i = 0; i < coords; ++i) {
    Element acc = FiniteGroup::identity();
    for (std::uint32_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const std::uint32_t c = code_[k];
      const Element x = v[c >> 1];
      acc = g.mul(acc, (c & 1) ? g.inv(x) : x);
    }
    out[i] = acc;
  }
}

Element evaluate_word(const FreeWord& w, std::span<const Element> v, const FiniteGroup& group) {
  Element acc = FiniteGroup::identity();
  for (Letter l : w.letters()) {
    const Element x = v[std::abs(l) - 1];
    acc = group.mul(acc, l > 0 ? x : group.inv(x));
  }
  return acc;
}

Element evaluate_boundary(std::span<const Element> v, const FiniteGroup& group) {
  Element acc = FiniteGroup::identity();
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) acc = group.mul(acc, group.commutator(v[i], v[i + 1]));
  return acc;
}

MoveSet MoveSet::build(int genus, int depth) {
  MoveSet s;
  s.genus = genus;
  s.depth = depth;
  if (genus > 0) s.automorphisms = enumerate_stabilizing_automorphisms(genus, depth);
  std::vector<std::uint8_t> bytes;
  auto put32 = [&](std::int32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(static_cast<std::uint32_t>(v) >> (8 * i)));
  };
  put32(genus);
  put32(depth);
  put32(static_cast<std::int32_t>(s.automorphisms.size()));
  for (const auto& m : s.automorphisms) {
    for (const auto& w : m.forward.images) {
      put32(static_cast<std::int32_t>(w.length()));
      for (Letter l : w.letters()) put32(l);
    }
  }
  s.hash = sha256(bytes);
  return s;
}

std::vector<CompiledMove> MoveSet::compile(const FiniteGroup& group) const {
  std::vector<CompiledMove> out;
  out.reserve(automorphisms.size());
  for (const auto& m : automorphisms) out.emplace_back(m.forward, group);
  return out;
}

nlohmann::json MoveSet::manifest() const {
  nlohmann::json j;
  j["genus"] = genus;
  j["depth"] = depth;
  j["hash"] = to_hex(hash);
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : automorphisms) {
    nlohmann::json e;
    e["provenance"] = m.provenance;
    nlohmann::json imgs = nlohmann::json::array();
    for (const auto& w : m.forward.images)
      imgs.push_back(std::vector<Letter>(w.letters().begin(), w.letters().end()));
    e["images"] = std::move(imgs);
    moves.push_back(std::move(e));
  }
  j["moves"] = std::move(moves);
  return j;
}

}  // namespace stabring
