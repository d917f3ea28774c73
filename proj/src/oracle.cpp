#include "stabring/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

#include "stabring/error.hpp"
#include "stabring/orbits.hpp"

namespace stabring {

BarHomology bar_homology(const FiniteGroup& group, std::size_t cap) {
  const std::size_t g = group.order();
  if (g > cap) throw CapExceeded("bar complex: |G| = " + std::to_string(g) + " exceeds the cap " + std::to_string(cap));
  const std::size_t m = g - 1;
  // Normalized generators use non-identity elements 1..g-1 at index e-1.
  auto c1 = [&](Element x) { return static_cast<std::uint32_t>(x - 1); };
  auto c2 = [&](Element x, Element y) { return static_cast<std::uint32_t>((x - 1) * m + (y - 1)); };
  std::vector<Triplet> t2, t3;
  for (Element x = 1; x < g; ++x)
    for (Element y = 1; y < g; ++y) {
      const auto col = c2(x, y);
      const Element xy = group.mul(x, y);
      t2.push_back({c1(y), col, 1});
      if (xy != 0) t2.push_back({c1(xy), col, -1});
      t2.push_back({c1(x), col, 1});
      for (Element z = 1; z < g; ++z) {
        const auto col3 = static_cast<std::uint32_t>(col * m + (z - 1));
        const Element yz = group.mul(y, z);
        t3.push_back({c2(y, z), col3, 1});
        if (xy != 0) t3.push_back({c2(xy, z), col3, -1});
        if (yz != 0) t3.push_back({c2(x, yz), col3, 1});
        t3.push_back({c2(x, y), col3, -1});
      }
    }
  BarHomology b;
  b.d2 = IntMatrix::from_triplets(m, m * m, std::move(t2));
  b.d3 = IntMatrix::from_triplets(m * m, m * m * m, std::move(t3));
  b.h1 = cokernel(b.d2);
  b.h2 = chain_homology(b.d2, b.d3);
  return b;
}

std::vector<Element> commutator_subgroup(const FiniteGroup& group) {
  std::vector<Element> gens;
  for (Element x = 0; x < group.order(); ++x)
    for (Element y = 0; y < group.order(); ++y) gens.push_back(group.commutator(x, y));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return generated_subgroup(group, gens);
}

namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> p;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) p.push_back(n);
  return p;
}

}  // namespace

std::vector<Integer> abelianization_invariants(const FiniteGroup& group) {
  const auto k = commutator_subgroup(group);
  const std::size_t q = group.order() / k.size();
  // Order of x in G/K is the least m with x^m in K.
  std::vector<bool> in_k(group.order(), false);
  for (auto x : k) in_k[x] = true;
  std::vector<std::size_t> coset_order_count(group.order() + 1, 0);
  for (Element x = 0; x < group.order(); ++x) {
    Element p = x;
    std::size_t m = 1;
    while (!in_k[p]) {
      p = group.mul(p, x);
      ++m;
    }
    ++coset_order_count[m];
  }
  // Each coset has |K| elements, all of the same order in the quotient.
  for (auto& c : coset_order_count) c /= k.size();
  // Elementary divisors per prime from |A[p^j]| = p^{sum_i min(j, e_i)}.
  std::map<std::size_t, std::vector<std::size_t>> exponents;
  for (auto p : prime_factors(q)) {
    std::vector<std::size_t> log_count;  // log_p |A[p^j]|, j = 0, 1, ...
    std::size_t pj = 1;
    for (;;) {
      std::size_t c = 0;
      for (std::size_t m = 1; m < coset_order_count.size(); ++m)
        if (coset_order_count[m] && pj % m == 0) c += coset_order_count[m];
      std::size_t l = 0;
      while (c > 1) {
        c /= p;
        ++l;
      }
      if (!log_count.empty() && log_count.back() == l) break;
      log_count.push_back(l);
      pj *= p;
    }
    // Number of cyclic factors with exponent >= j is log_count[j] - log_count[j-1].
    std::vector<std::size_t> at_least;
    for (std::size_t j = 1; j < log_count.size(); ++j) at_least.push_back(log_count[j] - log_count[j - 1]);
    std::vector<std::size_t> e;
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      const std::size_t next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
      for (std::size_t r = 0; r < at_least[j] - next; ++r) e.push_back(j + 1);
    }
    std::sort(e.rbegin(), e.rend());
    exponents[p] = e;
  }
  std::size_t width = 0;
  for (auto& [p, e] : exponents) width = std::max(width, e.size());
  std::vector<Integer> inv(width, 1);
  for (auto& [p, e] : exponents)
    for (std::size_t i = 0; i < e.size(); ++i) {
      Integer f = 1;
      for (std::size_t r = 0; r < e[i]; ++r) f *= static_cast<unsigned long>(p);
      inv[i] *= f;
    }
  std::sort(inv.begin(), inv.end());
  return inv;
}

StableCountPrediction stable_count_prediction(const FiniteGroup& group, const SubgroupOptions& options) {
  StableCountPrediction out;
  for (const auto& h : enumerate_subgroups(group, options)) {
    const auto bar = bar_homology(h.group, std::max<std::size_t>(12, h.group.order()));
    if (bar.h2.free_rank) throw Error("stable count: H_2 of a finite group has a free part");
    std::uint64_t schur = 1;
    for (const auto& t : bar.h2.torsion) schur *= t.get_ui();
    const std::uint64_t comm = commutator_subgroup(h.group).size();
    out.closed += schur;
    out.bounded += schur * comm;
    out.subgroups.push_back({h.elements.size(), schur, comm});
  }
  return out;
}

namespace {

long omega(std::size_t i, std::size_t j) {
  if (i % 2 == 0 && j == i + 1) return 1;
  if (j % 2 == 0 && i == j + 1) return -1;
  return 0;
}

}  // namespace

std::vector<SmallMatrix> transvection_generators(int genus) {
  const std::size_t d = 2 * genus;
  std::vector<std::vector<long>> vs;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<long> v(d, 0);
    v[i] = 1;
    vs.push_back(v);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      std::vector<long> v(d, 0);
      v[i] = v[j] = 1;
      vs.push_back(v);
    }
  std::vector<SmallMatrix> out;
  for (const auto& v : vs) {
    // Column i is T(e_i) = e_i + w(e_i, v) v.
    SmallMatrix t{d, std::vector<long>(d * d, 0)};
    for (std::size_t i = 0; i < d; ++i) {
      long w = 0;
      for (std::size_t k = 0; k < d; ++k) w += omega(i, k) * v[k];
      for (std::size_t r = 0; r < d; ++r) t.entries[r * d + i] = (r == i ? 1 : 0) + w * v[r];
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool preserves_symplectic_form(const SmallMatrix& m) {
  const std::size_t d = m.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long s = 0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) s += m.at(a, i) * omega(a, b) * m.at(b, j);
      if (s != omega(i, j)) return false;
    }
  return true;
}

std::size_t sp_orbit_count(const FiniteGroup& group, int genus, std::uint64_t state_cap) {
  if (!group.is_abelian()) throw GroupError("symplectic oracle: group is not abelian");
  const auto total = state_count(group.order(), genus);
  if (!total || *total > state_cap) throw CapExceeded("symplectic oracle: state cap exceeded");
  const auto gens = transvection_generators(genus);
  for (const auto& t : gens)
    if (!preserves_symplectic_form(t)) throw Error("symplectic oracle: generator is not symplectic");
  const std::size_t d = 2 * genus;
  const TupleCodec codec(group.order(), d);
  auto power = [&](Element x, long e) {
    Element base = e < 0 ? group.inv(x) : x;
    Element r = 0;
    for (long k = 0; k < std::labs(e); ++k) r = group.mul(r, base);
    return r;
  };
  std::vector<std::uint32_t> parent(*total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Element> x(d), y(d);
  for (std::uint64_t r = 0; r < *total; ++r) {
    codec.decode(r, x);
    for (const auto& t : gens) {
      // (mu o T)(e_i) = sum_r T[r][i] mu(e_r).
      for (std::size_t i = 0; i < d; ++i) {
        Element acc = 0;
        for (std::size_t k = 0; k < d; ++k)
          if (t.at(k, i)) acc = group.mul(acc, power(x[k], t.at(k, i)));
        y[i] = acc;
      }
      auto a = find(static_cast<std::uint32_t>(r));
      auto b = find(static_cast<std::uint32_t>(codec.encode(y)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::size_t count = 0;
  for (std::uint64_t r = 0; r < *total; ++r)
    if (find(static_cast<std::uint32_t>(r)) == r) ++count;
  return count;
}

ModularImage move_image_mod_p(const std::vector<MarkedAutomorphism>& moves, int genus, int prime,
                              std::uint64_t cap) {
  const std::size_t d = 2 * genus;
  ModularImage out;
  out.prime = prime;
  std::uint64_t sp = 1;
  const std::uint64_t p = prime;
  for (int i = 0; i < genus * genus; ++i) sp *= p;
  for (int i = 1; i <= genus; ++i) {
    std::uint64_t q = 1;
    for (int k = 0; k < 2 * i; ++k) q *= p;
    sp *= q - 1;
  }
  out.symplectic_order = sp;
  using Mat = std::string;
  auto reduce = [&](long v) { return static_cast<char>(((v % prime) + prime) % prime); };
  std::vector<Mat> gens;
  for (const auto& m : moves) {
    const auto ab = m.forward.abelianization();
    Mat g(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g[i * d + j] = reduce(ab[i][j]);
    gens.push_back(std::move(g));
  }
  Mat id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  std::unordered_set<Mat> seen{id};
  std::deque<Mat> queue{id};
  while (!queue.empty()) {
    Mat a = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Mat c(d * d, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
          const int x = a[i * d + k];
          if (!x) continue;
          for (std::size_t j = 0; j < d; ++j) c[i * d + j] = static_cast<char>((c[i * d + j] + x * g[k * d + j]) % prime);
        }
      if (seen.insert(c).second) {
        if (seen.size() > cap) {
          out.capped = true;
          out.generated_order = seen.size();
          return out;
        }
        queue.push_back(std::move(c));
      }
    }
  }
  out.generated_order = seen.size();
  return out;
}

nlohmann::json homology_json(const HomologyGroup& h) {
  nlohmann::json j;
  j["free_rank"] = h.free_rank;
  nlohmann::json t = nlohmann::json::array();
  for (const auto& x : h.torsion) {
    if (x.fits_slong_p()) {
      t.push_back(x.get_si());
    } else {
      t.push_back(x.get_str());
    }
  }
  j["torsion"] = std::move(t);
  return j;
}

}  // namespace stabring
