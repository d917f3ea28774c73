#include "stabring/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "stabring/error.hpp"

namespace stabring {

namespace {

std::string triple_str(Element a, Element b, Element c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::size_t order,
                                    std::vector<Element> table) {
  if (order == 0) throw GroupError("group table: order must be positive");
  if (table.size() != order * order) {
    throw GroupError("group table: expected " + std::to_string(order * order) +
                     " entries, got " + std::to_string(table.size()));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= order) {
      throw GroupError("group table: entry " + std::to_string(table[i]) + " at position " +
                       std::to_string(i) + " is not an element index");
    }
  }
  auto at = [&](Element x, Element y) { return table[x * order + y]; };

  // Locate a two-sided identity.
  std::size_t e = order;
  for (Element x = 0; x < order && e == order; ++x) {
    bool ok = true;
    for (Element y = 0; y < order && ok; ++y) ok = at(x, y) == y && at(y, x) == y;
    if (ok) e = x;
  }
  if (e == order) throw GroupError("group table: no identity element");
  if (e != 0) {
    // Relabel so that the identity is element 0.
    auto relabel = [&](Element x) -> Element {
      if (x == 0) return static_cast<Element>(e);
      if (x == e) return 0;
      return x;
    };
    std::vector<Element> t(order * order);
    for (Element x = 0; x < order; ++x)
      for (Element y = 0; y < order; ++y)
        t[relabel(x) * order + relabel(y)] = relabel(at(x, y));
    table = std::move(t);
  }

  FiniteGroup g;
  g.name_ = std::move(name);
  g.order_ = order;
  g.table_ = std::move(table);
  g.inverse_.assign(order, 0);
  for (Element x = 0; x < order; ++x) {
    std::size_t found = order;
    for (Element y = 0; y < order; ++y) {
      if (g.mul(x, y) == 0) {
        found = y;
        break;
      }
    }
    if (found == order || g.mul(static_cast<Element>(found), x) != 0) {
      throw GroupError("group table: element " + std::to_string(x) + " has no inverse");
    }
    g.inverse_[x] = static_cast<Element>(found);
  }
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b) {
      Element ab = g.mul(a, b);
      for (Element c = 0; c < order; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          throw GroupError("group table: not associative at " + triple_str(a, b, c));
        }
      }
    }

  std::vector<std::uint8_t> bytes;
  bytes.reserve(8 + 4 * g.table_.size());
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put32(static_cast<std::uint32_t>(order));
  for (auto v : g.table_) put32(v);
  g.hash_ = sha256(bytes);
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (Element x = 0; x < order_; ++x)
    for (Element y = x + 1; y < order_; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

std::size_t FiniteGroup::element_order(Element x) const {
  std::size_t k = 1;
  for (Element y = x; y != identity(); y = mul(y, x)) ++k;
  return k;
}

FiniteGroup cyclic_group(std::size_t order) {
  if (order == 0) throw GroupError("cyclic group: order must be positive");
  std::vector<Element> t(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) t[x * order + y] = static_cast<Element>((x + y) % order);
  return FiniteGroup::from_table(order == 1 ? "trivial" : "Z" + std::to_string(order), order,
                                 std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Element> t(n * n);
  for (Element x1 = 0; x1 < na; ++x1)
    for (Element y1 = 0; y1 < nb; ++y1)
      for (Element x2 = 0; x2 < na; ++x2)
        for (Element y2 = 0; y2 < nb; ++y2)
          t[(x1 * nb + y1) * n + (x2 * nb + y2)] =
              static_cast<Element>(a.mul(x1, x2) * nb + b.mul(y1, y2));
  return FiniteGroup::from_table(a.name() + "x" + b.name(), n, std::move(t));
}

FiniteGroup permutation_group(std::string name,
                              const std::vector<std::vector<std::vector<int>>>& generators,
                              const GroupLoadOptions& options) {
  int degree = 0;
  for (const auto& gen : generators)
    for (const auto& cycle : gen)
      for (int p : cycle) {
        if (p < 1) throw GroupError("permutation spec: points are numbered from 1");
        degree = std::max(degree, p);
      }
  using Perm = std::vector<int>;
  std::vector<Perm> gens;
  for (const auto& gen : generators) {
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    std::vector<bool> seen(degree, false);
    for (const auto& cycle : gen) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        int from = cycle[k] - 1;
        if (seen[from]) throw GroupError("permutation spec: point repeated within a generator");
        seen[from] = true;
        p[from] = cycle[(k + 1) % cycle.size()] - 1;
      }
    }
    gens.push_back(std::move(p));
  }
  // Composition convention: (p * q)(i) = q(p(i)), i.e. apply p first.
  auto compose = [&](const Perm& p, const Perm& q) {
    Perm r(degree);
    for (int i = 0; i < degree; ++i) r[i] = q[p[i]];
    return r;
  };
  Perm id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::vector<Perm> elems{id};
  std::map<Perm, Element> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Perm next = compose(elems[head], g);
      if (index.emplace(next, static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > options.order_cap) {
          throw CapExceeded("permutation spec: closure exceeds order cap " +
                            std::to_string(options.order_cap));
        }
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = index.at(compose(elems[x], elems[y]));
  return FiniteGroup::from_table(std::move(name), n, std::move(t));
}

namespace {

FiniteGroup builtin_group(const std::string& name, const GroupLoadOptions& options) {
  if (name == "trivial" || name == "Z1") return cyclic_group(1);
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return cyclic_group(std::stoul(name.substr(1)));
  }
  if (name == "V4") {
    auto g = direct_product(cyclic_group(2), cyclic_group(2));
    return FiniteGroup::from_table("V4", g.order(), {g.table().begin(), g.table().end()});
  }
  if (name == "S3") return permutation_group("S3", {{{1, 2}}, {{1, 2, 3}}}, options);
  if (name == "D4") return permutation_group("D4", {{{1, 2, 3, 4}}, {{1, 3}}}, options);
  if (name == "Q8") {
    // Left-regular action of i and j on {1, -1, i, -i, j, -j, k, -k}.
    return permutation_group("Q8", {{{1, 3, 2, 4}, {5, 7, 6, 8}}, {{1, 5, 2, 6}, {3, 8, 4, 7}}},
                             options);
  }
  throw GroupError("unknown built-in group '" + name + "'");
}

}  // namespace

FiniteGroup load_group(const nlohmann::json& spec, const GroupLoadOptions& options) {
  if (spec.is_string()) return builtin_group(spec.get<std::string>(), options);
  if (!spec.is_object() || !spec.contains("kind")) {
    throw GroupError("group spec: expected an object with a 'kind' field");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  auto named = [&](FiniteGroup g) {
    if (!spec.contains("name")) return g;
    return FiniteGroup::from_table(spec.at("name").get<std::string>(), g.order(),
                                   {g.table().begin(), g.table().end()});
  };
  if (kind == "cyclic") {
    return named(cyclic_group(spec.at("order").get<std::size_t>()));
  }
  if (kind == "cayley") {
    const auto& tab = spec.at("table");
    std::vector<Element> flat;
    std::size_t order = 0;
    if (!tab.empty() && tab.front().is_array()) {
      order = tab.size();
      for (const auto& row : tab) {
        if (row.size() != order) throw GroupError("cayley spec: table is not square");
        for (const auto& v : row) flat.push_back(v.get<Element>());
      }
    } else {
      for (const auto& v : tab) flat.push_back(v.get<Element>());
      while (order * order < flat.size()) ++order;
      if (order * order != flat.size()) {
        throw GroupError("cayley spec: flat table length is not a square");
      }
    }
    return FiniteGroup::from_table(spec.value("name", "cayley"), order, std::move(flat));
  }
  if (kind == "product") {
    const auto& factors = spec.at("factors");
    if (factors.empty()) throw GroupError("product spec: no factors");
    FiniteGroup g = load_group(factors.front(), options);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      g = direct_product(g, load_group(factors[i], options));
      if (g.order() > options.order_cap) {
        throw CapExceeded("product spec: order exceeds cap " + std::to_string(options.order_cap));
      }
    }
    return named(std::move(g));
  }
  if (kind == "perm") {
    auto gens = spec.at("generators").get<std::vector<std::vector<std::vector<int>>>>();
    return permutation_group(spec.value("name", "perm"), gens, options);
  }
  throw GroupError("group spec: unknown kind '" + kind + "'");
}

std::vector<Element> generated_subgroup(const FiniteGroup& group,
                                        std::span<const Element> generators) {
  std::vector<bool> in(group.order(), false);
  std::vector<Element> elems{FiniteGroup::identity()};
  in[0] = true;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Element g : generators) {
      Element next = group.mul(elems[head], g);
      if (!in[next]) {
        in[next] = true;
        elems.push_back(next);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group,
                                          const SubgroupOptions& options) {
  if (group.order() > options.order_cap) {
    throw CapExceeded("subgroup enumeration: |G| = " + std::to_string(group.order()) +
                      " exceeds cap " + std::to_string(options.order_cap));
  }
  // Every subgroup arises from the trivial one by repeatedly adjoining elements.
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> frontier{{FiniteGroup::identity()}};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& h : frontier) {
      std::vector<bool> member(group.order(), false);
      for (Element x : h) member[x] = true;
      for (Element g = 0; g < group.order(); ++g) {
        if (member[g]) continue;
        std::vector<Element> gens(h);
        gens.push_back(g);
        auto k = generated_subgroup(group, gens);
        if (found.insert(k).second) next.push_back(std::move(k));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& elems : sorted) {
    const std::size_t k = elems.size();
    std::vector<Element> local(group.order(), 0);
    for (std::size_t i = 0; i < k; ++i) local[elems[i]] = static_cast<Element>(i);
    std::vector<Element> t(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) t[i * k + j] = local[group.mul(elems[i], elems[j])];
    std::string name = group.name() + "<" + std::to_string(out.size()) + ">";
    out.push_back(Subgroup{std::move(elems), FiniteGroup::from_table(name, k, std::move(t))});
  }
  return out;
}

}  // namespace stabring
