// Acceptance run over the group battery: one line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stabring/oracle.hpp"
#include "stabring/pipeline.hpp"
#include "stabring/report.hpp"

using namespace stabring;

namespace {

struct Target {
  const char* group;
  int n_max;
  int p_max;
};

// |G| <= 4: n <= 4, p <= 3; orders 6 and 8: n <= 3, p <= 2.
const Target battery[] = {{"trivial", 4, 3}, {"Z2", 4, 3}, {"Z3", 4, 3}, {"Z4", 4, 3},
                          {"V4", 4, 3},      {"S3", 3, 2}, {"D4", 3, 2}, {"Q8", 3, 2}};

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.verdicts)
    if (c.name == name) return &c;
  return nullptr;
}

// The named verdict must exist and be pass.
void need_pass(Outcome& o, const std::string& group, const Report& r, const std::string& name) {
  const Check* c = find(r, name);
  if (!c) return o.fail(group + ": verdict " + name + " missing");
  if (c->verdict != Verdict::pass) o.fail(group + ": " + name + " " + to_string(c->verdict) + " [" + c->witness + "]");
}

void need_not_fail(Outcome& o, const std::string& group, const Report& r, const std::string& name) {
  const Check* c = find(r, name);
  if (!c) return o.fail(group + ": verdict " + name + " missing");
  if (c->verdict == Verdict::fail) o.fail(group + ": " + name + " fail [" + c->witness + "]");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::map<std::string, Report> reports;
  for (const auto& t : battery) {
    PipelineConfig c;
    c.group = t.group;
    c.n_max = t.n_max;
    c.p_max = t.p_max;
    c.random_pairs = 1000;
    reports.emplace(t.group, run_pipeline(c));
  }

  std::vector<std::pair<std::string, Outcome>> lines;
  auto each = [&](const std::function<void(Outcome&, const std::string&, const Report&)>& body) {
    Outcome o;
    for (const auto& [g, r] : reports) {
      if (r.failed_stage) {
        o.fail(g + ": stage " + *r.failed_stage + " failed: " + r.error.value_or(""));
        continue;
      }
      body(o, g, r);
    }
    return o;
  };

  Outcome c1 = each([](Outcome& o, const std::string& g, const Report& r) { need_pass(o, g, r, "d_squared/R"); });
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > 900) c1.fail("battery took " + std::to_string(elapsed) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "battery in %.1f s", elapsed);
  if (c1.ok) c1.detail = buf;
  lines.emplace_back("exact complex: d o d = 0 on every K(R) spot", c1);

  lines.emplace_back("homotopy identity S d + d S = right multiplication",
                     each([](Outcome& o, const std::string& g, const Report& r) { need_pass(o, g, r, "homotopy"); }));

  lines.emplace_back("right multiplication annihilates H_p(K(R))",
                     each([](Outcome& o, const std::string& g, const Report& r) { need_pass(o, g, r, "annihilation"); }));

  lines.emplace_back("h_p(R) <= p + A(R) + 1 where A(R) is certified",
                     each([](Outcome& o, const std::string& g, const Report& r) {
                       if (r.profile->stable_within_window) need_pass(o, g, r, "h_p_bound");
                     }));

  {
    Outcome o;
    const std::tuple<const char*, int, std::size_t> expected[] = {{"Z2", 1, 2}, {"Z3", 1, 2}, {"Z4", 1, 3}, {"V4", 2, 6}};
    for (const auto& [g, n, count] : expected) {
      const Report& r = reports.at(g);
      if (r.counts.size() <= static_cast<std::size_t>(n) || r.counts[n] != count)
        o.fail(std::string(g) + " n=" + std::to_string(n) + ": orbit engine disagrees with " + std::to_string(count));
      if (sp_orbit_count(load_group(g), n) != count)
        o.fail(std::string(g) + " n=" + std::to_string(n) + ": symplectic oracle disagrees with " + std::to_string(count));
    }
    for (const auto& [g, r] : reports)
      if (r.group["abelian"].get<bool>())
        for (int n = 1; n <= std::min(3, static_cast<int>(r.counts.size()) - 1); ++n)
          need_pass(o, g, r, "sp_orbit_count/n=" + std::to_string(n));
    lines.emplace_back("orbit counts equal the symplectic oracle", o);
  }

  {
    Outcome o;
    const std::pair<const char*, std::size_t> expected[] = {{"trivial", 1}, {"Z2", 2}, {"Z3", 2}, {"Z4", 3}, {"V4", 6}};
    for (const auto& [g, count] : expected) {
      const Report& r = reports.at(g);
      if (!r.profile || !r.profile->stable_within_window) {
        o.fail(std::string(g) + ": stability not certified");
        continue;
      }
      if (r.counts.back() != count) o.fail(std::string(g) + ": top count " + std::to_string(r.counts.back()));
    }
    for (const auto& [g, r] : reports)
      if (r.profile && r.profile->stable_within_window) need_pass(o, g, r, "stable_count");
    lines.emplace_back("stable count equals the subgroup sum of |H_2|", o);
  }

  {
    Outcome o;
    const std::pair<const char*, std::vector<long>> hopf[] = {{"trivial", {}}, {"Z2", {}}, {"Z3", {}}, {"Z4", {}},
                                                              {"V4", {2}},     {"S3", {}}, {"D4", {2}}, {"Q8", {}}};
    for (const auto& [g, h2] : hopf) {
      const Report& r = reports.at(g);
      nlohmann::json expect = {{"free_rank", 0}, {"torsion", h2}};
      if (r.oracles["bar"]["h2"] != expect) o.fail(std::string(g) + ": bar H_2 = " + r.oracles["bar"]["h2"].dump());
      need_pass(o, g, r, "bar_h1_abelianization");
      need_pass(o, g, r, "bar_complex");
    }
    lines.emplace_back("bar complex H_2 matches Hopf fixtures, H_1 matches abelianization", o);
  }

  lines.emplace_back("U-stabilization thresholds: no counterexample in window",
                     each([](Outcome& o, const std::string& g, const Report& r) {
                       for (const char* n : {"u_iso_above_A", "u_iso_above_h01", "u_iso_q0_threshold"})
                         need_not_fail(o, g, r, n);
                       const auto& p = *r.profile;
                       for (int n = p.a + 1; n + 1 < static_cast<int>(p.counts.size()); ++n)
                         if (p.stable_within_window && !p.u_bijective(n))
                           o.fail(g + ": U not bijective at n = " + std::to_string(n));
                     }));

  lines.emplace_back("products and S independent of representatives (1000 draws per group)",
                     each([](Outcome& o, const std::string& g, const Report& r) {
                       need_pass(o, g, r, "representative_independence");
                     }));

  lines.emplace_back("module lemmas on derived modules", each([](Outcome& o, const std::string& g, const Report& r) {
                       std::size_t seen = 0;
                       for (const auto& c : r.verdicts)
                         if (c.name.rfind("generation_degree/", 0) == 0 || c.name.rfind("tensor_degree/", 0) == 0 ||
                             c.name.rfind("a_delta_bound/", 0) == 0) {
                           ++seen;
                           need_pass(o, g, r, c.name);
                         }
                       if (seen == 0) o.fail(g + ": no module checks ran");
                     }));

  {
    Outcome o;
    for (const auto& t : {battery[4], battery[5]}) {
      std::string first;
      for (unsigned threads : {1u, 2u, 8u}) {
        PipelineConfig c;
        c.group = t.group;
        c.n_max = t.n_max;
        c.p_max = t.p_max;
        c.random_pairs = 1000;
        c.threads = threads;
        const std::string text = report_json_text(run_pipeline(c));
        if (first.empty()) first = text;
        else if (text != first) o.fail(std::string(t.group) + ": JSON differs at " + std::to_string(threads) + " threads");
      }
      if (first != report_json_text(reports.at(t.group))) o.fail(std::string(t.group) + ": JSON differs from default run");
    }
    lines.emplace_back("byte-identical JSON across thread counts", o);
  }

  int failed = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [what, o] = lines[i];
    std::printf("criterion %2zu: %s  %s%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", what.c_str(),
                o.detail.empty() ? "" : "  -- ", o.detail.c_str());
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
