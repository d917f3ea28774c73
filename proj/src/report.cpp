#include "stabring/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "stabring/error.hpp"

namespace stabring {

namespace {

std::string group_name(const Report& r) {
  return r.group.contains("name") ? r.group["name"].get<std::string>() : std::string("?");
}

std::string torsion_field(const HomologyGroup& h) {
  std::string s;
  for (std::size_t i = 0; i < h.torsion.size(); ++i) s += (i ? ";" : "") + h.torsion[i].get_str();
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("report: cannot open " + path.string());
  out << text;
  if (!out.flush()) throw Error("report: cannot write " + path.string());
}

}  // namespace

std::string report_json_text(const Report& report) { return report.to_json().dump(2) + "\n"; }

std::string homology_csv(const Report& report) {
  std::ostringstream s;
  s << "group,module,p,n,free_rank,torsion,certified_flag\n";
  const std::string g = group_name(report);
  for (const auto& h : report.homology)
    s << g << ',' << h.module << ',' << h.p << ',' << h.n << ',' << h.group.free_rank << ',' << torsion_field(h.group)
      << ',' << (h.certified ? 1 : 0) << '\n';
  return s.str();
}

std::string counts_csv(const Report& report) {
  std::ostringstream s;
  s << "group,n,count,u_injective,u_surjective\n";
  const std::string g = group_name(report);
  for (std::size_t n = 0; n < report.counts.size(); ++n) {
    s << g << ',' << n << ',' << report.counts[n] << ',';
    if (report.profile && n < report.profile->u_injective.size())
      s << report.profile->u_injective[n] << ',' << report.profile->u_surjective[n];
    else
      s << ',';
    s << '\n';
  }
  return s.str();
}

std::string text_summary(const Report& report) {
  std::ostringstream s;
  s << "group " << group_name(report);
  if (report.group.contains("order")) s << " (order " << report.group["order"] << ")";
  s << "\n";
  if (!report.counts.empty()) {
    s << "orbit counts:";
    for (auto c : report.counts) s << ' ' << c;
    s << "\n";
  }
  if (report.profile) {
    const auto& p = *report.profile;
    s << "A(R) = " << p.a << ", A~(R) = " << p.a_tilde << ", stable in window: " << (p.stable_within_window ? "yes" : "no")
      << "\n";
  }
  s << "\nverdicts\n";
  for (const auto& c : report.verdicts) {
    s << "  " << std::left << std::setw(13) << to_string(c.verdict) << c.name;
    if (!c.witness.empty()) s << "  [" << c.witness << "]";
    s << "\n";
  }
  if (report.failed_stage) s << "\nstage '" << *report.failed_stage << "' failed: " << report.error.value_or("") << "\n";
  s << "\ntimings\n";
  for (const auto& t : report.timings)
    s << "  " << std::left << std::setw(10) << t.stage << std::fixed << std::setprecision(3) << t.seconds << " s\n";
  s << "\noverall: " << to_string(report.overall()) << "\n";
  return s.str();
}

void emit_report(const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("report: cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "report.json", report_json_text(report));
  write_file(dir / "homology.csv", homology_csv(report));
  write_file(dir / "counts.csv", counts_csv(report));
  write_file(dir / "summary.txt", text_summary(report));
}

}  // namespace stabring
