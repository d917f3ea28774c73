#pragma once

#include <filesystem>
#include <string>

#include "stabring/pipeline.hpp"

namespace stabring {

/// report.json: indented, sorted keys, no timings.
std::string report_json_text(const Report& report);
/// Columns group,module,p,n,free_rank,torsion,certified_flag; one row per spot.
std::string homology_csv(const Report& report);
/// Columns group,n,count,u_injective,u_surjective.
std::string counts_csv(const Report& report);
/// Human summary, including stage timings.
std::string text_summary(const Report& report);

/// Writes report.json, homology.csv, counts.csv and summary.txt into dir.
/// Throws Error when a file cannot be written.
void emit_report(const Report& report, const std::filesystem::path& dir);

}  // namespace stabring
