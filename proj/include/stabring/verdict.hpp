#pragma once

#include <string>

#include <json.hpp>

namespace stabring {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

/// Worst of two verdicts: fail > inconclusive > pass.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

/// A checked statement. `anchor` is the identity or inequality being tested,
/// written out; `witness` names the offending basis element or degree.
struct Check {
  std::string name;
  std::string anchor;
  Verdict verdict = Verdict::pass;
  std::string witness;

  nlohmann::json to_json() const {
    return {{"name", name}, {"anchor", anchor}, {"verdict", to_string(verdict)}, {"witness", witness}};
  }
};

}  // namespace stabring
