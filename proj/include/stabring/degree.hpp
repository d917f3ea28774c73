#pragma once

#include <algorithm>
#include <optional>
#include <string>

namespace stabring {

// Degree of a graded object. An empty optional is -infinity, i.e. the
// degree of the zero object.
using Degree = std::optional<int>;

inline Degree deg_max(Degree a, Degree b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

inline Degree deg_min(Degree a, Degree b) {
  if (!a || !b) return std::nullopt;
  return std::min(*a, *b);
}

inline Degree deg_add(Degree a, Degree b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

inline Degree deg_add(Degree a, int b) {
  if (!a) return std::nullopt;
  return *a + b;
}

inline bool deg_le(Degree a, Degree b) {
  if (!a) return true;
  if (!b) return false;
  return *a <= *b;
}

inline std::string deg_to_string(Degree d) {
  return d ? std::to_string(*d) : std::string("-inf");
}

}  // namespace stabring
