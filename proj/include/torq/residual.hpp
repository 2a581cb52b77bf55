#pragma once

#include <string>
#include <vector>

namespace torq {

/// Max-abs residual of one equation together with the tolerance it is
/// judged against. `reduced` marks lines whose terms beyond the Frenet
/// order were dropped.
struct Residual {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool reduced = false;

  bool passed() const { return value < tol; }
};

inline bool all_passed(const std::vector<Residual>& rs) {
  for (const auto& r : rs)
    if (!r.passed()) return false;
  return true;
}

}  // namespace torq
