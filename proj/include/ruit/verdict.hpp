#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ruit {

/// Outcome of replaying a certificate. `path` lists child indices from the
/// root to the offending node.
struct Verdict {
  bool valid = true;
  std::string reason;
  std::vector<std::size_t> path;

  static Verdict ok() { return {}; }
  static Verdict invalid(std::string why, std::vector<std::size_t> at = {}) {
    return {false, std::move(why), std::move(at)};
  }
  explicit operator bool() const { return valid; }
};

inline std::string path_string(const std::vector<std::size_t>& path) {
  std::string s = "/";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += '/';
    s += std::to_string(path[i]);
  }
  return s;
}

}  // namespace ruit
