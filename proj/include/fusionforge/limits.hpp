#pragma once

#include <cstdlib>
#include <cstddef>
#include <string>

namespace fusionforge {

/// Size caps for the enumeration-heavy code paths.  All caps can be raised
/// explicitly; the defaults keep every operation at desk scale.
struct Limits {
  std::size_t max_s = 128;        ///< largest base group S for fusion/biset work
  std::size_t max_g = 1024;       ///< largest ambient group G
  std::size_t max_pair = 1 << 14; ///< largest product Q x S used for mark vectors
  std::size_t max_subgroup_enum = 10000;

  /// Reads FUSIONFORGE_MAX_ORDER; when set, it overrides max_s and max_g.
  static Limits from_env() {
    Limits lim;
    if (const char* env = std::getenv("FUSIONFORGE_MAX_ORDER")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end && *end == '\0' && v > 0) {
        lim.max_s = v;
        lim.max_g = v;
      }
    }
    return lim;
  }
};

inline const Limits& default_limits() {
  static const Limits lim = Limits::from_env();
  return lim;
}

} // namespace fusionforge
