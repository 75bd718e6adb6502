#ifndef LINSET_CAPS_HPP
#define LINSET_CAPS_HPP

#include <cstdint>
#include <cstdlib>
#include <string>

namespace linset {

/// Default cap for enumerations over F_{q^n} (point sets, witnesses).
inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t(1) << 20;
/// Default cap on q^{2n} for semifield zero-divisor scans.
inline constexpr std::uint64_t kDefaultPairCap = std::uint64_t(1) << 26;

/// LINSET_CAP, when set to a positive integer, replaces every default cap.
inline std::uint64_t cap_or_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("LINSET_CAP")) {
    try {
      const unsigned long long v = std::stoull(s);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return fallback;
}

}  // namespace linset

#endif  // LINSET_CAPS_HPP
