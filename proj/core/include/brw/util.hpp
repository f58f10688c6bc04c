#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace brw {

using Tuple = std::vector<int>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : t) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::uint64_t fnv64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv64(const std::string& s) { return fnv64(s.data(), s.size()); }

// Log verbosity is controlled by the BRW_LOG environment variable:
// unset/empty = silent, "info" = progress notes, "debug" = everything.
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("BRW_LOG");
    if (env == nullptr || *env == '\0') return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    return 1;
  }();
  return level;
}

template <typename... Args>
void log_info(const char* fmt, Args... args) {
  if (log_level() >= 1) {
    std::fprintf(stderr, "[brw] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

template <typename... Args>
void log_debug(const char* fmt, Args... args) {
  if (log_level() >= 2) {
    std::fprintf(stderr, "[brw] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

}  // namespace brw
