#include "sumcode/config.hpp"

#include <cstdlib>
#include <optional>
#include <string>

namespace sumcode {

namespace {

std::optional<int> env_override() {
  static const std::optional<int> value = []() -> std::optional<int> {
    const char* raw = std::getenv("SUMCODE_MAX_K");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
      return std::stoi(raw);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }();
  return value;
}

}  // namespace

int max_exhaustive_k(int default_cap) {
  if (auto v = env_override(); v.has_value() && *v > 0) return *v;
  return default_cap;
}

}
