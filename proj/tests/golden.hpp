#pragma once

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace golden {

inline std::filesystem::path dir() { return std::filesystem::path(SCM_DATA_DIR) / "golden"; }

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Compares against the stored file; SCM_REGEN=1 rewrites it instead.
inline void check(const std::filesystem::path& rel, const std::string& actual) {
  const auto path = dir() / rel;
  if (const char* regen = std::getenv("SCM_REGEN"); regen && std::string(regen) == "1") {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  REQUIRE_MESSAGE(std::filesystem::exists(path), "missing golden " << path.string());
  CHECK(read(path) == actual);
}

} // namespace golden
