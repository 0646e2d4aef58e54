#pragma once

// Golden-file comparison. Set REARRANGE_UPDATE_GOLDEN=1 to rewrite fixtures.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace rearrange::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(REARRANGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void expect_matches_golden(const std::string& actual, const std::string& name) {
  if (const char* update = std::getenv("REARRANGE_UPDATE_GOLDEN"); update && *update == '1') {
    std::ofstream(fixture_path(name)) << actual;
    return;
  }
  const std::string expected = read_fixture(name);
  ASSERT_FALSE(expected.empty()) << "missing fixture " << name;
  EXPECT_EQ(actual, expected) << "differs from fixture " << name;
}

}  // namespace rearrange::testing
