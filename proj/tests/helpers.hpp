#pragma once

#include <cstdlib>
#include <string>

#include "altfix/scenario.hpp"

namespace altfix_test {

inline std::string scenario_dir() {
  if (const char* env = std::getenv("ALTFIX_SCENARIO_DIR")) return env;
  return ALTFIX_SCENARIO_FALLBACK;
}

inline altfix::Scenario load_bundled(const std::string& name) {
  return altfix::load_scenario(scenario_dir() + "/" + name + ".json");
}

inline const char* kBundledIds[] = {
    "two_intervals",  "two_intervals_geometric",
    "overlap_intervals", "overlap_intervals_geometric",
    "prox_pair",      "prox_pair_geometric",
    "spider_pair",    "spider_pair_geometric",
    "spider_prox",    "unit_interval",
    "fixed_point"};

}  // namespace altfix_test
