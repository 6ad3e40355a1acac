#pragma once

#include <string>
#include <vector>

#include "iscp/instance.hpp"

namespace iscp::testing {

// Seven-element worked example with eleven sets and radius 5.
inline IscpInstance fixture_instance() {
  const std::vector<std::vector<int>> sets = {
      {3, 5}, {4, 6}, {1, 3}, {2, 3, 4}, {1, 5, 6}, {4, 5, 6},
      {1, 4, 6, 7}, {1, 3, 4, 6}, {2, 4, 5, 7}, {1, 3, 6, 7}, {1, 2, 4, 6}};
  const std::vector<double> means = {119, 117, 124, 135, 128, 130, 143, 144, 144, 142, 141};
  return IscpInstance::with_radius(7, sets, means, RadiusSpec::absolute(5));
}

// One element, two identical sets with cost [lo, hi].
inline IscpInstance twin_instance(double lo = 1.0, double hi = 3.0) {
  return IscpInstance(1, {{1}, {1}}, Box{{lo, hi}, {lo, hi}});
}

inline std::string data_path(const std::string& name) {
  return std::string(ISCP_DATA_DIR) + "/" + name;
}

}  // namespace iscp::testing
