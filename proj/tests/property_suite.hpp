#pragma once

#include <string>
#include <vector>

namespace mres {

// randomized checks on small matroids (n <= 8), seeds 0..seeds-1
struct PropertyResult {
  std::string name;
  int cases = 0, failures = 0, first_failure = -1;
  void record(int seed, bool ok);
};
std::vector<PropertyResult> run_property_suite(int seeds);

}  // namespace mres
