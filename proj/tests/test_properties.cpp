#include "doctest.h"
#include "property_suite.hpp"

using namespace mres;

TEST_CASE("property suite, 200 seeds") {
  for (auto& r : run_property_suite(200)) {
    CAPTURE(r.name);
    CAPTURE(r.first_failure);
    CHECK(r.cases > 0);
    CHECK(r.failures == 0);
  }
}
