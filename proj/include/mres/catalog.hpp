#pragma once

#include <string>
#include <vector>

#include "mres/document.hpp"

namespace mres {

// Named matroids: braid-K4, nonfano, fano, pappus, nonpappus, hessian,
// uniform-R-N, complete-V (graphic K_V), cycle-V (graphic C_V).
// Shipped entries run their self-checks on load and throw ConsistencyError
// if the data disagrees with them.
MatroidDocument load_catalog(const std::string& name);
std::vector<std::string> catalog_names();
bool is_catalog_name(const std::string& name);

Graph complete_graph(int v);
Graph cycle_graph(int v);

}  // namespace mres
