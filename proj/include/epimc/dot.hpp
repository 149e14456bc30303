#pragma once

#include <string>

#include "epimc/model_io.hpp"
#include "epimc/state.hpp"

namespace epimc {

// Graphviz rendering of the bounded-horizon reachable state graph. Nodes are
// labeled with state names and value tuples; states satisfying the bad
// condition are shaded; edges carry joint-action labels; self-loops are
// suppressed.
std::string export_dot(const LoadedModel& lm, const RunSet& rs);

}  // namespace epimc
