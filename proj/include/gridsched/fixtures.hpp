#pragma once

#include "gridsched/platform.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

// Nine-task reference DAG (ids 0..8 here; task T_u in the literature is
// node u-1). Costs {2,3,3,4,5,4,4,4,1}; exits are nodes 4 and 8. Levels:
// tlevel {0,6,3,3,3,10,12,8,22}, blevel {23,15,14,15,5,10,11,10,1},
// critical path length 23 through nodes 0, 6, 8.
inline TaskGraph reference_dag9() {
  TaskGraph g;
  const double costs[] = {2, 3, 3, 4, 5, 4, 4, 4, 1};
  for (int i = 0; i < 9; ++i) g.nodes.push_back(TaskNode{i, costs[i]});
  g.edges = {
      {0, 1, 4}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {0, 6, 10},
      {1, 5, 1}, {1, 6, 1}, {2, 7, 1}, {3, 7, 1},
      {5, 8, 5}, {6, 8, 6}, {7, 8, 5},
  };
  return g;
}

// "Three processors": identical unit resources on one cluster with the unit
// link, so exec time = cost and comm time = data_size.
inline GridPlatform three_unit_resources() { return GridPlatform::unit(3); }

}  // namespace gridsched
