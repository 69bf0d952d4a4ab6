#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "gridsched/assigner.hpp"
#include "gridsched/levels.hpp"
#include "gridsched/platform.hpp"
#include "gridsched/schedule.hpp"

namespace gridsched {

// Static list scheduling baseline: repeatedly take the ready task with the
// highest tlevel+blevel priority (ties by id) and append it to the fitting
// resource with the earliest finish time. No insertion-based gap filling.
inline Schedule static_list_schedule(const TaskGraph& g, const GridPlatform& platform,
                                     const LevelTable& levels) {
  const int n = static_cast<int>(g.nodes.size());
  Schedule sched;
  MonitorSnapshot snap;
  auto pred = g.predecessors();
  std::vector<int> remaining = g.in_degree();
  auto succ = g.successors();

  auto cmp = [&](TaskId a, TaskId b) {
    if (levels[a].priority != levels[b].priority)
      return levels[a].priority > levels[b].priority;
    return a < b;
  };
  std::set<TaskId, decltype(cmp)> ready(cmp);
  for (int i = 0; i < n; ++i)
    if (remaining[i] == 0) ready.insert(i);

  while (!ready.empty()) {
    TaskId t = *ready.begin();
    ready.erase(ready.begin());

    int best = -1;
    double best_ft = 0.0;
    for (const auto& r : platform.resources) {
      if (!fits(g.nodes[t], r, snap)) continue;
      double ft = predicted_finish(g, platform, snap, t, r.id);
      if (best < 0 || ft < best_ft - 1e-12 ||
          (ft < best_ft + 1e-12 && r.id < best)) {
        best = r.id;
        best_ft = ft;
      }
    }
    if (best < 0)
      throw std::runtime_error("static_list_schedule: no fitting resource for task " +
                               std::to_string(t));

    double st = predicted_start(g, platform, snap, t, best);
    double ft = st + exec_time(g.nodes[t], platform.resource(best));
    update_resources(snap, g.nodes[t], platform.resource(best), st, ft);
    complete_task(snap, g.nodes[t]);  // static view: predecessors count as done
    sched.place(t, best, st, ft);

    for (int v : succ[t])
      if (--remaining[v] == 0) ready.insert(v);
  }
  if (static_cast<int>(sched.placements.size()) != n)
    throw std::runtime_error("static_list_schedule: cycle in graph");
  return sched;
}

// The static task->resource mapping CCF feeds into its candidate sets.
inline std::map<TaskId, int> static_mapping(const Schedule& s) {
  std::map<TaskId, int> out;
  for (const auto& [t, p] : s.placements) out[t] = p.resource;
  return out;
}

}  // namespace gridsched
