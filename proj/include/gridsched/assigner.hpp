#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gridsched/levels.hpp"
#include "gridsched/platform.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

// Everything an assignResource strategy may look at when placing a batch of
// ready tasks. Snapshot and levels are read-only; suggestions persist across
// calls until a task is assigned.
struct AssignerContext {
  const TaskGraph& graph;
  const GridPlatform& platform;
  const LevelTable& levels;
  const MonitorSnapshot& snapshot;
  std::vector<TaskId> ready;                  // batch, priority-descending
  std::map<TaskId, std::vector<int>> candidates;
  std::map<TaskId, int> static_map;           // from the list baseline
  std::map<TaskId, int> suggestions;
};

// Earliest instant task data is available on `rid`: latest parent finish
// plus transfer time. Parents not yet in the snapshot contribute nothing
// (callers guarantee readiness where it matters).
inline double data_arrival(const TaskGraph& g, const GridPlatform& platform,
                           const MonitorSnapshot& snapshot, TaskId task, int rid) {
  double arrival = 0.0;
  const Resource& dst = platform.resource(rid);
  for (const auto& e : g.edges) {
    if (e.dst != task) continue;
    auto it = snapshot.placements.find(e.src);
    if (it == snapshot.placements.end()) continue;
    const Resource& src = platform.resource(it->second.resource);
    arrival = std::max(arrival, it->second.ft + comm_time(e.data_size, src, dst, platform));
  }
  return arrival;
}

inline double predicted_start(const TaskGraph& g, const GridPlatform& platform,
                              const MonitorSnapshot& snapshot, TaskId task, int rid) {
  return std::max(snapshot.resource_ready(rid),
                  data_arrival(g, platform, snapshot, task, rid));
}

inline double predicted_finish(const TaskGraph& g, const GridPlatform& platform,
                               const MonitorSnapshot& snapshot, TaskId task, int rid) {
  return predicted_start(g, platform, snapshot, task, rid) +
         exec_time(g.nodes[task], platform.resource(rid));
}

class Assigner {
 public:
  virtual ~Assigner() = default;
  virtual std::string name() const = 0;
  // One resource per ready task; must cover every task in ctx.ready.
  virtual std::map<TaskId, int> assign(const AssignerContext& ctx) = 0;
};

// Earliest-finish-time over the candidate set, ties by lowest resource id.
// Batch mates already placed in this call occupy their resource through a
// provisional availability overlay, so equal tasks spread instead of piling
// onto one resource.
class GreedyAssigner : public Assigner {
 public:
  std::string name() const override { return "greedy"; }

  std::map<TaskId, int> assign(const AssignerContext& ctx) override {
    std::map<TaskId, int> out;
    std::map<int, double> avail;
    auto finish = [&](TaskId t, int rid) {
      double ready = ctx.snapshot.resource_ready(rid);
      if (auto it = avail.find(rid); it != avail.end())
        ready = std::max(ready, it->second);
      double st = std::max(ready, data_arrival(ctx.graph, ctx.platform, ctx.snapshot, t, rid));
      return st + exec_time(ctx.graph.nodes[t], ctx.platform.resource(rid));
    };
    for (TaskId t : ctx.ready) {
      const auto& cands = ctx.candidates.at(t);
      int best = cands.front();
      double best_ft = finish(t, best);
      for (std::size_t i = 1; i < cands.size(); ++i) {
        double ft = finish(t, cands[i]);
        if (ft < best_ft - 1e-12 || (ft < best_ft + 1e-12 && cands[i] < best)) {
          best = cands[i];
          best_ft = ft;
        }
      }
      out[t] = best;
      avail[best] = best_ft;
    }
    return out;
  }
};

// Records the resource of the finished parent sending the most data into a
// not-yet-ready task (ties by parent id). Called whenever a parent finishes
// while the child still waits.
inline void suggest_resources(const TaskGraph& g, const MonitorSnapshot& snapshot,
                              TaskId task, std::map<TaskId, int>& suggestions) {
  double best_size = -1.0;
  TaskId best_parent = -1;
  int best_res = -1;
  for (const auto& e : g.edges) {
    if (e.dst != task) continue;
    auto it = snapshot.placements.find(e.src);
    if (it == snapshot.placements.end() || !it->second.finished) continue;
    if (e.data_size > best_size ||
        (e.data_size == best_size && e.src < best_parent)) {
      best_size = e.data_size;
      best_parent = e.src;
      best_res = it->second.resource;
    }
  }
  if (best_res >= 0) suggestions[task] = best_res;
}

}  // namespace gridsched
