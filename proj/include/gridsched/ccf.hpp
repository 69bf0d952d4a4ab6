#pragma once

#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "gridsched/assigner.hpp"
#include "gridsched/levels.hpp"
#include "gridsched/list_scheduler.hpp"
#include "gridsched/platform.hpp"
#include "gridsched/schedule.hpp"

namespace gridsched {

// True iff every predecessor has finished in the snapshot.
inline bool is_ready(const TaskGraph& g, TaskId task, const MonitorSnapshot& snapshot) {
  for (const auto& e : g.edges)
    if (e.dst == task && !snapshot.finished(e.src)) return false;
  return true;
}

struct CcfResult {
  Schedule schedule;
  std::vector<TraceEvent> trace;
};

namespace detail {

// Candidate set: static-mapping resource, the parents' resources, and the
// recorded suggestion, filtered by fits(); falls back to all fitting
// resources when the filter empties it.
inline std::vector<int> candidate_set(const TaskGraph& g, const GridPlatform& platform,
                                      const MonitorSnapshot& snap, TaskId t,
                                      const std::map<TaskId, int>& static_map,
                                      const std::map<TaskId, int>& suggestions) {
  std::set<int> cands;
  if (auto it = static_map.find(t); it != static_map.end()) cands.insert(it->second);
  for (const auto& e : g.edges)
    if (e.dst == t)
      if (auto it = snap.placements.find(e.src); it != snap.placements.end())
        cands.insert(it->second.resource);
  if (auto it = suggestions.find(t); it != suggestions.end()) cands.insert(it->second);

  std::vector<int> out;
  for (int rid : cands)
    if (fits(g.nodes[t], platform.resource(rid), snap)) out.push_back(rid);
  if (out.empty())
    for (const auto& r : platform.resources)
      if (fits(g.nodes[t], r, snap)) out.push_back(r.id);
  if (out.empty())
    throw std::runtime_error("assignResource: no fitting resource for task " +
                             std::to_string(t));
  return out;
}

}  // namespace detail

// The CCF dynamic scheduler. Dequeuing RUNNING-QUEUE is realized as popping
// the next finish event in simulated time (ties by task id); CHILDREN-QUEUE
// drains in descending tlevel+blevel. Ready children of one drain form the
// batch handed to the assigner; non-ready children leave a suggestion.
inline CcfResult run_ccf(const TaskGraph& g, const GridPlatform& platform,
                         const LevelTable& levels, Assigner& assigner) {
  const int n = static_cast<int>(g.nodes.size());
  auto sources = g.source_nodes();
  if (sources.size() != 1)
    throw std::runtime_error("run_ccf: graph must be normalized to a single source");

  Schedule static_sched = static_list_schedule(g, platform, levels);
  std::map<TaskId, int> static_map = static_mapping(static_sched);

  CcfResult res;
  MonitorSnapshot snap;
  std::map<TaskId, int> suggestions;
  auto succ = g.successors();
  std::vector<bool> assigned(n, false);

  // finish events, earliest time first, ties by task id
  using Ev = std::pair<double, TaskId>;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> running;

  auto submit_batch = [&](std::vector<TaskId> batch, double now) {
    if (batch.empty()) return;
    AssignerContext ctx{g, platform, levels, snap, batch, {}, static_map, suggestions};
    for (TaskId t : batch)
      ctx.candidates[t] =
          detail::candidate_set(g, platform, snap, t, static_map, suggestions);
    auto mapping = assigner.assign(ctx);
    for (TaskId t : batch) {
      int rid = mapping.at(t);
      double st = std::max(now, predicted_start(g, platform, snap, t, rid));
      double ft = st + exec_time(g.nodes[t], platform.resource(rid));
      update_resources(snap, g.nodes[t], platform.resource(rid), st, ft);
      assigned[t] = true;
      suggestions.erase(t);
      res.schedule.place(t, rid, st, ft);
      res.trace.push_back(TraceEvent{now, "submitted", t, rid});
      running.push({ft, t});
    }
  };

  submit_batch({sources.front()}, 0.0);

  while (!running.empty()) {
    auto [now, task] = running.top();
    running.pop();
    complete_task(snap, g.nodes[task]);
    res.trace.push_back(
        TraceEvent{now, "finished", task, snap.placements.at(task).resource});

    // CHILDREN-QUEUE: this task's successors, highest priority first
    auto cmp = [&](TaskId a, TaskId b) {
      if (levels[a].priority != levels[b].priority)
        return levels[a].priority > levels[b].priority;
      return a < b;
    };
    std::set<TaskId, decltype(cmp)> children(cmp);
    for (int v : succ[task])
      if (!assigned[v]) children.insert(v);

    std::vector<TaskId> batch;
    for (TaskId child : children) {
      if (is_ready(g, child, snap))
        batch.push_back(child);
      else
        suggest_resources(g, snap, child, suggestions);
    }
    submit_batch(std::move(batch), now);
  }

  if (static_cast<int>(res.schedule.placements.size()) != n)
    throw std::runtime_error("run_ccf: not all tasks were scheduled");
  return res;
}

}  // namespace gridsched
