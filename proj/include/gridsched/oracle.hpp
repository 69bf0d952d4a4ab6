#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "gridsched/platform.hpp"
#include "gridsched/schedule.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

// Exhaustive minimum-makespan search for tiny instances: every
// task->resource assignment crossed with every topological dispatch order,
// each simulated under the earliest-start policy. Independent of the
// heuristic schedulers; used as the lower-bound oracle in tests.
inline Schedule oracle_schedule(const TaskGraph& g, const GridPlatform& platform,
                                int max_nodes = 8) {
  const int n = static_cast<int>(g.nodes.size());
  const int nr = static_cast<int>(platform.resources.size());
  if (n > max_nodes || nr > 3)
    throw std::runtime_error("oracle_schedule: instance too large");

  // all topological orders
  std::vector<std::vector<TaskId>> orders;
  {
    std::vector<int> deg = g.in_degree();
    auto succ = g.successors();
    std::vector<TaskId> cur;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == n) {
        orders.push_back(cur);
        return;
      }
      for (int u = 0; u < n; ++u) {
        if (used[u] || deg[u] != 0) continue;
        used[u] = true;
        for (int v : succ[u]) --deg[v];
        cur.push_back(u);
        self(self);
        cur.pop_back();
        for (int v : succ[u]) ++deg[v];
        used[u] = false;
      }
    };
    rec(rec);
  }
  if (orders.empty()) throw std::runtime_error("oracle_schedule: cyclic graph");

  std::vector<std::vector<std::pair<int, double>>> preds(n);  // (parent, data)
  for (const auto& e : g.edges) preds[e.dst].push_back({e.src, e.data_size});

  std::vector<int> assign(n, 0);
  std::vector<double> st(n), ft(n), avail(nr);
  double best_mk = std::numeric_limits<double>::infinity();
  Schedule best;

  MonitorSnapshot empty_snap;
  auto feasible = [&](int task, int res_idx) {
    return fits(g.nodes[task], platform.resources[res_idx], empty_snap);
  };

  while (true) {
    bool any_feasible = true;
    for (int u = 0; u < n && any_feasible; ++u)
      if (!feasible(u, assign[u])) any_feasible = false;

    if (any_feasible) {
      for (const auto& order : orders) {
        std::fill(avail.begin(), avail.end(), 0.0);
        double mk = 0.0;
        bool pruned = false;
        for (TaskId u : order) {
          const Resource& r = platform.resources[assign[u]];
          double start = avail[assign[u]];
          for (const auto& [p, data] : preds[u]) {
            const Resource& pr = platform.resources[assign[p]];
            start = std::max(start, ft[p] + comm_time(data, pr, r, platform));
          }
          st[u] = start;
          ft[u] = start + exec_time(g.nodes[u], r);
          avail[assign[u]] = ft[u];
          mk = std::max(mk, ft[u]);
          if (mk >= best_mk) {
            pruned = true;
            break;
          }
        }
        if (!pruned && mk < best_mk) {
          best_mk = mk;
          best = Schedule{};
          for (int u = 0; u < n; ++u)
            best.place(u, platform.resources[assign[u]].id, st[u], ft[u]);
        }
      }
    }

    // next assignment (odometer)
    int i = 0;
    while (i < n && ++assign[i] == nr) assign[i++] = 0;
    if (i == n) break;
  }
  if (best.placements.empty())
    throw std::runtime_error("oracle_schedule: no feasible assignment");
  return best;
}

}  // namespace gridsched
