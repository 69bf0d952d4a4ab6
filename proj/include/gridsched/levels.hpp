#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gridsched/taskgraph.hpp"

namespace gridsched {

inline constexpr double kLevelEps = 1e-9;

struct LevelEntry {
  double tlevel = 0.0;
  double blevel = 0.0;
  double alap = 0.0;
  double priority = 0.0;  // tlevel + blevel
};

struct LevelTable {
  std::vector<LevelEntry> entries;  // indexed by TaskId
  // touch counters for the linear-time contract
  std::uint64_t node_visits = 0;
  std::uint64_t edge_visits = 0;

  const LevelEntry& operator[](TaskId u) const { return entries[u]; }
  std::size_t size() const { return entries.size(); }
};

using EdgeCommFn = std::function<double(const DepEdge&)>;

// Abstract mode: the edge's data_size is the communication time directly
// (unit link).
inline double unit_tau(const DepEdge& e) { return e.data_size; }

// One forward and one backward pass in topological order.
// tlevel excludes the node's own cost; blevel includes it.
inline LevelTable compute_levels(const TaskGraph& g, const EdgeCommFn& tau = unit_tau) {
  LevelTable table;
  const int n = static_cast<int>(g.nodes.size());
  table.entries.resize(n);
  auto order = topological_order_fast(g);

  // Per-edge tau evaluated once, reused by both passes.
  std::vector<double> etau(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    etau[i] = tau(g.edges[i]);
    if (etau[i] < 0) throw std::runtime_error("compute_levels: negative tau");
  }

  // CSR in both directions.
  const int m = static_cast<int>(g.edges.size());
  std::vector<int> soff(n + 1, 0), sadj(m), sedge(m);
  std::vector<int> poff(n + 1, 0), padj(m), pedge(m);
  for (const auto& e : g.edges) {
    ++soff[e.src + 1];
    ++poff[e.dst + 1];
  }
  for (int i = 0; i < n; ++i) {
    soff[i + 1] += soff[i];
    poff[i + 1] += poff[i];
  }
  {
    std::vector<int> cs(soff.begin(), soff.end() - 1), cp(poff.begin(), poff.end() - 1);
    for (int i = 0; i < m; ++i) {
      const auto& e = g.edges[i];
      sadj[cs[e.src]] = e.dst;
      sedge[cs[e.src]++] = i;
      padj[cp[e.dst]] = e.src;
      pedge[cp[e.dst]++] = i;
    }
  }

  for (int u : order) {
    ++table.node_visits;
    double tl = 0.0;
    for (int k = poff[u]; k < poff[u + 1]; ++k) {
      ++table.edge_visits;
      int p = padj[k];
      tl = std::max(tl, table.entries[p].tlevel + g.nodes[p].cost + etau[pedge[k]]);
    }
    table.entries[u].tlevel = tl;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    ++table.node_visits;
    double best = 0.0;
    for (int k = soff[u]; k < soff[u + 1]; ++k) {
      ++table.edge_visits;
      best = std::max(best, etau[sedge[k]] + table.entries[sadj[k]].blevel);
    }
    table.entries[u].blevel = g.nodes[u].cost + best;
  }

  double cp = 0.0;
  for (const auto& e : table.entries) cp = std::max(cp, e.blevel);
  for (auto& e : table.entries) {
    e.alap = cp - e.blevel;
    e.priority = e.tlevel + e.blevel;
  }
  return table;
}

// Critical-path length and the set of tasks on some critical path.
inline std::pair<double, std::vector<TaskId>> critical_path(const LevelTable& levels) {
  double length = 0.0;
  for (const auto& e : levels.entries) length = std::max(length, e.blevel);
  std::vector<TaskId> tasks;
  for (std::size_t u = 0; u < levels.entries.size(); ++u)
    if (std::abs(levels.entries[u].priority - length) <= kLevelEps)
      tasks.push_back(static_cast<TaskId>(u));
  return {length, tasks};
}

// average edge weight / average node weight
inline double ccr(const TaskGraph& g, const EdgeCommFn& tau = unit_tau) {
  if (g.edges.empty()) throw std::runtime_error("ccr: empty edge set");
  double esum = 0.0, csum = 0.0;
  for (const auto& e : g.edges) esum += tau(e);
  for (const auto& node : g.nodes) csum += node.cost;
  if (csum <= 0.0) throw std::runtime_error("ccr: zero total node weight");
  const double avg_edge = esum / static_cast<double>(g.edges.size());
  const double avg_node = csum / static_cast<double>(g.nodes.size());
  return avg_edge / avg_node;
}

}  // namespace gridsched
