#pragma once

#include <limits>
#include <random>
#include <vector>

#include "gridsched/ga.hpp"
#include "gridsched/platform.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched::testing {

// Path-enumeration level oracle, independent of compute_levels: tlevel by
// walking every source->u path, blevel by walking every u->exit path.
inline double oracle_tlevel(const TaskGraph& g, TaskId u) {
  double best = 0.0;
  for (const auto& e : g.edges) {
    if (e.dst != u) continue;
    best = std::max(best, oracle_tlevel(g, e.src) + g.nodes[e.src].cost + e.data_size);
  }
  return best;
}

inline double oracle_blevel(const TaskGraph& g, TaskId u) {
  double best = 0.0;
  for (const auto& e : g.edges) {
    if (e.src != u) continue;
    best = std::max(best, e.data_size + oracle_blevel(g, e.dst));
  }
  return g.nodes[u].cost + best;
}

// Small random DAG: edges only go id-forward, so acyclicity is structural.
inline TaskGraph random_small_dag(std::mt19937_64& rng, int max_nodes,
                                  double edge_prob = 0.4, double max_cost = 9.0,
                                  double max_data = 9.0) {
  std::uniform_int_distribution<int> nn(1, max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = nn(rng);
  std::uniform_int_distribution<int> cost(1, static_cast<int>(max_cost));
  std::uniform_int_distribution<int> data(1, static_cast<int>(max_data));
  TaskGraph g;
  for (int i = 0; i < n; ++i)
    g.nodes.push_back(TaskNode{i, static_cast<double>(cost(rng))});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < edge_prob)
        g.edges.push_back(DepEdge{u, v, static_cast<double>(data(rng))});
  return g;
}

// Exhaustive minimum of ga_fitness over every resource assignment.
inline double brute_force_batch_min(const Batch& batch, const TaskGraph& g,
                                    const GridPlatform& platform,
                                    const MonitorSnapshot& snapshot) {
  std::vector<int> domain;
  for (const auto& r : platform.resources) domain.push_back(r.id);
  const std::size_t L = batch.slots.size();
  std::vector<std::size_t> idx(L, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Chromosome c;
    for (std::size_t i = 0; i < L; ++i) c.genes.push_back(domain[idx[i]]);
    best = std::min(best, ga_fitness(c, batch, g, platform, snapshot));
    std::size_t i = 0;
    while (i < L && ++idx[i] == domain.size()) idx[i++] = 0;
    if (i == L) break;
  }
  return best;
}

}  // namespace gridsched::testing
