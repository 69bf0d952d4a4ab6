#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gridsched/levels.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

struct GeneratorParams {
  int n_tasks = 25;
  int n_layers = 5;
  double edge_density = 0.3;        // extra forward edges beyond connectivity
  double cost_min = 1.0, cost_max = 10.0;
  double data_min = 1.0, data_max = 10.0;
  std::optional<double> target_ccr;
  std::uint64_t seed = 0;
};

// Seed-deterministic layered DAG: layer 0 is the single source, every later
// node gets at least one parent in the previous layer, extra edges cross
// forward between layers with probability edge_density. When target_ccr is
// set, all data sizes are rescaled so ccr() matches it.
inline TaskGraph generate_layered(const GeneratorParams& p) {
  if (p.n_layers < 1 || p.n_tasks < p.n_layers)
    throw std::runtime_error("generate_layered: need n_tasks >= n_layers >= 1");
  if (p.cost_min <= 0 || p.cost_max < p.cost_min || p.data_min < 0 ||
      p.data_max < p.data_min || p.edge_density < 0 || p.edge_density > 1)
    throw std::runtime_error("generate_layered: bad ranges");
  if (p.n_tasks > 1 && p.n_layers < 2)
    throw std::runtime_error("generate_layered: single layer allows only one task");

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> cost_dist(p.cost_min, p.cost_max);
  std::uniform_real_distribution<double> data_dist(p.data_min, p.data_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  // layer sizes: 1 source, remainder spread evenly over layers 1..k-1
  std::vector<int> layer_of(p.n_tasks);
  std::vector<std::vector<int>> layers(p.n_layers);
  layers[0].push_back(0);
  for (int i = 1; i < p.n_tasks; ++i) {
    int layer = p.n_layers == 1 ? 0 : 1 + (i - 1) % (p.n_layers - 1);
    layer_of[i] = layer;
  }
  // keep ids contiguous per layer so edges always point id-forward
  {
    std::vector<int> counts(p.n_layers, 0);
    counts[0] = 1;
    for (int i = 1; i < p.n_tasks; ++i) ++counts[layer_of[i]];
    int next = 0;
    std::vector<int> start(p.n_layers);
    for (int l = 0; l < p.n_layers; ++l) {
      start[l] = next;
      next += counts[l];
    }
    layers.assign(p.n_layers, {});
    for (int l = 0; l < p.n_layers; ++l)
      for (int k = 0; k < counts[l]; ++k) layers[l].push_back(start[l] + k);
    for (int l = 0; l < p.n_layers; ++l)
      for (int id : layers[l]) layer_of[id] = l;
  }

  TaskGraph g;
  for (int i = 0; i < p.n_tasks; ++i)
    g.nodes.push_back(TaskNode{i, cost_dist(rng), std::nullopt, 0.0, 0.0});

  // connectivity: one parent from the previous layer per non-source node
  for (int l = 1; l < p.n_layers; ++l) {
    for (int id : layers[l]) {
      std::uniform_int_distribution<std::size_t> pick(0, layers[l - 1].size() - 1);
      int parent = layers[l - 1][pick(rng)];
      g.edges.push_back(DepEdge{parent, id, data_dist(rng)});
    }
  }
  // extra forward edges
  for (int lu = 0; lu < p.n_layers - 1; ++lu) {
    for (int u : layers[lu]) {
      for (int lv = lu + 1; lv < p.n_layers; ++lv) {
        for (int v : layers[lv]) {
          if (coin(rng) >= p.edge_density) continue;
          bool dup = false;
          for (const auto& e : g.edges)
            if (e.src == u && e.dst == v) dup = true;
          if (!dup) g.edges.push_back(DepEdge{u, v, data_dist(rng)});
        }
      }
    }
  }

  if (p.target_ccr && !g.edges.empty()) {
    double current = ccr(g);
    if (current > 0) {
      double scale = *p.target_ccr / current;
      for (auto& e : g.edges) e.data_size *= scale;
    }
  }
  return g;
}

}  // namespace gridsched
