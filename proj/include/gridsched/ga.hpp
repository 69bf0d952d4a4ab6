#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsched/assigner.hpp"
#include "gridsched/levels.hpp"
#include "gridsched/platform.hpp"

namespace gridsched {

inline constexpr TaskId kPadSlot = -1;

// Fixed-length batch of ready tasks; short batches are padded with neutral
// slots, long ones spill into the overflow queue.
struct Batch {
  std::vector<TaskId> slots;     // TaskId or kPadSlot
  std::vector<TaskId> overflow;

  bool empty() const {
    return std::all_of(slots.begin(), slots.end(),
                       [](TaskId t) { return t == kPadSlot; });
  }
  int real_count() const {
    int c = 0;
    for (TaskId t : slots)
      if (t != kPadSlot) ++c;
    return c;
  }
};

// One resource id per slot; genes at PAD slots are ignored by fitness.
struct Chromosome {
  std::vector<int> genes;

  bool operator==(const Chromosome& o) const { return genes == o.genes; }
  bool operator<(const Chromosome& o) const { return genes < o.genes; }
};

struct GAConfig {
  int population_size = 32;
  int generations = 100;
  int islands = 3;
  int migration_interval = 1;
  int migrants = 1;               // best individuals exchanged
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;    // <0 means 1/L
  int tournament_size = 3;
  int batch_length = 4;           // L
  double batch_wait = 0.0;        // T; simulated time does not advance
  std::uint64_t seed = 0;
  bool genes_from_candidates = false;  // restrict gene domain (ablation)

  double effective_mutation_rate() const {
    return mutation_rate >= 0 ? mutation_rate
                              : 1.0 / static_cast<double>(batch_length);
  }
};

struct IslandState {
  int id = 0;
  std::vector<Chromosome> population;
  std::vector<double> scores;
  Chromosome best;
  double best_fitness = 0.0;
  std::mt19937_64 rng;
};

inline std::uint64_t island_seed(std::uint64_t seed, int island) {
  // splitmix64 over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (island + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Fill L slots by priority (descending, ties by id); the rest wait.
inline Batch build_batch(std::vector<TaskId> ready, const LevelTable& levels,
                         const GAConfig& cfg) {
  std::sort(ready.begin(), ready.end(), [&](TaskId a, TaskId b) {
    if (levels[a].priority != levels[b].priority)
      return levels[a].priority > levels[b].priority;
    return a < b;
  });
  Batch batch;
  const int L = cfg.batch_length;
  for (int i = 0; i < L; ++i)
    batch.slots.push_back(i < static_cast<int>(ready.size()) ? ready[i] : kPadSlot);
  for (std::size_t i = L; i < ready.size(); ++i) batch.overflow.push_back(ready[i]);
  return batch;
}

// Simulated completion time of the batch under the chromosome's assignment.
// Tasks mapped to one resource serialize in slot order; infeasible
// placements take a large finite penalty. Lower is better.
inline double ga_fitness(const Chromosome& chrom, const Batch& batch,
                         const TaskGraph& g, const GridPlatform& platform,
                         const MonitorSnapshot& snapshot) {
  std::map<int, double> avail;
  double penalty_unit = 0.0;
  {
    double bound = 0.0;
    for (const auto& [rid, t] : snapshot.ready_time) bound = std::max(bound, t);
    for (TaskId t : batch.slots)
      if (t != kPadSlot)
        bound += exec_time(g.nodes[t], platform.resources.front()) + 1.0;
    penalty_unit = 10.0 * (bound + 1.0);
  }
  double fit = 0.0;
  for (std::size_t i = 0; i < batch.slots.size(); ++i) {
    TaskId t = batch.slots[i];
    if (t == kPadSlot) continue;
    int rid = chrom.genes[i];
    const Resource& r = platform.resource(rid);
    double ready = snapshot.resource_ready(rid);
    if (auto it = avail.find(rid); it != avail.end()) ready = std::max(ready, it->second);
    double st = std::max(ready, data_arrival(g, platform, snapshot, t, rid));
    double ft = st + exec_time(g.nodes[t], r);
    avail[rid] = ft;
    fit = std::max(fit, ft);
    if (!fits(g.nodes[t], r, snapshot)) fit += penalty_unit;
  }
  return fit;
}

namespace detail {

inline void score_population(IslandState& island, const Batch& batch,
                             const TaskGraph& g, const GridPlatform& platform,
                             const MonitorSnapshot& snapshot) {
  island.scores.resize(island.population.size());
  for (std::size_t i = 0; i < island.population.size(); ++i)
    island.scores[i] = ga_fitness(island.population[i], batch, g, platform, snapshot);
  std::size_t best = 0;
  for (std::size_t i = 1; i < island.population.size(); ++i)
    if (island.scores[i] < island.scores[best] ||
        (island.scores[i] == island.scores[best] &&
         island.population[i] < island.population[best]))
      best = i;
  if (island.best.genes.empty() || island.scores[best] < island.best_fitness ||
      (island.scores[best] == island.best_fitness &&
       island.population[best] < island.best)) {
    island.best = island.population[best];
    island.best_fitness = island.scores[best];
  }
}

inline const Chromosome& tournament(const IslandState& island, std::mt19937_64& rng,
                                    int size) {
  std::uniform_int_distribution<std::size_t> pick(0, island.population.size() - 1);
  std::size_t best = pick(rng);
  for (int i = 1; i < size; ++i) {
    std::size_t c = pick(rng);
    if (island.scores[c] < island.scores[best]) best = c;
  }
  return island.population[best];
}

}  // namespace detail

// One generation: tournament selection, single-point crossover, per-gene
// uniform-reset mutation, elitism of 1.
inline void evolve_generation(IslandState& island, const Batch& batch,
                              const TaskGraph& g, const GridPlatform& platform,
                              const MonitorSnapshot& snapshot,
                              const std::vector<int>& gene_domain, const GAConfig& cfg) {
  if (island.scores.empty())
    detail::score_population(island, batch, g, platform, snapshot);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> cut(1, island.population.front().genes.size() - 1);
  std::uniform_int_distribution<std::size_t> gene_pick(0, gene_domain.size() - 1);
  const double mut = cfg.effective_mutation_rate();

  std::vector<Chromosome> next;
  next.reserve(island.population.size());
  next.push_back(island.best);  // elite

  while (next.size() < island.population.size()) {
    Chromosome a = detail::tournament(island, island.rng, cfg.tournament_size);
    Chromosome b = detail::tournament(island, island.rng, cfg.tournament_size);
    if (island.population.front().genes.size() > 1 && coin(island.rng) < cfg.crossover_rate) {
      std::size_t point = cut(island.rng);
      for (std::size_t i = point; i < a.genes.size(); ++i) std::swap(a.genes[i], b.genes[i]);
    }
    for (Chromosome* child : {&a, &b}) {
      for (auto& gene : child->genes)
        if (coin(island.rng) < mut) gene = gene_domain[gene_pick(island.rng)];
      if (next.size() < island.population.size()) next.push_back(*child);
    }
  }
  island.population = std::move(next);
  detail::score_population(island, batch, g, platform, snapshot);
}

// Broadcast every island's best into every other island, overwriting the
// worst members. Population sizes are preserved.
inline void migrate(std::vector<IslandState>& islands) {
  if (islands.size() < 2) return;
  std::vector<std::pair<double, Chromosome>> bests;
  for (const auto& isl : islands) bests.push_back({isl.best_fitness, isl.best});
  for (std::size_t i = 0; i < islands.size(); ++i) {
    auto& isl = islands[i];
    for (std::size_t j = 0; j < islands.size(); ++j) {
      if (j == i) continue;
      // replace current worst
      std::size_t worst = 0;
      for (std::size_t k = 1; k < isl.population.size(); ++k)
        if (isl.scores[k] > isl.scores[worst]) worst = k;
      isl.population[worst] = bests[j].second;
      isl.scores[worst] = bests[j].first;
      if (bests[j].first < isl.best_fitness ||
          (bests[j].first == isl.best_fitness && bests[j].second < isl.best)) {
        isl.best = bests[j].second;
        isl.best_fitness = bests[j].first;
      }
    }
  }
}

struct GAResult {
  Chromosome best;
  double fitness = 0.0;
};

// Greedy earliest-finish seed for island 0.
inline Chromosome greedy_seed(const Batch& batch, const TaskGraph& g,
                              const GridPlatform& platform,
                              const MonitorSnapshot& snapshot,
                              const std::vector<int>& gene_domain) {
  Chromosome c;
  std::map<int, double> avail;
  for (TaskId t : batch.slots) {
    if (t == kPadSlot) {
      c.genes.push_back(gene_domain.front());
      continue;
    }
    int best = gene_domain.front();
    double best_ft = 1e300;
    for (int rid : gene_domain) {
      double ready = std::max(snapshot.resource_ready(rid),
                              avail.count(rid) ? avail[rid] : 0.0);
      double ft = std::max(ready, data_arrival(g, platform, snapshot, t, rid)) +
                  exec_time(g.nodes[t], platform.resource(rid));
      if (ft < best_ft - 1e-12) {
        best = rid;
        best_ft = ft;
      }
    }
    avail[best] = best_ft;
    c.genes.push_back(best);
  }
  return c;
}

// Island-model GA with deterministic consensus: islands evolve on private
// RNG streams between migration barriers, so the result does not depend on
// the order the islands are stepped in. `island_order` exists to let tests
// exercise exactly that.
inline GAResult run_distributed_ga(const Batch& batch, const TaskGraph& g,
                                   const GridPlatform& platform,
                                   const MonitorSnapshot& snapshot,
                                   const std::vector<int>& candidate_pool,
                                   const GAConfig& cfg,
                                   const std::vector<int>* island_order = nullptr) {
  if (batch.empty()) throw std::runtime_error("run_distributed_ga: empty batch");

  std::vector<int> gene_domain;
  if (cfg.genes_from_candidates && !candidate_pool.empty()) {
    gene_domain = candidate_pool;
  } else {
    for (const auto& r : platform.resources) gene_domain.push_back(r.id);
  }
  std::sort(gene_domain.begin(), gene_domain.end());
  const std::size_t L = batch.slots.size();

  std::vector<IslandState> islands(cfg.islands);
  for (int i = 0; i < cfg.islands; ++i) {
    auto& isl = islands[i];
    isl.id = i;
    isl.rng.seed(island_seed(cfg.seed, i));
    std::uniform_int_distribution<std::size_t> gene_pick(0, gene_domain.size() - 1);
    for (int p = 0; p < cfg.population_size; ++p) {
      Chromosome c;
      for (std::size_t k = 0; k < L; ++k) c.genes.push_back(gene_domain[gene_pick(isl.rng)]);
      isl.population.push_back(std::move(c));
    }
    if (i == 0)
      isl.population.front() = greedy_seed(batch, g, platform, snapshot, gene_domain);
    detail::score_population(isl, batch, g, platform, snapshot);
  }

  std::vector<int> order(cfg.islands);
  std::iota(order.begin(), order.end(), 0);
  if (island_order) order = *island_order;

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    for (int idx : order)
      evolve_generation(islands[idx], batch, g, platform, snapshot, gene_domain, cfg);
    if (gen % cfg.migration_interval == 0) migrate(islands);
  }

  GAResult res;
  res.best = islands.front().best;
  res.fitness = islands.front().best_fitness;
  for (const auto& isl : islands) {
    if (isl.best_fitness < res.fitness ||
        (isl.best_fitness == res.fitness && isl.best < res.best)) {
      res.best = isl.best;
      res.fitness = isl.best_fitness;
    }
  }
  return res;
}

// One self-contained record per GA run, appended as a single line.
inline void append_history(const std::string& path, double timestamp,
                           const Batch& batch, const GAResult& result) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("append_history: cannot open " + path);
  out << "{\"timestamp\":" << timestamp << ",\"batch\":[";
  bool first = true;
  for (TaskId t : batch.slots) {
    if (!first) out << ",";
    out << t;
    first = false;
  }
  out << "],\"genes\":[";
  first = true;
  for (int gene : result.best.genes) {
    if (!first) out << ",";
    out << gene;
    first = false;
  }
  out << "],\"fitness\":" << result.fitness << "}\n";
  if (!out) throw std::runtime_error("append_history: write failed on " + path);
}

// assignResource strategy backed by the distributed GA. Ready tasks are
// batched; overflow rounds see the provisional placements of earlier rounds
// through a scratch snapshot.
class GaAssigner : public Assigner {
 public:
  explicit GaAssigner(GAConfig cfg, std::string history_path = "")
      : cfg_(cfg), history_path_(std::move(history_path)) {}

  std::string name() const override { return "ga"; }

  std::map<TaskId, int> assign(const AssignerContext& ctx) override {
    std::map<TaskId, int> out;
    MonitorSnapshot scratch = ctx.snapshot;
    std::vector<TaskId> pending = ctx.ready;
    GAConfig cfg = cfg_;
    while (!pending.empty()) {
      Batch batch = build_batch(pending, ctx.levels, cfg);
      pending = batch.overflow;
      if (batch.empty()) break;

      std::vector<int> pool;
      for (TaskId t : batch.slots)
        if (t != kPadSlot)
          if (auto it = ctx.candidates.find(t); it != ctx.candidates.end())
            pool.insert(pool.end(), it->second.begin(), it->second.end());
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

      GAResult res = run_distributed_ga(batch, ctx.graph, ctx.platform, scratch, pool, cfg);
      if (!history_path_.empty()) {
        double max_ready = 0.0;
        for (const auto& [rid, t] : ctx.snapshot.ready_time)
          max_ready = std::max(max_ready, t);
        append_history(history_path_, max_ready, batch, res);
      }
      for (std::size_t i = 0; i < batch.slots.size(); ++i) {
        TaskId t = batch.slots[i];
        if (t == kPadSlot) continue;
        int rid = res.best.genes[i];
        out[t] = rid;
        double st = predicted_start(ctx.graph, ctx.platform, scratch, t, rid);
        double ft = st + exec_time(ctx.graph.nodes[t], ctx.platform.resource(rid));
        update_resources(scratch, ctx.graph.nodes[t], ctx.platform.resource(rid), st, ft);
      }
      cfg.seed = island_seed(cfg.seed, 17);  // fresh stream per overflow round
    }
    return out;
  }

 private:
  GAConfig cfg_;
  std::string history_path_;
};

}  // namespace gridsched
