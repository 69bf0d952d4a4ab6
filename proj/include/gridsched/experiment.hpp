#pragma once

#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gridsched/ccf.hpp"
#include "gridsched/ga.hpp"
#include "gridsched/io.hpp"
#include "gridsched/levels.hpp"
#include "gridsched/list_scheduler.hpp"
#include "gridsched/schedule.hpp"

namespace gridsched {

struct ExperimentConfig {
  std::vector<std::string> graphs;
  std::string platform;
  std::vector<std::string> strategies;  // "static" | "ccf-greedy" | "ccf-ga"
  GAConfig ga;
  std::uint64_t seed = 0;
  int repetitions = 1;
  std::string output_dir = ".";
};

inline ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("graph")) cfg.graphs.push_back(j["graph"].get<std::string>());
  if (j.contains("graphs"))
    for (const auto& g : j["graphs"]) cfg.graphs.push_back(g.get<std::string>());
  cfg.platform = j.value("platform", "");
  if (j.contains("strategy")) cfg.strategies.push_back(j["strategy"].get<std::string>());
  if (j.contains("strategies"))
    for (const auto& s : j["strategies"]) cfg.strategies.push_back(s.get<std::string>());
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.repetitions = j.value("repetitions", 1);
  cfg.output_dir = j.value("output_dir", ".");
  if (j.contains("ga")) {
    const auto& g = j["ga"];
    cfg.ga.population_size = g.value("population_size", cfg.ga.population_size);
    cfg.ga.generations = g.value("generations", cfg.ga.generations);
    cfg.ga.islands = g.value("islands", cfg.ga.islands);
    cfg.ga.migration_interval = g.value("migration_interval", cfg.ga.migration_interval);
    cfg.ga.migrants = g.value("migrants", cfg.ga.migrants);
    cfg.ga.crossover_rate = g.value("crossover_rate", cfg.ga.crossover_rate);
    cfg.ga.mutation_rate = g.value("mutation_rate", cfg.ga.mutation_rate);
    cfg.ga.tournament_size = g.value("tournament_size", cfg.ga.tournament_size);
    cfg.ga.batch_length = g.value("batch_length", cfg.ga.batch_length);
    cfg.ga.batch_wait = g.value("batch_wait", cfg.ga.batch_wait);
    cfg.ga.seed = g.value("seed", cfg.ga.seed);
    cfg.ga.genes_from_candidates =
        g.value("genes_from_candidates", cfg.ga.genes_from_candidates);
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return config_from_json(j);
}

// Runs one strategy on a normalized graph.
inline Schedule run_strategy(const std::string& strategy, const TaskGraph& g,
                             const GridPlatform& platform, const LevelTable& levels,
                             const GAConfig& ga_cfg, std::uint64_t seed,
                             const std::string& history_path = "") {
  if (strategy == "static") return static_list_schedule(g, platform, levels);
  if (strategy == "ccf-greedy") {
    GreedyAssigner assigner;
    return run_ccf(g, platform, levels, assigner).schedule;
  }
  if (strategy == "ccf-ga") {
    GAConfig cfg = ga_cfg;
    cfg.seed = seed ? seed : cfg.seed;
    GaAssigner assigner(cfg, history_path);
    return run_ccf(g, platform, levels, assigner).schedule;
  }
  throw std::runtime_error("unknown strategy: " + strategy);
}

// ---- Table-1-shaped analysis ----

struct AnalyzeReport {
  LevelTable levels;
  double cp_length = 0.0;
  std::vector<TaskId> cp_tasks;
  double graph_ccr = 0.0;
};

inline AnalyzeReport analyze_graph(const TaskGraph& g) {
  AnalyzeReport rep;
  rep.levels = compute_levels(g);
  auto [len, tasks] = critical_path(rep.levels);
  rep.cp_length = len;
  rep.cp_tasks = tasks;
  rep.graph_ccr = g.edges.empty() ? 0.0 : ccr(g);
  return rep;
}

inline std::string format_analyze(const AnalyzeReport& rep) {
  std::ostringstream os;
  os << "node\ttlevel\tblevel\talap\tpriority\n";
  for (std::size_t u = 0; u < rep.levels.size(); ++u) {
    const auto& e = rep.levels.entries[u];
    os << u << "\t" << e.tlevel << "\t" << e.blevel << "\t" << e.alap << "\t"
       << e.priority << "\n";
  }
  os << "critical_path_length\t" << rep.cp_length << "\n";
  os << "critical_path_tasks\t";
  for (std::size_t i = 0; i < rep.cp_tasks.size(); ++i)
    os << (i ? "," : "") << rep.cp_tasks[i];
  os << "\nccr\t" << rep.graph_ccr << "\n";
  return os.str();
}

// ---- strategy comparison (Figures 5/6 analogue, as data) ----

struct CompareRow {
  std::string graph;
  std::string strategy;
  std::uint64_t seed = 0;
  double makespan = 0.0;
  double improvement_pct = 0.0;  // vs the static baseline on the same graph
  double imbalance = 0.0;
  double graph_ccr = 0.0;
};

struct ComparisonReport {
  std::vector<CompareRow> rows;

  double mean_makespan(const std::string& strategy) const {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows)
      if (r.strategy == strategy) {
        sum += r.makespan;
        ++n;
      }
    return n ? sum / n : 0.0;
  }

  double mean_improvement(const std::string& strategy, double min_ccr = -1.0) const {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows)
      if (r.strategy == strategy && r.graph_ccr >= min_ccr) {
        sum += r.improvement_pct;
        ++n;
      }
    return n ? sum / n : 0.0;
  }
};

inline ComparisonReport compare_strategies(const std::vector<std::string>& graph_names,
                                           const std::vector<TaskGraph>& graphs,
                                           const GridPlatform& platform,
                                           const std::vector<std::string>& strategies,
                                           const GAConfig& ga_cfg, std::uint64_t seed) {
  ComparisonReport rep;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    TaskGraph g = normalize(graphs[gi]);
    LevelTable levels = compute_levels(g);
    double gccr = g.edges.empty() ? 0.0 : ccr(g);
    double static_mk = 0.0;
    for (const auto& strat : strategies) {
      Schedule s = run_strategy(strat, g, platform, levels, ga_cfg, seed);
      auto verify = verify_schedule(s, g, platform);
      if (!verify.ok())
        throw std::runtime_error("invalid schedule from " + strat + " on " +
                                 graph_names[gi] + ": " + verify.violations.front());
      if (strat == "static") static_mk = s.makespan;
      CompareRow row;
      row.graph = graph_names[gi];
      row.strategy = strat;
      row.seed = seed;
      row.makespan = s.makespan;
      row.imbalance = load_balance_report(s, platform).imbalance;
      row.graph_ccr = gccr;
      rep.rows.push_back(row);
    }
    if (static_mk > 0)
      for (auto& row : rep.rows)
        if (row.graph == graph_names[gi])
          row.improvement_pct = (static_mk - row.makespan) / static_mk * 100.0;
  }
  return rep;
}

inline std::string comparison_csv(const ComparisonReport& rep) {
  std::ostringstream os;
  os << "graph,strategy,seed,makespan,improvement_pct,imbalance\n";
  for (const auto& r : rep.rows)
    os << r.graph << "," << r.strategy << "," << r.seed << "," << r.makespan << ","
       << r.improvement_pct << "," << r.imbalance << "\n";
  return os.str();
}

}  // namespace gridsched
