#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gridsched/platform.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

struct Placement {
  TaskId task = 0;
  int resource = 0;
  double st = 0.0;
  double ft = 0.0;
};

struct Schedule {
  std::map<TaskId, Placement> placements;
  double makespan = 0.0;

  void place(TaskId t, int resource, double st, double ft) {
    placements[t] = Placement{t, resource, st, ft};
    makespan = std::max(makespan, ft);
  }
};

struct TraceEvent {
  double time = 0.0;
  std::string kind;  // "submitted" | "finished"
  TaskId task = 0;
  int resource = 0;
};

inline constexpr double kSchedEps = 1e-9;

// Universal postcondition gate: completeness, precedence with communication
// delays, per-resource exclusivity, makespan recomputation.
inline ValidationReport verify_schedule(const Schedule& s, const TaskGraph& g,
                                        const GridPlatform& platform) {
  ValidationReport rep;
  for (const auto& node : g.nodes) {
    auto it = s.placements.find(node.id);
    if (it == s.placements.end()) {
      rep.violations.push_back("task " + std::to_string(node.id) + " not placed");
      continue;
    }
    const Placement& p = it->second;
    if (p.st < -kSchedEps)
      rep.violations.push_back("task " + std::to_string(node.id) + " starts before 0");
    const double et = exec_time(node, platform.resource(p.resource));
    if (std::abs(p.ft - p.st - et) > kSchedEps)
      rep.violations.push_back("task " + std::to_string(node.id) +
                               ": ft != st + exec_time");
  }
  if (!rep.ok()) return rep;

  for (const auto& e : g.edges) {
    const Placement& pu = s.placements.at(e.src);
    const Placement& pv = s.placements.at(e.dst);
    const double tau = comm_time(e.data_size, platform.resource(pu.resource),
                                 platform.resource(pv.resource), platform);
    if (pv.st + kSchedEps < pu.ft + tau) {
      std::ostringstream os;
      os << "precedence violated on edge (" << e.src << "," << e.dst
         << "): st=" << pv.st << " < ft+tau=" << pu.ft + tau;
      rep.violations.push_back(os.str());
    }
  }

  // exclusivity per resource
  std::map<int, std::vector<Placement>> by_res;
  double max_ft = 0.0;
  for (const auto& [t, p] : s.placements) {
    by_res[p.resource].push_back(p);
    max_ft = std::max(max_ft, p.ft);
  }
  for (auto& [rid, ps] : by_res) {
    std::sort(ps.begin(), ps.end(), [](const Placement& a, const Placement& b) {
      return a.st != b.st ? a.st < b.st : a.ft < b.ft;  // zero-length runs first
    });
    for (std::size_t i = 1; i < ps.size(); ++i)
      if (ps[i].st + kSchedEps < ps[i - 1].ft)
        rep.violations.push_back("overlap on resource " + std::to_string(rid) +
                                 ": tasks " + std::to_string(ps[i - 1].task) + "," +
                                 std::to_string(ps[i].task));
  }
  if (std::abs(s.makespan - max_ft) > kSchedEps)
    rep.violations.push_back("makespan != max ft");
  return rep;
}

struct LoadBalanceReport {
  std::map<int, double> busy_fraction;  // resource id -> busy / makespan
  double imbalance = 0.0;               // max busy - min busy
};

inline LoadBalanceReport load_balance_report(const Schedule& s,
                                             const GridPlatform& platform) {
  LoadBalanceReport rep;
  for (const auto& r : platform.resources) rep.busy_fraction[r.id] = 0.0;
  if (s.makespan <= 0) return rep;
  for (const auto& [t, p] : s.placements)
    rep.busy_fraction[p.resource] += (p.ft - p.st) / s.makespan;
  double lo = 1.0, hi = 0.0;
  for (const auto& [rid, b] : rep.busy_fraction) {
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  rep.imbalance = hi - lo;
  return rep;
}

// One row per resource, time-sorted "task@[st,ft)" segments.
inline std::string gantt_rows(const Schedule& s, const GridPlatform& platform) {
  std::ostringstream os;
  for (const auto& r : platform.resources) {
    std::vector<Placement> ps;
    for (const auto& [t, p] : s.placements)
      if (p.resource == r.id) ps.push_back(p);
    std::sort(ps.begin(), ps.end(),
              [](const Placement& a, const Placement& b) { return a.st < b.st; });
    os << "R" << r.id << ":";
    for (const auto& p : ps)
      os << " " << p.task << "@[" << p.st << "," << p.ft << ")";
    os << "\n";
  }
  return os.str();
}

inline std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const auto& ev : trace)
    os << "(" << ev.time << ", " << ev.kind << ", " << ev.task << ", R" << ev.resource
       << ")\n";
  return os.str();
}

}  // namespace gridsched
