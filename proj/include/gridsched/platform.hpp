#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "gridsched/taskgraph.hpp"

namespace gridsched {

struct Resource {
  int id = 0;
  double mips = 1.0;
  double mem = 0.0;
  double disk = 0.0;
  int cluster = 0;
};

struct NetLink {
  int src_cluster = 0;
  int dst_cluster = 0;
  double bandwidth = 1.0;  // data units / sec
  double latency = 0.0;    // sec
};

struct GridPlatform {
  std::vector<Resource> resources;
  std::vector<NetLink> links;
  NetLink default_link{0, 0, 1.0, 0.0};

  const Resource& resource(int id) const {
    for (const auto& r : resources)
      if (r.id == id) return r;
    throw std::runtime_error("unknown resource id " + std::to_string(id));
  }

  const NetLink& link(int from_cluster, int to_cluster) const {
    for (const auto& l : links)
      if (l.src_cluster == from_cluster && l.dst_cluster == to_cluster) return l;
    // direction-insensitive fallback before the default
    for (const auto& l : links)
      if (l.src_cluster == to_cluster && l.dst_cluster == from_cluster) return l;
    return default_link;
  }

  // Three identical unit resources in one cluster, unit link. Recovers the
  // abstract model where exec time = cost and comm time = data_size.
  static GridPlatform unit(int n_resources = 3) {
    GridPlatform p;
    for (int i = 0; i < n_resources; ++i)
      p.resources.push_back(Resource{i, 1.0, 0.0, 0.0, 0});
    p.default_link = NetLink{0, 0, 1.0, 0.0};
    return p;
  }
};

// Co-located tasks communicate for free.
inline double comm_time(double data_size, const Resource& from, const Resource& to,
                        const GridPlatform& platform) {
  if (from.id == to.id) return 0.0;
  const NetLink& l = platform.link(from.cluster, to.cluster);
  return data_size / l.bandwidth + l.latency;
}

inline double exec_time(const TaskNode& task, const Resource& resource) {
  if (task.work) return *task.work / resource.mips;
  return task.cost;  // abstract mode
}

struct TaskRun {
  int resource = -1;
  double st = 0.0;
  double ft = 0.0;
  bool finished = false;
};

// Simulated monitoring state: per-resource availability plus the placement
// history schedulers query through is_ready / suggestions.
struct MonitorSnapshot {
  std::map<int, double> ready_time;       // resource id -> earliest free instant
  std::map<int, double> committed_mem;
  std::map<int, double> committed_disk;
  std::map<TaskId, TaskRun> placements;   // completed/running tasks
  double staleness = 0.0;                 // reserved; simulation is exact

  double resource_ready(int rid) const {
    auto it = ready_time.find(rid);
    return it == ready_time.end() ? 0.0 : it->second;
  }

  bool finished(TaskId t) const {
    auto it = placements.find(t);
    return it != placements.end() && it->second.finished;
  }
};

inline bool fits(const TaskNode& task, const Resource& resource,
                 const MonitorSnapshot& snapshot) {
  auto cm = snapshot.committed_mem.find(resource.id);
  auto cd = snapshot.committed_disk.find(resource.id);
  const double mem_used = cm == snapshot.committed_mem.end() ? 0.0 : cm->second;
  const double disk_used = cd == snapshot.committed_disk.end() ? 0.0 : cd->second;
  // inclusive boundary: a request equal to the remaining capacity fits
  return task.mem_req <= resource.mem - mem_used + 1e-12 &&
         task.disk_req <= resource.disk - disk_used + 1e-12;
}

// Records a placement; ready_time never decreases.
inline void update_resources(MonitorSnapshot& snapshot, const TaskNode& task,
                             const Resource& resource, double st, double ft) {
  if (ft < st || st < 0)
    throw std::runtime_error("update_resources: bad interval");
  if (snapshot.placements.count(task.id))
    throw std::runtime_error("update_resources: task " + std::to_string(task.id) +
                             " already placed");
  double& rt = snapshot.ready_time[resource.id];
  rt = std::max(rt, ft);
  snapshot.placements[task.id] = TaskRun{resource.id, st, ft, false};
  snapshot.committed_mem[resource.id] += task.mem_req;
  snapshot.committed_disk[resource.id] += task.disk_req;
}

// Completion event: releases commitments, marks the run finished.
inline void complete_task(MonitorSnapshot& snapshot, const TaskNode& task) {
  auto it = snapshot.placements.find(task.id);
  if (it == snapshot.placements.end())
    throw std::runtime_error("complete_task: task not placed");
  it->second.finished = true;
  snapshot.committed_mem[it->second.resource] -= task.mem_req;
  snapshot.committed_disk[it->second.resource] -= task.disk_req;
}

}  // namespace gridsched
