#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridsched {

using TaskId = int;

struct TaskNode {
  TaskId id = 0;
  double cost = 0.0;                 // abstract execution time
  std::optional<double> work;        // million instructions, for MIPS-scaled mode
  double mem_req = 0.0;
  double disk_req = 0.0;
};

struct DepEdge {
  TaskId src = 0;
  TaskId dst = 0;
  double data_size = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Weighted task DAG. Node ids are expected to be dense 0..n-1 after
// load/normalization; adjacency is rebuilt lazily by callers via helpers.
struct TaskGraph {
  std::vector<TaskNode> nodes;
  std::vector<DepEdge> edges;

  std::size_t size() const { return nodes.size(); }

  std::vector<std::vector<int>> successors() const {
    std::vector<std::vector<int>> succ(nodes.size());
    for (const auto& e : edges) succ[e.src].push_back(e.dst);
    for (auto& s : succ) std::sort(s.begin(), s.end());
    return succ;
  }

  std::vector<std::vector<int>> predecessors() const {
    std::vector<std::vector<int>> pred(nodes.size());
    for (const auto& e : edges) pred[e.dst].push_back(e.src);
    for (auto& p : pred) std::sort(p.begin(), p.end());
    return pred;
  }

  std::vector<int> in_degree() const {
    std::vector<int> deg(nodes.size(), 0);
    for (const auto& e : edges) ++deg[e.dst];
    return deg;
  }

  std::vector<int> out_degree() const {
    std::vector<int> deg(nodes.size(), 0);
    for (const auto& e : edges) ++deg[e.src];
    return deg;
  }

  std::vector<TaskId> source_nodes() const {
    std::vector<TaskId> out;
    auto deg = in_degree();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (deg[i] == 0) out.push_back(static_cast<TaskId>(i));
    return out;
  }

  std::vector<TaskId> exit_nodes() const {
    std::vector<TaskId> out;
    auto deg = out_degree();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (deg[i] == 0) out.push_back(static_cast<TaskId>(i));
    return out;
  }

  // data_size of edge (u,v); 0 if absent.
  double edge_data(TaskId u, TaskId v) const {
    for (const auto& e : edges)
      if (e.src == u && e.dst == v) return e.data_size;
    return 0.0;
  }
};

inline ValidationReport validate(const TaskGraph& g) {
  ValidationReport rep;
  const int n = static_cast<int>(g.nodes.size());
  if (n == 0) {
    rep.violations.push_back("empty graph");
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (g.nodes[i].id != i)
      rep.violations.push_back("node ids not dense: slot " + std::to_string(i) +
                               " holds id " + std::to_string(g.nodes[i].id));
    if (g.nodes[i].cost < 0)
      rep.violations.push_back("negative cost at node " + std::to_string(i));
    if (g.nodes[i].work && *g.nodes[i].work < 0)
      rep.violations.push_back("negative work at node " + std::to_string(i));
    if (g.nodes[i].mem_req < 0 || g.nodes[i].disk_req < 0)
      rep.violations.push_back("negative requirement at node " + std::to_string(i));
  }
  std::set<std::pair<TaskId, TaskId>> seen;
  for (const auto& e : g.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      rep.violations.push_back("dangling edge (" + std::to_string(e.src) + "," +
                               std::to_string(e.dst) + ")");
      continue;
    }
    if (e.src == e.dst)
      rep.violations.push_back("self-loop at node " + std::to_string(e.src));
    if (e.data_size < 0)
      rep.violations.push_back("negative data_size on edge (" + std::to_string(e.src) +
                               "," + std::to_string(e.dst) + ")");
    if (!seen.insert({e.src, e.dst}).second)
      rep.violations.push_back("duplicate edge (" + std::to_string(e.src) + "," +
                               std::to_string(e.dst) + ")");
  }
  if (!rep.ok()) return rep;  // cycle check needs well-formed edges

  // Kahn's algorithm; leftover nodes mean a cycle.
  auto deg = g.in_degree();
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 0) stack.push_back(i);
  if (stack.empty()) {
    rep.violations.push_back("cycle: no source node");
    return rep;
  }
  auto succ = g.successors();
  int visited = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++visited;
    for (int v : succ[u])
      if (--deg[v] == 0) stack.push_back(v);
  }
  if (visited != n) rep.violations.push_back("cycle");
  if (g.exit_nodes().empty()) rep.violations.push_back("no exit node");
  return rep;
}

// Deterministic topological order, ties broken by ascending id.
// Throws on cycles.
inline std::vector<TaskId> topological_order(const TaskGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  auto deg = g.in_degree();
  auto succ = g.successors();
  std::set<TaskId> ready;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 0) ready.insert(i);
  std::vector<TaskId> order;
  order.reserve(n);
  while (!ready.empty()) {
    TaskId u = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(u);
    for (int v : succ[u])
      if (--deg[v] == 0) ready.insert(v);
  }
  if (static_cast<int>(order.size()) != n)
    throw std::runtime_error("topological_order: graph has a cycle");
  return order;
}

// Linear-time topological order for large graphs (FIFO, still deterministic
// because ready nodes are processed in discovery order from ascending ids).
inline std::vector<TaskId> topological_order_fast(const TaskGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges) ++deg[e.dst];
  // CSR successor layout; avoids per-node vectors on million-node graphs.
  std::vector<int> off(n + 1, 0), adj(g.edges.size());
  for (const auto& e : g.edges) ++off[e.src + 1];
  for (int i = 0; i < n; ++i) off[i + 1] += off[i];
  {
    std::vector<int> cur(off.begin(), off.end() - 1);
    for (const auto& e : g.edges) adj[cur[e.src]++] = e.dst;
  }
  std::vector<TaskId> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i)
    if (deg[i] == 0) order.push_back(i);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int u = order[head];
    for (int k = off[u]; k < off[u + 1]; ++k)
      if (--deg[adj[k]] == 0) order.push_back(adj[k]);
  }
  if (static_cast<int>(order.size()) != n)
    throw std::runtime_error("topological_order: graph has a cycle");
  return order;
}

// Ensures a single source: if several exist, prepends a virtual zero-cost
// source with zero-data edges to each of them. Ids are re-densified
// (virtual source becomes id 0, former ids shift by one).
inline TaskGraph normalize(const TaskGraph& g) {
  auto rep = validate(g);
  if (!rep.ok())
    throw std::runtime_error("normalize: invalid graph: " + rep.violations.front());
  auto sources = g.source_nodes();
  if (sources.size() == 1) return g;
  TaskGraph out;
  out.nodes.reserve(g.nodes.size() + 1);
  out.nodes.push_back(TaskNode{0, 0.0, std::nullopt, 0.0, 0.0});
  for (const auto& node : g.nodes) {
    TaskNode shifted = node;
    shifted.id = node.id + 1;
    out.nodes.push_back(shifted);
  }
  for (TaskId s : sources) out.edges.push_back(DepEdge{0, s + 1, 0.0});
  for (const auto& e : g.edges)
    out.edges.push_back(DepEdge{e.src + 1, e.dst + 1, e.data_size});
  return out;
}

}  // namespace gridsched
