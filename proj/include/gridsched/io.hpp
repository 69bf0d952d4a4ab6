#pragma once

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gridsched/platform.hpp"
#include "gridsched/schedule.hpp"
#include "gridsched/taskgraph.hpp"

namespace gridsched {

using nlohmann::json;

// ---- canonical graph format (JSON) ----

inline json graph_to_json(const TaskGraph& g) {
  json j;
  j["nodes"] = json::array();
  for (const auto& node : g.nodes) {
    json n{{"id", node.id}, {"cost", node.cost}};
    if (node.work) n["work"] = *node.work;
    if (node.mem_req != 0) n["mem_req"] = node.mem_req;
    if (node.disk_req != 0) n["disk_req"] = node.disk_req;
    j["nodes"].push_back(n);
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"data_size", e.data_size}});
  return j;
}

inline TaskGraph graph_from_json(const json& j) {
  TaskGraph g;
  for (const auto& n : j.at("nodes")) {
    TaskNode node;
    node.id = n.at("id").get<int>();
    node.cost = n.at("cost").get<double>();
    if (n.contains("work")) node.work = n["work"].get<double>();
    node.mem_req = n.value("mem_req", 0.0);
    node.disk_req = n.value("disk_req", 0.0);
    g.nodes.push_back(node);
  }
  for (const auto& e : j.at("edges"))
    g.edges.push_back(DepEdge{e.at("src").get<int>(), e.at("dst").get<int>(),
                              e.at("data_size").get<double>()});
  return g;
}

inline void save_graph(const TaskGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << graph_to_json(g).dump(2) << "\n";
}

inline TaskGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return graph_from_json(j);
}

// ---- best-effort XML task-description import ----
//
// Accepts the legacy form:
//   <tasks>
//     <task id="0" cost="3" mem="1" disk="0" work="10"/>
//     <dependency src="0" dst="1" data_size="4"/>
//   </tasks>
// Attribute order is free; unknown attributes are ignored.
inline TaskGraph import_xml(const std::string& text) {
  TaskGraph g;
  auto attr = [](const std::string& tag, const std::string& name) -> std::string {
    std::regex re(name + R"(\s*=\s*\"([^\"]*)\")");
    std::smatch m;
    if (std::regex_search(tag, m, re)) return m[1];
    return "";
  };
  std::regex tag_re(R"(<(task|dependency)\b[^>]*/?>)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tag_re);
       it != std::sregex_iterator(); ++it) {
    const std::string tag = it->str();
    if ((*it)[1] == "task") {
      TaskNode n;
      const std::string id = attr(tag, "id");
      if (id.empty()) throw std::runtime_error("import_xml: task without id");
      n.id = std::stoi(id);
      if (auto v = attr(tag, "cost"); !v.empty()) n.cost = std::stod(v);
      if (auto v = attr(tag, "work"); !v.empty()) n.work = std::stod(v);
      if (auto v = attr(tag, "mem"); !v.empty()) n.mem_req = std::stod(v);
      if (auto v = attr(tag, "disk"); !v.empty()) n.disk_req = std::stod(v);
      g.nodes.push_back(n);
    } else {
      DepEdge e;
      e.src = std::stoi(attr(tag, "src"));
      e.dst = std::stoi(attr(tag, "dst"));
      if (auto v = attr(tag, "data_size"); !v.empty()) e.data_size = std::stod(v);
      g.edges.push_back(e);
    }
  }
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](const TaskNode& a, const TaskNode& b) { return a.id < b.id; });
  return g;
}

inline TaskGraph import_xml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_xml(ss.str());
}

// ---- DOT export for visualization tooling ----

inline std::string export_dot(const TaskGraph& g) {
  std::ostringstream os;
  os << "digraph taskgraph {\n";
  for (const auto& node : g.nodes)
    os << "  n" << node.id << " [label=\"" << node.id << "/" << node.cost << "\"];\n";
  for (const auto& e : g.edges)
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << e.data_size << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---- platform format ----

inline json platform_to_json(const GridPlatform& p) {
  json j;
  j["resources"] = json::array();
  for (const auto& r : p.resources)
    j["resources"].push_back({{"id", r.id},
                              {"mips", r.mips},
                              {"mem", r.mem},
                              {"disk", r.disk},
                              {"cluster", r.cluster}});
  j["links"] = json::array();
  for (const auto& l : p.links)
    j["links"].push_back({{"src_cluster", l.src_cluster},
                          {"dst_cluster", l.dst_cluster},
                          {"bandwidth", l.bandwidth},
                          {"latency", l.latency}});
  j["default_link"] = {{"bandwidth", p.default_link.bandwidth},
                       {"latency", p.default_link.latency}};
  return j;
}

inline GridPlatform platform_from_json(const json& j) {
  GridPlatform p;
  for (const auto& r : j.at("resources"))
    p.resources.push_back(Resource{r.at("id").get<int>(), r.at("mips").get<double>(),
                                   r.value("mem", 0.0), r.value("disk", 0.0),
                                   r.value("cluster", 0)});
  if (j.contains("links"))
    for (const auto& l : j["links"])
      p.links.push_back(NetLink{l.at("src_cluster").get<int>(),
                                l.at("dst_cluster").get<int>(),
                                l.at("bandwidth").get<double>(), l.value("latency", 0.0)});
  if (j.contains("default_link")) {
    p.default_link.bandwidth = j["default_link"].value("bandwidth", 1.0);
    p.default_link.latency = j["default_link"].value("latency", 0.0);
  }
  return p;
}

inline void save_platform(const GridPlatform& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << platform_to_json(p).dump(2) << "\n";
}

inline GridPlatform load_platform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return platform_from_json(j);
}

// ---- schedule format ----

inline json schedule_to_json(const Schedule& s) {
  json j;
  j["placements"] = json::array();
  for (const auto& [t, p] : s.placements)
    j["placements"].push_back(
        {{"task", p.task}, {"resource", p.resource}, {"st", p.st}, {"ft", p.ft}});
  j["makespan"] = s.makespan;
  return j;
}

inline Schedule schedule_from_json(const json& j) {
  Schedule s;
  for (const auto& p : j.at("placements"))
    s.placements[p.at("task").get<int>()] =
        Placement{p.at("task").get<int>(), p.at("resource").get<int>(),
                  p.at("st").get<double>(), p.at("ft").get<double>()};
  s.makespan = j.at("makespan").get<double>();
  return s;
}

inline void save_schedule(const Schedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << schedule_to_json(s).dump(2) << "\n";
}

inline Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return schedule_from_json(j);
}

}  // namespace gridsched
