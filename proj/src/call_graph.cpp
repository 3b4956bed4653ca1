#include "semfl/call_graph.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "semfl/errors.hpp"
#include "semfl/util.hpp"

namespace semfl {

using nlohmann::json;

CallGraph::CallGraph(std::vector<std::string> node_ids,
                     std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges,
                     std::uint64_t skipped_events)
    : node_ids_(std::move(node_ids)), edges_(std::move(edges)), skipped_events_(skipped_events) {
  for (std::uint32_t i = 0; i < node_ids_.size(); ++i) index_[node_ids_[i]] = i;
}

std::uint64_t CallGraph::edge_weight(const std::string& caller, const std::string& callee) const {
  if (!has_node(caller) || !has_node(callee)) return 0;
  auto it = edges_.find({index_of(caller), index_of(callee)});
  return it == edges_.end() ? 0 : it->second;
}

std::uint64_t CallGraph::total_events() const {
  std::uint64_t total = 0;
  for (const auto& [edge, w] : edges_) total += w;
  return total;
}

bool CallGraph::has_node(const std::string& id) const { return index_.count(id) != 0; }

std::uint32_t CallGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw integrity_error("node not in call graph: " + id);
  return it->second;
}

std::string CallGraph::to_json() const {
  json edges = json::array();
  for (const auto& [edge, w] : edges_) {
    edges.push_back({{"caller", node_ids_[edge.first]},
                     {"callee", node_ids_[edge.second]},
                     {"weight", w}});
  }
  json doc = {{"nodes", node_ids_}, {"edges", edges}, {"skipped_events", skipped_events_}};
  return doc.dump(2) + "\n";
}

CallGraph CallGraph::from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("graph document is not valid JSON: ") + e.what());
  }
  std::vector<std::string> nodes;
  try {
    nodes = doc.at("nodes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("graph document: bad nodes array: ") + e.what());
  }
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges;
  for (const json& e : doc.at("edges")) {
    const std::string caller = e.at("caller").get<std::string>();
    const std::string callee = e.at("callee").get<std::string>();
    auto ci = index.find(caller);
    auto ce = index.find(callee);
    if (ci == index.end() || ce == index.end())
      throw integrity_error("graph document: edge endpoint not in nodes: " + caller + " -> " + callee);
    std::uint64_t w = e.at("weight").get<std::uint64_t>();
    if (w == 0) throw integrity_error("graph document: zero-weight edge: " + caller + " -> " + callee);
    edges[{ci->second, ce->second}] += w;
  }
  std::uint64_t skipped = doc.value("skipped_events", std::uint64_t{0});
  return CallGraph(std::move(nodes), std::move(edges), skipped);
}

std::vector<CallEvent> parse_call_events(const std::string& jsonl_text) {
  std::vector<CallEvent> events;
  const std::vector<std::string> lines = split_lines(jsonl_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw parse_error("calls line " + std::to_string(i + 1) + " is not valid JSON: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("caller") || !rec.contains("callee"))
      throw parse_error("calls line " + std::to_string(i + 1) + " must contain caller and callee");
    CallEvent ev;
    try {
      ev.caller = rec.at("caller").get<std::string>();
      ev.callee = rec.at("callee").get<std::string>();
      if (rec.contains("count")) ev.count = rec.at("count").get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw parse_error("calls line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (ev.count == 0) throw parse_error("calls line " + std::to_string(i + 1) + " has count 0");
    events.push_back(std::move(ev));
  }
  return events;
}

CallGraph build_call_graph(const std::vector<CallEvent>& events, const MethodTable& methods,
                           bool strict) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
  std::uint64_t skipped = 0;
  for (const CallEvent& ev : events) {
    if (!methods.contains(ev.caller) || !methods.contains(ev.callee)) {
      if (strict)
        throw integrity_error("invocation references unknown method id: " +
                              (methods.contains(ev.caller) ? ev.callee : ev.caller));
      skipped += ev.count;
      continue;
    }
    weights[{ev.caller, ev.callee}] += ev.count;
  }
  if (weights.empty() && strict)
    throw integrity_error("invocation log covers no known methods; a fault run must cover code");

  std::vector<std::string> nodes;
  for (const auto& [edge, w] : weights) {
    nodes.push_back(edge.first);
    nodes.push_back(edge.second);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges;
  for (const auto& [edge, w] : weights) edges[{index[edge.first], index[edge.second]}] = w;
  return CallGraph(std::move(nodes), std::move(edges), skipped);
}

double SymmetricGraph::weight_between(std::uint32_t i, std::uint32_t j) const {
  for (const auto& [nbr, w] : adj.at(i)) {
    if (nbr == j) return w;
  }
  return 0.0;
}

SymmetricGraph symmetrized_view(const CallGraph& g) {
  const std::size_t n = g.node_count();
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> sym;
  for (const auto& [edge, w] : g.edges()) {
    auto [a, b] = edge;
    sym[{a, b}] += static_cast<double>(w);
    sym[{b, a}] += static_cast<double>(w);
  }
  SymmetricGraph out;
  out.node_count = n;
  out.adj.assign(n, {});
  out.strength.assign(n, 0.0);
  for (const auto& [edge, w] : sym) {
    out.adj[edge.first].emplace_back(edge.second, w);
    out.strength[edge.first] += w;
    out.total_weight += w;
  }
  return out;
}

}  // namespace semfl
