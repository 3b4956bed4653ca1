#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semfl/method_table.hpp"

namespace semfl {

// One observed invocation, optionally pre-aggregated with a count.
struct CallEvent {
  std::string caller;
  std::string callee;
  std::uint64_t count = 1;
};

// Weighted directed multigraph over the methods covered at runtime.
// Nodes are only the methods that appear in at least one event.
class CallGraph {
 public:
  CallGraph() = default;
  CallGraph(std::vector<std::string> node_ids,
            std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges,
            std::uint64_t skipped_events);

  const std::vector<std::string>& node_ids() const { return node_ids_; }
  std::size_t node_count() const { return node_ids_.size(); }
  const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>& edges() const {
    return edges_;
  }
  std::uint64_t edge_weight(const std::string& caller, const std::string& callee) const;
  // Sum of directed edge weights, i.e. the number of ingested events.
  std::uint64_t total_events() const;
  std::uint64_t skipped_events() const { return skipped_events_; }

  bool has_node(const std::string& id) const;
  std::uint32_t index_of(const std::string& id) const;
  const std::string& id_of(std::uint32_t index) const { return node_ids_.at(index); }

  std::string to_json() const;
  static CallGraph from_json(const std::string& json_text);

 private:
  std::vector<std::string> node_ids_;  // sorted
  std::map<std::string, std::uint32_t> index_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges_;
  std::uint64_t skipped_events_ = 0;
};

// Parses calls.jsonl: one JSON object per line, {"caller","callee"} or
// {"caller","callee","count"}. Counts are summed across lines.
std::vector<CallEvent> parse_call_events(const std::string& jsonl_text);

// Builds the covered-method call graph. In strict mode an event naming an id
// absent from `methods` is an error (as is an empty event stream); in lenient
// mode such events are skipped and tallied.
CallGraph build_call_graph(const std::vector<CallEvent>& events, const MethodTable& methods,
                           bool strict = false);

// Undirected view used by modularity: w'(i,j) = w(i,j) + w(j,i).
// Self-loops appear once per node with their doubled weight.
struct SymmetricGraph {
  std::size_t node_count = 0;
  // adj[i] lists (j, w'(i,j)) for every j with nonzero weight, sorted by j;
  // includes j == i for self-loops.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> strength;  // k_i = sum_j w'(i,j)
  double total_weight = 0.0;     // W = sum over ordered pairs (i,j) of w'(i,j)

  double weight_between(std::uint32_t i, std::uint32_t j) const;
};

SymmetricGraph symmetrized_view(const CallGraph& g);

}  // namespace semfl
