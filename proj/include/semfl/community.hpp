#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semfl/call_graph.hpp"

namespace semfl {

// Assignment of every graph node to exactly one module, plus the modularity
// quality of the assignment.
struct ModulePartition {
  std::map<std::string, std::string> assignment;            // method id -> module id
  std::map<std::string, std::vector<std::string>> modules;  // module id -> sorted member ids
  double quality = 0.0;

  std::size_t module_count() const { return modules.size(); }
  const std::string& module_of(const std::string& method_id) const;
  void check_consistent(const CallGraph& g) const;  // throws on violated invariants
};

struct FunctionalModule {
  std::string module_id;
  std::vector<std::string> members;  // sorted
  // (caller, callee, weight) restricted to members, sorted lexicographically.
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> internal_edges;
};

FunctionalModule extract_functional_module(const CallGraph& g, const ModulePartition& p,
                                           const std::string& module_id);

// Eq-style weighted modularity over the symmetrized graph:
//   Q = (1/W) * sum_{i,j} [w'_ij - k_i k_j / W] * [c_i == c_j]
// `communities` assigns a community label per node index. Throws on W == 0.
double modularity(const SymmetricGraph& sym, const std::vector<std::uint32_t>& communities);

// Modularity of a partition given by module ids over a call graph.
double modularity(const CallGraph& g, const ModulePartition& p);

// Canonical partition from per-node community labels: modules are renamed
// m0000, m0001, ... ordered by smallest member id, and quality is recomputed.
ModulePartition make_partition(const CallGraph& g, const std::vector<std::uint32_t>& communities);

struct LeidenOptions {
  std::size_t max_size = 15;  // cap on module size in original nodes
  std::uint64_t seed = 42;
  int max_passes = 32;
};

// Community detection by iterated local moving, refinement and aggregation,
// maximizing weighted modularity. Moves that would push a community past
// max_size are disallowed. Deterministic for a fixed seed.
ModulePartition leiden_detect(const CallGraph& g, const LeidenOptions& opts);

struct RepairOptions {
  std::size_t min_size = 5;
  std::size_t max_size = 15;
};

struct RepairResult {
  ModulePartition partition;
  std::vector<std::string> log;  // one line per merge decision
};

// Merges every undersized module into its most strongly connected neighbor
// (by total symmetrized inter-module edge weight), smallest modules first,
// recomputing adjacency after each merge. Modules with no adjacent module
// are left as-is.
RepairResult repair_module_sizes(const CallGraph& g, const ModulePartition& p,
                                 const RepairOptions& opts);

// modules.json export / import.
std::string partition_to_json(const ModulePartition& p, std::uint64_t seed, std::size_t min_size,
                              std::size_t max_size);
ModulePartition partition_from_json(const std::string& json_text);

}  // namespace semfl
