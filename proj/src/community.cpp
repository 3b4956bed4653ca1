#include "semfl/community.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "semfl/errors.hpp"

namespace semfl {

using nlohmann::json;

const std::string& ModulePartition::module_of(const std::string& method_id) const {
  auto it = assignment.find(method_id);
  if (it == assignment.end()) throw integrity_error("method not in any module: " + method_id);
  return it->second;
}

void ModulePartition::check_consistent(const CallGraph& g) const {
  if (assignment.size() != g.node_count())
    throw integrity_error("partition does not cover every graph node");
  std::size_t members = 0;
  for (const auto& [mid, ids] : modules) {
    for (const auto& id : ids) {
      auto it = assignment.find(id);
      if (it == assignment.end() || it->second != mid)
        throw integrity_error("partition views disagree for method: " + id);
    }
    members += ids.size();
  }
  if (members != assignment.size())
    throw integrity_error("partition module view and assignment view differ in size");
  for (const auto& [id, mid] : assignment) {
    if (!g.has_node(id)) throw integrity_error("partition assigns a method not in the graph: " + id);
  }
  const double recomputed = modularity(g, *this);
  if (std::abs(recomputed - quality) > 1e-9)
    throw integrity_error("partition quality drifted from recomputed modularity");
}

FunctionalModule extract_functional_module(const CallGraph& g, const ModulePartition& p,
                                           const std::string& module_id) {
  auto it = p.modules.find(module_id);
  if (it == p.modules.end()) throw integrity_error("unknown module id: " + module_id);
  FunctionalModule fm;
  fm.module_id = module_id;
  fm.members = it->second;
  std::set<std::string> member_set(fm.members.begin(), fm.members.end());
  for (const auto& [edge, w] : g.edges()) {
    const std::string& a = g.id_of(edge.first);
    const std::string& b = g.id_of(edge.second);
    if (member_set.count(a) && member_set.count(b)) fm.internal_edges.emplace_back(a, b, w);
  }
  std::sort(fm.internal_edges.begin(), fm.internal_edges.end());
  return fm;
}

double modularity(const SymmetricGraph& sym, const std::vector<std::uint32_t>& communities) {
  if (communities.size() != sym.node_count)
    throw argument_error("community labels must cover every node");
  const double W = sym.total_weight;
  if (W <= 0.0) throw argument_error("modularity is undefined on an edgeless graph (W = 0)");

  std::map<std::uint32_t, double> internal;  // community -> sum of internal w'_ij (ordered pairs)
  std::map<std::uint32_t, double> strength;  // community -> sum of k_i
  for (std::uint32_t i = 0; i < sym.node_count; ++i) {
    strength[communities[i]] += sym.strength[i];
    for (const auto& [j, w] : sym.adj[i]) {
      if (communities[j] == communities[i]) internal[communities[i]] += w;
    }
  }
  double q = 0.0;
  for (const auto& [c, k] : strength) {
    const double in = internal.count(c) ? internal.at(c) : 0.0;
    q += in / W - (k / W) * (k / W);
  }
  return q;
}

double modularity(const CallGraph& g, const ModulePartition& p) {
  const SymmetricGraph sym = symmetrized_view(g);
  std::map<std::string, std::uint32_t> label;
  std::vector<std::uint32_t> communities(g.node_count());
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    const std::string& mid = p.module_of(g.id_of(i));
    auto [it, inserted] = label.emplace(mid, static_cast<std::uint32_t>(label.size()));
    communities[i] = it->second;
  }
  return modularity(sym, communities);
}

namespace {

std::string module_label(std::size_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "m%04zu", ordinal);
  return std::string(buf);
}

}  // namespace

// Builds the canonical partition from per-node community labels: modules are
// numbered by their smallest member id so the output is independent of the
// optimizer's internal labeling.
ModulePartition make_partition(const CallGraph& g, const std::vector<std::uint32_t>& communities) {
  std::map<std::uint32_t, std::vector<std::string>> groups;
  for (std::uint32_t i = 0; i < g.node_count(); ++i) groups[communities[i]].push_back(g.id_of(i));
  std::vector<std::vector<std::string>> ordered;
  for (auto& [c, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    ordered.push_back(std::move(ids));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  ModulePartition p;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const std::string mid = module_label(k);
    for (const auto& id : ordered[k]) p.assignment[id] = mid;
    p.modules[mid] = std::move(ordered[k]);
  }
  p.quality = g.edges().empty() ? 0.0 : modularity(g, p);
  return p;
}

RepairResult repair_module_sizes(const CallGraph& g, const ModulePartition& p,
                                 const RepairOptions& opts) {
  if (opts.min_size > opts.max_size) throw argument_error("min_size must not exceed max_size");
  const SymmetricGraph sym = symmetrized_view(g);

  RepairResult out;
  out.partition = p;
  auto& modules = out.partition.modules;
  auto& assignment = out.partition.assignment;

  // Symmetrized weight between two modules, recomputed on demand since the
  // module map changes after every merge.
  auto inter_weight = [&](const std::vector<std::string>& a, const std::set<std::string>& b) {
    double total = 0.0;
    for (const auto& id : a) {
      const std::uint32_t i = g.index_of(id);
      for (const auto& [j, w] : sym.adj[i]) {
        if (b.count(g.id_of(j))) total += w;
      }
    }
    return total;
  };

  while (true) {
    // Smallest repairable undersized module, ties by smallest member id.
    std::string victim;
    for (const auto& [mid, members] : modules) {
      if (members.size() >= opts.min_size) continue;
      if (!victim.empty()) {
        const auto& best = modules.at(victim);
        if (members.size() > best.size()) continue;
        if (members.size() == best.size() && members.front() >= best.front()) continue;
      }
      // Needs at least one adjacent module, otherwise it is left as-is.
      bool adjacent = false;
      for (const auto& id : members) {
        for (const auto& [j, w] : sym.adj[g.index_of(id)]) {
          if (assignment.at(g.id_of(j)) != mid) {
            adjacent = true;
            break;
          }
        }
        if (adjacent) break;
      }
      if (adjacent) victim = mid;
    }
    if (victim.empty()) break;

    const std::vector<std::string> victim_members = modules.at(victim);
    std::map<std::string, double> neighbor_weight;
    for (const auto& [mid, members] : modules) {
      if (mid == victim) continue;
      std::set<std::string> member_set(members.begin(), members.end());
      const double w = inter_weight(victim_members, member_set);
      if (w > 0.0) neighbor_weight[mid] = w;
    }

    // Highest-weight neighbor that stays within max_size; if none fits,
    // highest-weight neighbor overall (shedding undersized modules wins).
    auto pick = [&](bool respect_cap) -> std::string {
      std::string best;
      double best_w = -1.0;
      for (const auto& [mid, w] : neighbor_weight) {
        if (respect_cap && modules.at(mid).size() + victim_members.size() > opts.max_size) continue;
        if (w > best_w || (w == best_w && (best.empty() || mid < best))) {
          best = mid;
          best_w = w;
        }
      }
      return best;
    };
    std::string target = pick(true);
    bool overshot = false;
    if (target.empty()) {
      target = pick(false);
      overshot = true;
    }

    auto& dest = modules.at(target);
    dest.insert(dest.end(), victim_members.begin(), victim_members.end());
    std::sort(dest.begin(), dest.end());
    for (const auto& id : victim_members) assignment[id] = target;
    modules.erase(victim);

    std::ostringstream line;
    line << "merged " << victim << " (" << victim_members.size() << " methods) into " << target
         << " (weight " << neighbor_weight.at(target) << ")";
    if (overshot) line << " exceeding max_size " << opts.max_size;
    out.log.push_back(line.str());
  }

  out.partition.quality = g.edges().empty() ? 0.0 : modularity(g, out.partition);
  return out;
}

std::string partition_to_json(const ModulePartition& p, std::uint64_t seed, std::size_t min_size,
                              std::size_t max_size) {
  json mods = json::array();
  for (const auto& [mid, members] : p.modules) {
    mods.push_back({{"module_id", mid}, {"members", members}});
  }
  json doc = {{"modules", mods},
              {"quality", p.quality},
              {"seed", seed},
              {"min_size", min_size},
              {"max_size", max_size}};
  return doc.dump(2) + "\n";
}

ModulePartition partition_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("modules document is not valid JSON: ") + e.what());
  }
  ModulePartition p;
  try {
    for (const json& m : doc.at("modules")) {
      const std::string mid = m.at("module_id").get<std::string>();
      std::vector<std::string> members = m.at("members").get<std::vector<std::string>>();
      std::sort(members.begin(), members.end());
      for (const auto& id : members) {
        if (p.assignment.count(id))
          throw integrity_error("modules document assigns method twice: " + id);
        p.assignment[id] = mid;
      }
      p.modules[mid] = std::move(members);
    }
    p.quality = doc.at("quality").get<double>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("modules document: ") + e.what());
  }
  return p;
}

}  // namespace semfl
