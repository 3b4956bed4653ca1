#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "semfl/community.hpp"
#include "semfl/errors.hpp"
#include "semfl/util.hpp"

// Weighted-modularity Leiden: local moving, partition refinement, and
// aggregation, repeated until local moving finds no improving move. All
// randomness comes from a seeded generator, so a fixed (graph, seed) pair
// always yields the same partition. Community sizes are tracked in original
// graph nodes and moves that would exceed max_size are rejected.

namespace semfl {

namespace {

constexpr double kGainEps = 1e-12;

struct WorkGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // symmetric, self-loops once
  std::vector<double> strength;   // k_i including self-loop weight
  std::vector<double> self_loop;  // w'(i,i)
  std::vector<std::size_t> node_size;  // original nodes represented
  double total_weight = 0.0;           // W, invariant across aggregation

  std::size_t size() const { return adj.size(); }
};

WorkGraph from_symmetric(const SymmetricGraph& sym) {
  WorkGraph g;
  g.adj.resize(sym.node_count);
  g.strength = sym.strength;
  g.self_loop.assign(sym.node_count, 0.0);
  g.node_size.assign(sym.node_count, 1);
  g.total_weight = sym.total_weight;
  for (std::uint32_t i = 0; i < sym.node_count; ++i) {
    for (const auto& [j, w] : sym.adj[i]) {
      if (j == i)
        g.self_loop[i] = w;
      else
        g.adj[i].emplace_back(j, w);
    }
  }
  return g;
}

struct CommunityState {
  std::vector<std::uint32_t> comm;   // node -> community label
  std::vector<double> comm_strength; // label -> sum of k_i
  std::vector<std::size_t> comm_size;  // label -> original node count
  std::vector<std::size_t> comm_nodes; // label -> member count in work graph

  void init(const WorkGraph& g, const std::vector<std::uint32_t>& initial) {
    comm = initial;
    const std::uint32_t labels = *std::max_element(comm.begin(), comm.end()) + 1;
    comm_strength.assign(labels, 0.0);
    comm_size.assign(labels, 0);
    comm_nodes.assign(labels, 0);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      comm_strength[comm[v]] += g.strength[v];
      comm_size[comm[v]] += g.node_size[v];
      comm_nodes[comm[v]] += 1;
    }
  }

  void move(const WorkGraph& g, std::uint32_t v, std::uint32_t to) {
    const std::uint32_t from = comm[v];
    comm_strength[from] -= g.strength[v];
    comm_size[from] -= g.node_size[v];
    comm_nodes[from] -= 1;
    comm_strength[to] += g.strength[v];
    comm_size[to] += g.node_size[v];
    comm_nodes[to] += 1;
    comm[v] = to;
  }
};

// Gain of moving v from its community (already excluding v) into a community
// with total member strength k_target and edge weight w_target to v:
//   dQ = (2/W) * [ (w_target - w_current) - k_v * (k_target - k_current) / W ]
double move_gain(const WorkGraph& g, double k_v, double w_current, double k_current,
                 double w_target, double k_target) {
  const double W = g.total_weight;
  return (2.0 / W) * ((w_target - w_current) - k_v * (k_target - k_current) / W);
}

// Local moving with a work queue: every node starts queued in shuffled order;
// when a node moves, its neighbors in other communities are re-queued.
// Returns the number of accepted moves.
std::size_t local_move(const WorkGraph& g, CommunityState& state, std::mt19937_64& rng,
                       std::size_t max_size) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> queue(n);
  std::iota(queue.begin(), queue.end(), 0);
  deterministic_shuffle(queue, rng);
  std::vector<char> queued(n, 1);
  std::size_t head = 0;
  std::size_t moves = 0;

  std::vector<double> weight_to(state.comm_strength.size(), 0.0);
  while (head < queue.size()) {
    const std::uint32_t v = queue[head++];
    queued[v] = 0;
    const std::uint32_t current = state.comm[v];

    std::vector<std::uint32_t> touched;
    for (const auto& [u, w] : g.adj[v]) {
      const std::uint32_t c = state.comm[u];
      if (weight_to[c] == 0.0) touched.push_back(c);
      weight_to[c] += w;
    }
    std::sort(touched.begin(), touched.end());

    const double k_v = g.strength[v];
    const double w_current = weight_to.size() > current ? weight_to[current] : 0.0;
    const double k_current = state.comm_strength[current] - k_v;

    std::uint32_t best = current;
    double best_gain = 0.0;
    for (const std::uint32_t c : touched) {
      if (c == current) continue;
      if (state.comm_size[c] + g.node_size[v] > max_size) continue;
      const double gain =
          move_gain(g, k_v, w_current, k_current, weight_to[c], state.comm_strength[c]);
      if (gain > best_gain + kGainEps) {
        best = c;
        best_gain = gain;
      }
    }
    // Leaving for an empty community can also improve Q when v is a drag on
    // its current community; covered implicitly if v is alone, otherwise by
    // the singleton option below.
    if (state.comm_nodes[current] > 1) {
      const double gain = move_gain(g, k_v, w_current, k_current, 0.0, 0.0);
      if (gain > best_gain + kGainEps) {
        // Reuse a dead label if any, otherwise grow the label space.
        std::uint32_t empty_label = static_cast<std::uint32_t>(state.comm_strength.size());
        state.comm_strength.push_back(0.0);
        state.comm_size.push_back(0);
        state.comm_nodes.push_back(0);
        weight_to.push_back(0.0);
        best = empty_label;
        best_gain = gain;
      }
    }

    for (const std::uint32_t c : touched) weight_to[c] = 0.0;

    if (best != current) {
      state.move(g, v, best);
      ++moves;
      for (const auto& [u, w] : g.adj[v]) {
        if (state.comm[u] != best && !queued[u]) {
          queue.push_back(u);
          queued[u] = 1;
        }
      }
    }
  }
  return moves;
}

// Refinement: within each community of `state`, start from singletons and
// greedily merge connected sub-communities when the merge does not lower Q.
// Keeps refined communities connected and never crosses community borders.
std::vector<std::uint32_t> refine(const WorkGraph& g, const CommunityState& state,
                                  std::mt19937_64& rng, std::size_t max_size) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> sub(n);
  std::iota(sub.begin(), sub.end(), 0);  // singleton sub-communities, label = node
  std::vector<double> sub_strength = g.strength;
  std::vector<std::size_t> sub_count(n, 1);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  deterministic_shuffle(order, rng);

  std::vector<double> weight_to(n, 0.0);
  for (const std::uint32_t v : order) {
    if (sub_count[sub[v]] > 1) continue;  // only singleton nodes are moved
    std::vector<std::uint32_t> touched;
    for (const auto& [u, w] : g.adj[v]) {
      if (state.comm[u] != state.comm[v]) continue;  // stay within the community
      const std::uint32_t s = sub[u];
      if (s == sub[v]) continue;
      if (weight_to[s] == 0.0) touched.push_back(s);
      weight_to[s] += w;
    }
    std::sort(touched.begin(), touched.end());

    const double k_v = g.strength[v];
    std::uint32_t best = sub[v];
    double best_gain = kGainEps;  // merge only on a strict improvement
    for (const std::uint32_t s : touched) {
      const double gain = move_gain(g, k_v, 0.0, 0.0, weight_to[s], sub_strength[s]);
      if (gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    for (const std::uint32_t s : touched) weight_to[s] = 0.0;

    if (best != sub[v]) {
      sub_strength[best] += k_v;
      sub_strength[sub[v]] -= k_v;
      sub_count[best] += 1;
      sub_count[sub[v]] -= 1;
      sub[v] = best;
    }
  }
  (void)max_size;  // sub-communities cannot outgrow their community's size
  return sub;
}

std::vector<std::uint32_t> compact_labels(const std::vector<std::uint32_t>& labels) {
  std::vector<std::uint32_t> remap(labels.size() + 1, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::uint32_t l = labels[i];
    if (remap.size() <= l) remap.resize(l + 1, UINT32_MAX);
    if (remap[l] == UINT32_MAX) remap[l] = next++;
    out[i] = remap[l];
  }
  return out;
}

std::uint32_t label_count(const std::vector<std::uint32_t>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

// Collapses each refined sub-community into one node; the carried partition
// labels transfer to the aggregate nodes.
WorkGraph aggregate(const WorkGraph& g, const std::vector<std::uint32_t>& refined,
                    const std::vector<std::uint32_t>& carried,
                    std::vector<std::uint32_t>& carried_out) {
  const std::uint32_t m = label_count(refined);
  WorkGraph out;
  out.adj.assign(m, {});
  out.strength.assign(m, 0.0);
  out.self_loop.assign(m, 0.0);
  out.node_size.assign(m, 0);
  out.total_weight = g.total_weight;
  carried_out.assign(m, 0);

  std::vector<std::map<std::uint32_t, double>> nbr(m);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const std::uint32_t a = refined[v];
    out.strength[a] += g.strength[v];
    out.self_loop[a] += g.self_loop[v];
    out.node_size[a] += g.node_size[v];
    carried_out[a] = carried[v];
    for (const auto& [u, w] : g.adj[v]) {
      const std::uint32_t b = refined[u];
      if (a == b)
        out.self_loop[a] += w;  // internal ordered pairs fold into the self-loop
      else
        nbr[a][b] += w;
    }
  }
  // self_loop accumulated both ordered directions of every internal pair plus
  // the original self-loops, which matches the ordered-pair sum in W.
  for (std::uint32_t a = 0; a < m; ++a) {
    out.adj[a].assign(nbr[a].begin(), nbr[a].end());
  }
  return out;
}

}  // namespace

ModulePartition leiden_detect(const CallGraph& g, const LeidenOptions& opts) {
  if (g.node_count() == 0) throw argument_error("cannot detect modules on an empty graph");
  const SymmetricGraph sym = symmetrized_view(g);
  if (sym.total_weight <= 0.0)
    throw argument_error("cannot detect modules on a graph with no edges");
  if (opts.max_size == 0) throw argument_error("max_size must be positive");

  std::mt19937_64 rng(opts.seed);
  WorkGraph work = from_symmetric(sym);

  // membership[v] = current work-graph node that original node v belongs to.
  std::vector<std::uint32_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0);

  std::vector<std::uint32_t> carried(work.size());
  std::iota(carried.begin(), carried.end(), 0);  // singleton start

  for (int pass = 0; pass < opts.max_passes; ++pass) {
    CommunityState state;
    state.init(work, carried);
    const std::size_t moves = local_move(work, state, rng, opts.max_size);
    carried = compact_labels(state.comm);
    state.init(work, carried);

    if (moves == 0 && pass > 0) break;
    if (label_count(carried) == work.size()) break;  // all singletons, nothing to aggregate

    std::vector<std::uint32_t> refined = compact_labels(refine(work, state, rng, opts.max_size));
    if (label_count(refined) == work.size() && moves == 0) break;

    std::vector<std::uint32_t> carried_next;
    WorkGraph next = aggregate(work, refined, carried, carried_next);
    for (auto& m : membership) m = refined[m];
    work = std::move(next);
    carried = compact_labels(carried_next);
    if (work.size() == 1) break;
  }

  std::vector<std::uint32_t> final_labels(g.node_count());
  for (std::uint32_t v = 0; v < g.node_count(); ++v) final_labels[v] = carried[membership[v]];
  return make_partition(g, final_labels);
}

}  // namespace semfl
