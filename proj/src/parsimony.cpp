#include "scj/parsimony.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "scj/error.hpp"
#include "scj/pairwise.hpp"

namespace scj {

std::vector<StateSet> fitch_bottom_up(const PhyloTree& tree, const Presence& leaf_presence) {
  std::vector<StateSet> b(tree.size(), StateSet::kAbsent);
  for (int v : tree.postorder()) {
    const auto vi = static_cast<std::size_t>(v);
    if (tree.is_leaf(v)) {
      b[vi] = leaf_presence[vi] != 0 ? StateSet::kPresent : StateSet::kAbsent;
      continue;
    }
    const auto l = static_cast<std::uint8_t>(b[static_cast<std::size_t>(tree.children(v)[0])]);
    const auto r = static_cast<std::uint8_t>(b[static_cast<std::size_t>(tree.children(v)[1])]);
    const std::uint8_t meet = l & r;
    b[vi] = static_cast<StateSet>(meet != 0 ? meet : (l | r));
  }
  return b;
}

Presence fitch_top_down(const PhyloTree& tree, const std::vector<StateSet>& bottom_up, bool root_choice) {
  const int root = tree.root();
  if (!contains(bottom_up[static_cast<std::size_t>(root)], root_choice)) {
    throw Error(std::string("root choice ") + (root_choice ? "1" : "0") + " is not in the root's Fitch set");
  }
  Presence f(tree.size(), 0);
  auto order = tree.postorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    const auto vi = static_cast<std::size_t>(v);
    if (v == root) {
      f[vi] = root_choice ? 1 : 0;
      continue;
    }
    const bool from_parent = f[static_cast<std::size_t>(tree.parent(v))] != 0;
    // Either the parent's label survives the intersection, or B(v) is a
    // singleton holding the other label.
    f[vi] = contains(bottom_up[vi], from_parent) ? from_parent : !from_parent;
  }
  return f;
}

std::size_t changed_edges(const PhyloTree& tree, const Presence& labels) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const int p = tree.parent(static_cast<int>(v));
    if (p != PhyloTree::kNone && labels[v] != labels[static_cast<std::size_t>(p)]) ++n;
  }
  return n;
}

std::uint32_t Cost::value() const {
  if (!finite_) throw Error("infinite Sankoff cost has no value");
  return value_;
}

SankoffTable sankoff(const PhyloTree& tree, const Presence& leaf_presence) {
  SankoffTable t{std::vector<Cost>(tree.size(), Cost::infinity()), std::vector<Cost>(tree.size(), Cost::infinity())};
  const Cost one = Cost::finite(1);
  for (int v : tree.postorder()) {
    const auto vi = static_cast<std::size_t>(v);
    if (tree.is_leaf(v)) {
      const bool present = leaf_presence[vi] != 0;
      t.s1[vi] = present ? Cost::finite(0) : Cost::infinity();
      t.s0[vi] = present ? Cost::infinity() : Cost::finite(0);
      continue;
    }
    Cost s0 = Cost::finite(0), s1 = Cost::finite(0);
    for (int c : tree.children(v)) {
      const auto ci = static_cast<std::size_t>(c);
      s1 = s1 + min(t.s1[ci], t.s0[ci] + one);
      s0 = s0 + min(t.s0[ci], t.s1[ci] + one);
    }
    t.s0[vi] = s0;
    t.s1[vi] = s1;
  }
  return t;
}

BigCount count_optimal_labelings(const PhyloTree& tree, const SankoffTable& table) {
  // ways[x][v]: labelings strictly below v reaching s_x(v) when v carries x.
  std::vector<BigCount> ways0(tree.size()), ways1(tree.size());
  const Cost one = Cost::finite(1);
  for (int v : tree.postorder()) {
    const auto vi = static_cast<std::size_t>(v);
    if (tree.is_leaf(v)) {
      ways0[vi] = table.s0[vi].is_finite() ? 1 : 0;
      ways1[vi] = table.s1[vi].is_finite() ? 1 : 0;
      continue;
    }
    BigCount w0 = 1, w1 = 1;
    for (int c : tree.children(v)) {
      const auto ci = static_cast<std::size_t>(c);
      // Child labelled y under a parent labelled x costs s_y(c) + [x != y].
      const Cost keep0 = table.s0[ci], flip0 = table.s1[ci] + one;
      const Cost best0 = min(keep0, flip0);
      BigCount sum0 = 0;
      if (best0.is_finite() && keep0 == best0) sum0 += ways0[ci];
      if (best0.is_finite() && flip0 == best0) sum0 += ways1[ci];
      const Cost keep1 = table.s1[ci], flip1 = table.s0[ci] + one;
      const Cost best1 = min(keep1, flip1);
      BigCount sum1 = 0;
      if (best1.is_finite() && keep1 == best1) sum1 += ways1[ci];
      if (best1.is_finite() && flip1 == best1) sum1 += ways0[ci];
      w0 *= sum0;
      w1 *= sum1;
    }
    ways0[vi] = std::move(w0);
    ways1[vi] = std::move(w1);
  }
  const auto r = static_cast<std::size_t>(tree.root());
  const Cost best = table.minimum(tree.root());
  BigCount total = 0;
  if (table.s0[r] == best) total += ways0[r];
  if (table.s1[r] == best) total += ways1[r];
  return total;
}

LeafData leaf_data(const PhyloTree& tree, const std::map<std::string, Genome>& leaf_genomes) {
  tree.validate();
  LeafData data;
  data.adjacencies.resize(tree.size());
  const Genome* reference = nullptr;
  for (int v : tree.leaves()) {
    const auto& name = tree.node(v).name;
    auto it = leaf_genomes.find(name);
    if (it == leaf_genomes.end()) throw Error("no genome for leaf '" + name + "'");
    if (reference) {
      require_same_genes(*reference, it->second);
    } else {
      reference = &it->second;
      data.genes = it->second.genes();
    }
    data.adjacencies[static_cast<std::size_t>(v)] = it->second.adjacencies();
  }
  return data;
}

AdjacencySet adjacency_universe(const PhyloTree& tree, const NodeAdjacencies& leaves) {
  AdjacencySet all;
  for (int v : tree.leaves()) {
    const auto& s = leaves[static_cast<std::size_t>(v)];
    all.insert(s.begin(), s.end());
  }
  return all;
}

Presence presence_of(const PhyloTree& tree, const NodeAdjacencies& leaves, const Adjacency& alpha) {
  Presence p(tree.size(), 0);
  for (int v : tree.leaves()) {
    const auto vi = static_cast<std::size_t>(v);
    p[vi] = leaves[vi].contains(alpha) ? 1 : 0;
  }
  return p;
}

Genome TreeAssignment::genome(const PhyloTree& tree, int v) const {
  return Genome::with_adjacencies(tree.display_name(v), genes, genome_at[static_cast<std::size_t>(v)]);
}

NodeAdjacencies fitch_assignment(const PhyloTree& tree, const NodeAdjacencies& leaves,
                                 const std::function<bool(const Adjacency&)>& present_if_ambiguous) {
  NodeAdjacencies out(tree.size());
  const int root = tree.root();
  for (const auto& alpha : adjacency_universe(tree, leaves)) {
    const auto b = fitch_bottom_up(tree, presence_of(tree, leaves, alpha));
    const StateSet at_root = b[static_cast<std::size_t>(root)];
    const bool choice = at_root == StateSet::kAmbiguous ? present_if_ambiguous(alpha) : at_root == StateSet::kPresent;
    const auto f = fitch_top_down(tree, b, choice);
    for (std::size_t v = 0; v < tree.size(); ++v) {
      if (f[v] != 0) out[v].insert(alpha);
    }
  }
  return out;
}

std::size_t assignment_score(const PhyloTree& tree, const NodeAdjacencies& genome_at) {
  std::size_t score = 0;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const int p = tree.parent(static_cast<int>(v));
    if (p != PhyloTree::kNone) score += scj_distance(genome_at[static_cast<std::size_t>(p)], genome_at[v]);
  }
  return score;
}

TreeAssignment solve_spscj(const PhyloTree& tree, const LeafData& leaves, RootResolution resolution,
                           Execution exec) {
  tree.validate();
  const AdjacencySet universe_set = adjacency_universe(tree, leaves.adjacencies);
  const std::vector<Adjacency> universe(universe_set.begin(), universe_set.end());
  const auto root = static_cast<std::size_t>(tree.root());

  // Bottom-up sets, one adjacency per task.
  std::vector<std::vector<StateSet>> bottom_up(universe.size());
  for_each_index(exec, universe.size(), [&](std::size_t k) {
    bottom_up[k] = fitch_bottom_up(tree, presence_of(tree, leaves.adjacencies, universe[k]));
  });

  // Root genome. Forced labels first; ambiguities default to absence, which
  // can never create a conflict.
  std::vector<std::uint8_t> root_choice(universe.size(), 0);
  AdjacencySet root_genome;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (bottom_up[k][root] == StateSet::kPresent) {
      root_choice[k] = 1;
      root_genome.insert(universe[k]);
    }
  }
  if (resolution == RootResolution::kGreedy) {
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (bottom_up[k][root] != StateSet::kAmbiguous) continue;
      const bool clash = std::any_of(root_genome.begin(), root_genome.end(),
                                     [&](const Adjacency& a) { return a.shares_extremity(universe[k]); });
      if (!clash) {
        root_choice[k] = 1;
        root_genome.insert(universe[k]);
      }
    }
  }

  std::vector<Presence> labels(universe.size());
  for_each_index(exec, universe.size(),
                 [&](std::size_t k) { labels[k] = fitch_top_down(tree, bottom_up[k], root_choice[k] != 0); });

  TreeAssignment out;
  out.genes = leaves.genes;
  out.genome_at.resize(tree.size());
  for_each_index(exec, tree.size(), [&](std::size_t v) {
    if (tree.is_leaf(static_cast<int>(v))) {
      out.genome_at[v] = leaves.adjacencies[v];
      return;
    }
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (labels[k][v] != 0) out.genome_at[v].insert(universe[k]);
    }
  });

  for (int v : tree.internal_nodes()) {
    if (!is_valid_assignment(out.genome_at[static_cast<std::size_t>(v)])) {
      throw Error("internal node '" + tree.display_name(v) + "' received an invalid genome");
    }
  }
  out.score = assignment_score(tree, out.genome_at);
  return out;
}

TreeAssignment solve_spscj(const PhyloTree& tree, const std::map<std::string, Genome>& leaf_genomes,
                           RootResolution resolution, Execution exec) {
  return solve_spscj(tree, leaf_data(tree, leaf_genomes), resolution, exec);
}

std::size_t sankoff_score(const PhyloTree& tree, const NodeAdjacencies& leaves, Execution exec) {
  const AdjacencySet universe_set = adjacency_universe(tree, leaves);
  const std::vector<Adjacency> universe(universe_set.begin(), universe_set.end());
  std::vector<std::size_t> per_adjacency(universe.size(), 0);
  const int root = tree.root();
  for_each_index(exec, universe.size(), [&](std::size_t k) {
    per_adjacency[k] = sankoff(tree, presence_of(tree, leaves, universe[k])).minimum(root).value();
  });
  std::size_t total = 0;
  for (auto s : per_adjacency) total += s;
  return total;
}

BigCount count_scenarios_for_assignment(const PhyloTree& tree, const NodeAdjacencies& genome_at) {
  BigCount product = 1;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const int p = tree.parent(static_cast<int>(v));
    if (p == PhyloTree::kNone) continue;
    product *= count_scenarios(genome_at[static_cast<std::size_t>(p)], genome_at[v]);
  }
  return product;
}

SpscjCount brute_force_spscj_count(const PhyloTree& tree, const NodeAdjacencies& leaves) {
  constexpr std::size_t kMaxAdjacencies = 4;
  constexpr std::size_t kMaxInternal = 7;
  tree.validate();
  const AdjacencySet universe_set = adjacency_universe(tree, leaves);
  const std::vector<Adjacency> universe(universe_set.begin(), universe_set.end());
  const std::vector<int> internal = tree.internal_nodes();
  if (universe.size() > kMaxAdjacencies || internal.size() > kMaxInternal) {
    throw GuardError("brute-force #SPSCJ is limited to " + std::to_string(kMaxAdjacencies) + " adjacencies and " +
                     std::to_string(kMaxInternal) + " internal nodes");
  }

  const std::size_t subsets = std::size_t{1} << universe.size();
  auto members = [&](std::size_t mask) {
    AdjacencySet s;
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (mask & (std::size_t{1} << k)) s.insert(universe[k]);
    }
    return s;
  };
  std::vector<std::size_t> valid;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    if (is_valid_assignment(members(mask))) valid.push_back(mask);
  }
  // Leaves are valid genomes too, so every edge joins two valid subsets.
  std::vector<std::vector<BigCount>> pair_count(subsets, std::vector<BigCount>(subsets));
  for (std::size_t a : valid) {
    for (std::size_t b : valid) pair_count[a][b] = count_scenarios(members(a), members(b));
  }

  std::vector<std::size_t> mask(tree.size(), 0);
  for (int v : tree.leaves()) {
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (leaves[static_cast<std::size_t>(v)].contains(universe[k])) mask[static_cast<std::size_t>(v)] |= std::size_t{1} << k;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const int p = tree.parent(static_cast<int>(v));
    if (p != PhyloTree::kNone) edges.emplace_back(static_cast<std::size_t>(p), v);
  }

  SpscjCount result{std::numeric_limits<std::size_t>::max(), 0};
  std::vector<std::size_t> odometer(internal.size(), 0);
  for (;;) {
    for (std::size_t k = 0; k < internal.size(); ++k) mask[static_cast<std::size_t>(internal[k])] = valid[odometer[k]];
    std::size_t score = 0;
    for (const auto& [p, v] : edges) score += static_cast<std::size_t>(std::popcount(mask[p] ^ mask[v]));
    if (score <= result.min_score) {
      BigCount product = 1;
      for (const auto& [p, v] : edges) product *= pair_count[mask[p]][mask[v]];
      if (score < result.min_score) {
        result.min_score = score;
        result.total = 0;
      }
      result.total += product;
    }
    std::size_t k = 0;
    while (k < odometer.size() && ++odometer[k] == valid.size()) odometer[k++] = 0;
    if (k == odometer.size()) break;
  }
  return result;
}

BigCount count_fitch_solutions(const PhyloTree& tree, const NodeAdjacencies& leaves) {
  const AdjacencySet universe = adjacency_universe(tree, leaves);
  if (!is_valid_assignment(universe)) {
    throw Error("Fitch-solution counting needs pairwise extremity-disjoint adjacencies");
  }
  const auto root = static_cast<std::size_t>(tree.root());
  std::uint64_t ambiguous = 0;
  for (const auto& alpha : universe) {
    if (fitch_bottom_up(tree, presence_of(tree, leaves, alpha))[root] == StateSet::kAmbiguous) ++ambiguous;
  }
  return power(2, ambiguous);
}

}  // namespace scj
