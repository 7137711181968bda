#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scj/bigcount.hpp"
#include "scj/execution.hpp"
#include "scj/genome.hpp"
#include "scj/tree.hpp"

namespace scj {

// Fitch set for one adjacency at one node: {0}, {1} or {0,1}.
enum class StateSet : std::uint8_t { kAbsent = 1, kPresent = 2, kAmbiguous = 3 };

inline bool contains(StateSet s, bool present) {
  return (static_cast<std::uint8_t>(s) & (present ? 2 : 1)) != 0;
}

// Presence (1) or absence (0) of one adjacency, indexed by node. Only leaf
// entries are read by the bottom-up passes.
using Presence = std::vector<std::uint8_t>;

std::vector<StateSet> fitch_bottom_up(const PhyloTree& tree, const Presence& leaf_presence);

// Pre-order propagation from `root_choice`. Throws scj::Error if the choice is
// not in the root's Fitch set.
Presence fitch_top_down(const PhyloTree& tree, const std::vector<StateSet>& bottom_up, bool root_choice);

// Number of edges whose endpoints carry different labels.
std::size_t changed_edges(const PhyloTree& tree, const Presence& labels);

// Sankoff cost with a dedicated infinity; never a large sentinel integer.
class Cost {
 public:
  static Cost infinity() { return Cost(); }
  static Cost finite(std::uint32_t v) { return Cost(v); }

  bool is_finite() const { return finite_; }
  std::uint32_t value() const;

  friend Cost operator+(Cost a, Cost b) {
    return a.finite_ && b.finite_ ? Cost(a.value_ + b.value_) : infinity();
  }
  friend bool operator==(const Cost&, const Cost&) = default;
  friend bool operator<(Cost a, Cost b) {
    if (!a.finite_) return false;
    return !b.finite_ || a.value_ < b.value_;
  }
  friend Cost min(Cost a, Cost b) { return b < a ? b : a; }

 private:
  Cost() = default;
  explicit Cost(std::uint32_t v) : finite_(true), value_(v) {}
  bool finite_ = false;
  std::uint32_t value_ = 0;
};

struct SankoffTable {
  std::vector<Cost> s0;  // node labelled absent
  std::vector<Cost> s1;  // node labelled present

  Cost minimum(int v) const { return min(s0[static_cast<std::size_t>(v)], s1[static_cast<std::size_t>(v)]); }
};

SankoffTable sankoff(const PhyloTree& tree, const Presence& leaf_presence);

// Number of labelings of the internal nodes reaching the Sankoff minimum.
BigCount count_optimal_labelings(const PhyloTree& tree, const SankoffTable& table);

// Adjacency sets indexed by node; leaves hold the input genomes.
using NodeAdjacencies = std::vector<AdjacencySet>;

struct LeafData {
  std::set<std::string> genes;
  NodeAdjacencies adjacencies;  // leaves filled, internal nodes empty
};

// Matches genomes to leaves by name. Throws if a leaf has no genome or the
// gene sets differ.
LeafData leaf_data(const PhyloTree& tree, const std::map<std::string, Genome>& leaf_genomes);

// Union of the leaf adjacency sets.
AdjacencySet adjacency_universe(const PhyloTree& tree, const NodeAdjacencies& leaves);

Presence presence_of(const PhyloTree& tree, const NodeAdjacencies& leaves, const Adjacency& alpha);

enum class RootResolution : std::uint8_t {
  kAbsent,  // every root ambiguity resolved to absence; always a valid genome
  kGreedy,  // ambiguous adjacencies added in lexicographic order when conflict-free
};

struct TreeAssignment {
  std::set<std::string> genes;
  NodeAdjacencies genome_at;
  std::size_t score = 0;

  Genome genome(const PhyloTree& tree, int v) const;
};

// Fitch labeling of every adjacency in the universe. `present_if_ambiguous`
// picks the root label of adjacencies whose root set is {0,1}.
NodeAdjacencies fitch_assignment(const PhyloTree& tree, const NodeAdjacencies& leaves,
                                 const std::function<bool(const Adjacency&)>& present_if_ambiguous);

// Sum over edges of |Pi_parent symmetric-difference Pi_child|.
std::size_t assignment_score(const PhyloTree& tree, const NodeAdjacencies& genome_at);

// Most parsimonious valid genome assignment via per-adjacency Fitch. Throws
// scj::Error if an internal genome comes out invalid.
TreeAssignment solve_spscj(const PhyloTree& tree, const std::map<std::string, Genome>& leaf_genomes,
                           RootResolution resolution = RootResolution::kAbsent,
                           Execution exec = Execution::kParallel);
TreeAssignment solve_spscj(const PhyloTree& tree, const LeafData& leaves,
                           RootResolution resolution = RootResolution::kAbsent,
                           Execution exec = Execution::kParallel);

// Sum over adjacencies of the Sankoff root minimum.
std::size_t sankoff_score(const PhyloTree& tree, const NodeAdjacencies& leaves,
                          Execution exec = Execution::kParallel);

// Product over edges of the pairwise scenario counts. Edges do not interleave.
BigCount count_scenarios_for_assignment(const PhyloTree& tree, const NodeAdjacencies& genome_at);

struct SpscjCount {
  std::size_t min_score = 0;
  BigCount total;
};

// Exhaustive #SPSCJ: every valid assignment of subsets of the adjacency
// universe to the internal nodes, minimal ones summed by scenario count.
// Guard: universe <= 4 adjacencies, internal nodes <= 7.
SpscjCount brute_force_spscj_count(const PhyloTree& tree, const NodeAdjacencies& leaves);

// Fitch solutions: 2^(root ambiguities). Only defined when the universe is
// pairwise extremity-disjoint; throws scj::Error otherwise.
BigCount count_fitch_solutions(const PhyloTree& tree, const NodeAdjacencies& leaves);

}  // namespace scj
