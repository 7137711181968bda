#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scj/adjacency_graph.hpp"
#include "scj/bigcount.hpp"
#include "scj/execution.hpp"
#include "scj/genome.hpp"
#include "scj/random.hpp"

namespace scj {

using Scenario = std::vector<ScjOp>;

std::string scenario_text(const Scenario& s);

// Number of most parsimonious scenarios sorting a single component, indexed by
// the number of G1 adjacencies:
//
//   C(i) = i W(i-1)
//   W(i) = sum_j binom(2i, 2j-1) W(j-1) W(i-j)
//   M(i) = sum_j binom(2i-2, 2j-2) O(j-1) O(i-j)
//   O(i) = sum_j binom(2i-1, 2j-2) O(j-1) W(i-j)
//
// with W(0) = O(0) = C(1) = 1 and M(0) = C(0) = 0 (no such component).
// Safe for concurrent reads once built.
class ComponentTables {
 public:
  explicit ComponentTables(std::size_t max_i = 0);

  // Extends the tables; not thread safe.
  void reserve(std::size_t max_i);
  std::size_t max_i() const { return w_.size() - 1; }

  const BigCount& w(std::size_t i) const { return w_.at(i); }
  const BigCount& m(std::size_t i) const { return m_.at(i); }
  const BigCount& o(std::size_t i) const { return o_.at(i); }
  const BigCount& c(std::size_t i) const { return c_.at(i); }
  const BigCount& get(ComponentKind kind, std::size_t i) const;

  const BinomialTable& binomials() const { return binom_; }

 private:
  BinomialTable binom_;
  std::vector<BigCount> w_, m_, o_, c_;
};

ComponentTables component_tables(std::size_t max_i);

// A_1 .. A_{n_max}: alternating permutations c1 < c2 > c3 < ..., via the
// Entringer (boustrophedon) triangle. Element k-1 holds A_k.
std::vector<BigCount> zigzag_numbers(std::size_t n_max);

// |Pi1 symmetric-difference Pi2|. Throws on a gene-set mismatch.
std::size_t scj_distance(const Genome& g1, const Genome& g2);
std::size_t scj_distance(const AdjacencySet& pi1, const AdjacencySet& pi2);

// Exact number of most parsimonious scenarios: the multinomial over the
// non-trivial components' operation counts times each component's own count.
BigCount count_scenarios(const Genome& g1, const Genome& g2);
BigCount count_scenarios(const AdjacencySet& pi1, const AdjacencySet& pi2);
BigCount count_scenarios(const Decomposition& d, const ComponentTables& tables);

// One most parsimonious scenario drawn exactly uniformly. Components are
// sorted by backward sampling through the recursions above and merged by a
// uniformly random arrangement of component colours.
Scenario sample_scenario(const Genome& g1, const Genome& g2, std::uint64_t seed);
Scenario sample_scenario(const Decomposition& d, const ComponentTables& tables, Rng& rng);

// `count` independent draws; draw i uses derive_seed(seed, i), so the result
// does not depend on the execution mode.
std::vector<Scenario> sample_scenarios(const Genome& g1, const Genome& g2, std::uint64_t seed,
                                       std::size_t count, Execution exec = Execution::kParallel);

// Exhaustive list of every most parsimonious scenario, by depth-first search
// over legal orderings of the required cuts and joins. Throws GuardError once
// more than `cap` scenarios exist.
std::vector<Scenario> enumerate_scenarios(const Genome& g1, const Genome& g2,
                                          std::size_t cap = 1'000'000);

// True iff `s` applied to g1 yields g2 in exactly scj_distance(g1, g2) steps.
bool is_parsimonious_scenario(const Genome& g1, const Genome& g2, const Scenario& s);

}  // namespace scj
