#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scj/bigcount.hpp"
#include "scj/execution.hpp"
#include "scj/genome.hpp"
#include "scj/parsimony.hpp"
#include "scj/tree.hpp"

namespace scj {

// A 3CNF formula. Literals are signed 1-based variable indices; every clause
// has three literals over distinct variables.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  // Bit (i-1) of `assignment` is the value of variable i.
  bool clause_satisfied(std::size_t clause, std::uint64_t assignment) const;
  bool satisfied(std::uint64_t assignment) const;
};

// DIMACS CNF (`c` comments, `p cnf <vars> <clauses>`, 0-terminated clauses).
CnfFormula parse_cnf(std::string_view text);
CnfFormula read_cnf_file(const std::string& path);

// ---------------------------------------------------------------------------
// Clause gadget building blocks.
//
// Bit patterns list the three clause adjacencies in order: "011" means the first
// clause adjacency absent, the second and third present.

struct GadgetLeaf {
  std::array<std::uint8_t, 3> logical;
  std::size_t extras;  // adjacencies present on this leaf only
};

enum class ElementaryShape : std::uint8_t {
  kCherry,            // (l0, l1)
  kThreeCherryComb,   // ((l0, l1), (l2, l3)), (l4, l5)
};

struct ElementaryType {
  std::string name;
  std::string label;  // left-leaf pattern of the outermost cherry
  ElementaryShape shape;
  std::size_t multiplicity;
  std::vector<GadgetLeaf> leaves;
  // Scenario count of one copy for each clause assignment, rows in the
  // order of kTruthRows.
  std::array<std::uint32_t, 8> expected;
};

// Row order of the per-assignment count table.
inline constexpr std::array<std::string_view, 8> kTruthRows{"000", "100", "010", "110",
                                                             "001", "101", "011", "111"};

// The 14 elementary subtree types of a unit subtree, in comb order.
const std::vector<ElementaryType>& elementary_types();

// Depth-3 balanced tree that leaves the clause adjacencies ambiguous with a
// single scenario for every assignment.
const std::vector<std::array<std::uint8_t, 3>>& amending_leaves();

inline constexpr std::size_t kUnitLeaves = 248;
inline constexpr std::size_t kUnitExtras = 148;
inline constexpr std::size_t kUnitElementary = 76;
inline constexpr std::size_t kAmendingLeaves = 8;

// Per-unit scenario counts: 2^136 3^76 for an unsatisfied clause and
// 2^156 3^64 for a satisfied one; their ratio is 2^20 / 3^12.
BigCount unit_count_unsatisfied();
BigCount unit_count_satisfied();

// Number of unit-subtree copies per clause:
//   ceil((k ln((n-3)!) + n ln 2) / ln(2^20 / 3^12)) + 1
// evaluated exactly as the least m with 2^(20m) >= ((n-3)!)^k 2^n 3^(12m).
std::size_t blowup_repeats(std::size_t num_vars, std::size_t num_clauses);

struct GadgetSizeBounds {
  std::size_t leaves;
  std::size_t extremities;
};

// Upper bounds on T_phi's size for k clauses, taking n <= 3k.
GadgetSizeBounds gadget_size_bounds(std::size_t num_clauses);

struct ClauseStats {
  std::size_t repeats = 0;
  std::size_t leaves = 0;
  std::size_t extra_adjacencies = 0;
};

// The hardness instance for a formula. Logical adjacency i is (b<i>_h, b<i>_t);
// extras are (x_c<j>_u<r>_e<m>_h, ..._t). All adjacencies are pairwise
// extremity-disjoint, so leaf genomes are materialised only on request.
struct GadgetTree {
  std::size_t num_vars = 0;
  PhyloTree tree;
  std::vector<Adjacency> logical_adjacencies;  // variable i at index i-1
  std::vector<Adjacency> extra_adjacencies;
  std::vector<int> extra_leaf;                      // leaf carrying each extra
  std::vector<std::vector<std::uint8_t>> logical;   // per node; filled at leaves
  std::vector<std::vector<std::size_t>> leaf_extras;  // per node; extras present
  std::vector<ClauseStats> clause_stats;

  std::size_t leaf_count() const;
  std::size_t extremity_count() const { return 2 * (logical_adjacencies.size() + extra_adjacencies.size()); }

  std::set<std::string> genes() const;
  NodeAdjacencies leaf_adjacencies() const;
  Genome leaf_genome(int leaf) const;
  Presence logical_presence(std::size_t var_index) const;
  Presence extra_presence(std::size_t extra_index) const;
};

GadgetTree build_gadget(const CnfFormula& phi);

// One elementary subtree on its own, over adjacencies b1, b2, b3 and its
// extras. Root labels for the extras are absent, as everywhere else in T_phi.
struct ElementaryInstance {
  PhyloTree tree;
  NodeAdjacencies leaves;
  std::array<Adjacency, 3> logical;
};

ElementaryInstance build_elementary(const ElementaryType& type);

// Fitch assignment with clause row `row` ("010", ...) at the root.
NodeAdjacencies elementary_assignment(const ElementaryInstance& inst, std::string_view row);

struct Table1Cell {
  std::size_t type;
  std::string row;
  BigCount expected;
  BigCount got;
  bool root_ambiguous;
  bool ok() const { return root_ambiguous && expected == got; }
};

struct Table1Report {
  std::vector<Table1Cell> cells;  // type-major
  std::vector<BigCount> row_products;  // per kTruthRows entry, multiplicities applied
  bool products_ok = false;
  bool gamma_ok = false;
  bool ok() const;
};

// Recomputes every (elementary type x assignment) count through the generic
// tree scenario counter and checks it against the stored table and the row
// products.
Table1Report verify_table1(Execution exec = Execution::kParallel);

// Scenario count of the Fitch solution with truth assignment `assignment` at
// the root. Uses the fact that every adjacency is extremity-disjoint from all
// others, so an edge with d changes carries d! scenarios.
BigCount gadget_assignment_count(const GadgetTree& g, std::uint64_t assignment);

struct MajorityResult {
  BigCount sat_total;
  BigCount unsat_total;
  std::vector<BigCount> per_assignment;  // aligned with the input list
};

// Sums gadget_assignment_count over `assignments`, split by satisfaction.
// Guard: at most 10 variables.
MajorityResult majority_check(const CnfFormula& phi, const std::vector<std::uint64_t>& assignments,
                              Execution exec = Execution::kParallel);
MajorityResult majority_check(const GadgetTree& g, const CnfFormula& phi,
                              const std::vector<std::uint64_t>& assignments,
                              Execution exec = Execution::kParallel);

// All 2^n assignments.
std::vector<std::uint64_t> all_assignments(std::size_t num_vars);

}  // namespace scj
