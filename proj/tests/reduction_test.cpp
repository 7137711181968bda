#include "scj/reduction.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "scj/error.hpp"
#include "scj/pairwise.hpp"
#include "test_support.hpp"

namespace scj {
namespace {

const CnfFormula& single_clause() {
  static const CnfFormula phi = parse_cnf("p cnf 3 1\n1 2 3 0\n");
  return phi;
}

const GadgetTree& single_gadget() {
  static const GadgetTree g = build_gadget(single_clause());
  return g;
}

TEST(Cnf, ParsesDimacs) {
  const CnfFormula phi = parse_cnf("c comment\np cnf 3 1\n1 2 3 0\n");
  EXPECT_EQ(phi.num_vars, 3U);
  ASSERT_EQ(phi.clauses.size(), 1U);
  EXPECT_EQ(phi.clauses[0], (std::array<int, 3>{1, 2, 3}));
  const CnfFormula split = parse_cnf("p cnf 4 2\n1 -2\n 3 0 -1 2 4 0\n");
  EXPECT_EQ(split.clauses[1], (std::array<int, 3>{-1, 2, 4}));
}

TEST(Cnf, RejectsInvalidInput) {
  for (const char* bad : {"p cnf 3 1\n1 2 0\n", "p cnf 3 1\n1 -1 2 0\n", "p cnf 3 1\n1 2 4 0\n", "p cnf 3 2\n1 2 3 0\n",
                          "1 2 3 0\n", "p cnf 3 1\n1 2 3\n", "p cnf 3 0\n", "p cnf 3 1\n1 2 x 0\n",
                          "p cnf 3 1\np cnf 3 1\n1 2 3 0\n", "p dnf 3 1\n1 2 3 0\n", "p cnf 3 1\n1 2 3 4 0\n"}) {
    EXPECT_THROW(parse_cnf(bad), ParseError) << bad;
  }
}

TEST(Cnf, Satisfaction) {
  const CnfFormula phi = parse_cnf("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  EXPECT_TRUE(phi.satisfied(0b000));
  EXPECT_FALSE(phi.satisfied(0b010));
  EXPECT_FALSE(phi.satisfied(0b101));
  EXPECT_TRUE(phi.satisfied(0b111));
}

TEST(Elementary, CatalogueShape) {
  const auto& types = elementary_types();
  ASSERT_EQ(types.size(), 14U);
  std::vector<std::size_t> mult;
  std::size_t leaves = 0, extras = 0, copies = 0;
  for (const auto& t : types) {
    mult.push_back(t.multiplicity);
    copies += t.multiplicity;
    leaves += t.multiplicity * t.leaves.size();
    for (const auto& l : t.leaves) extras += t.multiplicity * l.extras;
  }
  EXPECT_EQ(mult, (std::vector<std::size_t>{1, 1, 1, 1, 3, 3, 3, 3, 5, 5, 5, 15, 15, 15}));
  EXPECT_EQ(copies, kUnitElementary);
  EXPECT_EQ(leaves, kUnitLeaves);
  EXPECT_EQ(extras, kUnitExtras);
}

TEST(Elementary, TableCells) {
  const auto& types = elementary_types();
  auto cell = [&](std::size_t type, std::string_view row) {
    const auto inst = build_elementary(types[type]);
    return count_scenarios_for_assignment(inst.tree, elementary_assignment(inst, row));
  };
  EXPECT_EQ(types[0].label, "011");
  EXPECT_EQ(cell(0, "100"), 24);
  EXPECT_EQ(types[7].label, "000");
  EXPECT_EQ(cell(7, "010"), 2);
  EXPECT_EQ(cell(7, "000"), 6);
}

TEST(Elementary, LogicalAdjacenciesAreAmbiguousAtEachRoot) {
  for (const auto& type : elementary_types()) {
    const auto inst = build_elementary(type);
    for (const auto& alpha : inst.logical) {
      const auto b = fitch_bottom_up(inst.tree, presence_of(inst.tree, inst.leaves, alpha));
      EXPECT_EQ(b[static_cast<std::size_t>(inst.tree.root())], StateSet::kAmbiguous) << type.name << " " << type.label;
    }
  }
}

TEST(Table1, ReproducedExactly) {
  const Table1Report r = verify_table1();
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.products_ok);
  EXPECT_TRUE(r.gamma_ok);
  EXPECT_EQ(r.cells.size(), 14U * 8U);
  EXPECT_EQ(r.row_products[0], power(2, 136) * power(3, 76));
  for (std::size_t row = 1; row < 8; ++row) EXPECT_EQ(r.row_products[row], power(2, 156) * power(3, 64));
}

TEST(Table1, SerialMatchesParallel) {
  const Table1Report s = verify_table1(Execution::kSerial);
  const Table1Report p = verify_table1(Execution::kParallel);
  ASSERT_EQ(s.cells.size(), p.cells.size());
  for (std::size_t k = 0; k < s.cells.size(); ++k) EXPECT_EQ(s.cells[k].got, p.cells[k].got);
}

TEST(Table1, GammaRatio) {
  EXPECT_EQ(unit_count_satisfied() * power(3, 12), unit_count_unsatisfied() * power(2, 20));
}

TEST(Blowup, RepeatCounts) {
  EXPECT_EQ(blowup_repeats(3, 1), 5U);
  // (k ln((n-3)!) + n ln 2) / ln(2^20/3^12), evaluated in floating point away
  // from integer boundaries.
  const double ln_gamma = 20 * std::log(2.0) - 12 * std::log(3.0);
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t k = 1; k <= 6; ++k) {
      const double x = (static_cast<double>(k) * std::lgamma(static_cast<double>(n - 2)) + n * std::log(2.0)) / ln_gamma;
      if (std::abs(x - std::round(x)) < 1e-9) continue;
      EXPECT_EQ(blowup_repeats(n, k), static_cast<std::size_t>(std::ceil(x)) + 1) << n << " " << k;
    }
  }
  EXPECT_THROW(blowup_repeats(2, 1), Error);
}

TEST(Gadget, SingleClauseSize) {
  const GadgetTree& g = single_gadget();
  ASSERT_EQ(g.clause_stats.size(), 1U);
  EXPECT_EQ(g.clause_stats[0].repeats, 5U);
  EXPECT_EQ(g.clause_stats[0].leaves, 1248U);
  EXPECT_EQ(g.leaf_count(), 1248U);
  EXPECT_EQ(g.extra_adjacencies.size(), 5 * kUnitExtras);
  const auto bounds = gadget_size_bounds(1);
  EXPECT_LE(g.leaf_count(), bounds.leaves);
  EXPECT_LE(g.extremity_count(), bounds.extremities);
  EXPECT_NO_THROW(g.tree.validate());
}

TEST(Gadget, SizeWithinBoundsForLargerFormulas) {
  const CnfFormula phi = parse_cnf("p cnf 6 2\n1 -2 3 0\n-4 5 6 0\n");
  const GadgetTree g = build_gadget(phi);
  const auto bounds = gadget_size_bounds(2);
  EXPECT_LE(g.leaf_count(), bounds.leaves);
  EXPECT_LE(g.extremity_count(), bounds.extremities);
  EXPECT_EQ(g.clause_stats[0].repeats, blowup_repeats(6, 2));
}

TEST(Gadget, AdjacenciesAreIndependentAndExtrasUnique) {
  const GadgetTree& g = single_gadget();
  AdjacencySet all(g.logical_adjacencies.begin(), g.logical_adjacencies.end());
  all.insert(g.extra_adjacencies.begin(), g.extra_adjacencies.end());
  EXPECT_TRUE(is_valid_assignment(all));
  EXPECT_EQ(all.size(), g.logical_adjacencies.size() + g.extra_adjacencies.size());
  std::vector<int> holders(g.extra_adjacencies.size(), 0);
  for (int leaf : g.tree.leaves()) {
    for (auto e : g.leaf_extras[static_cast<std::size_t>(leaf)]) ++holders[e];
  }
  for (int n : holders) EXPECT_EQ(n, 1);
  const Genome sample = g.leaf_genome(g.tree.leaves().front());
  EXPECT_EQ(sample.genes().size(), all.size());
}

TEST(Gadget, LogicalAdjacenciesAreAmbiguousAtTheRoot) {
  for (const char* text : {"p cnf 3 1\n1 2 3 0\n", "p cnf 5 2\n-1 2 3 0\n3 -4 5 0\n"}) {
    const GadgetTree g = build_gadget(parse_cnf(text));
    for (std::size_t i = 0; i < g.num_vars; ++i) {
      const auto b = fitch_bottom_up(g.tree, g.logical_presence(i));
      EXPECT_EQ(b[static_cast<std::size_t>(g.tree.root())], StateSet::kAmbiguous);
    }
  }
}

TEST(Gadget, ExtrasScoreOneOnTheirLeafEdge) {
  const GadgetTree& g = single_gadget();
  for (std::size_t e = 0; e < g.extra_adjacencies.size(); ++e) {
    const Presence p = g.extra_presence(e);
    EXPECT_EQ(sankoff(g.tree, p).minimum(g.tree.root()), Cost::finite(1));
    const auto b = fitch_bottom_up(g.tree, p);
    const Presence f = fitch_top_down(g.tree, b, false);
    for (std::size_t v = 0; v < g.tree.size(); ++v) {
      const int parent = g.tree.parent(static_cast<int>(v));
      if (parent == PhyloTree::kNone) continue;
      const bool changed = f[v] != f[static_cast<std::size_t>(parent)];
      EXPECT_EQ(changed, static_cast<int>(v) == g.extra_leaf[e]);
    }
  }
}

TEST(Gadget, OnlyFitchLabelingsAreOptimal) {
  // Per adjacency, the Sankoff-optimal labelings are exactly the Fitch ones.
  const GadgetTree& g = single_gadget();
  auto check = [&](const Presence& p) {
    const auto b = fitch_bottom_up(g.tree, p);
    const BigCount fitch = b[static_cast<std::size_t>(g.tree.root())] == StateSet::kAmbiguous ? 2 : 1;
    EXPECT_EQ(count_optimal_labelings(g.tree, sankoff(g.tree, p)), fitch);
  };
  for (std::size_t i = 0; i < g.num_vars; ++i) check(g.logical_presence(i));
  for (std::size_t e = 0; e < g.extra_adjacencies.size(); ++e) check(g.extra_presence(e));
}

TEST(Gadget, FastCountMatchesGenericCount) {
  const GadgetTree& g = single_gadget();
  const NodeAdjacencies leaves = g.leaf_adjacencies();
  for (std::uint64_t a = 0; a < 8; ++a) {
    const auto labels = fitch_assignment(g.tree, leaves, [&](const Adjacency& alpha) {
      for (std::size_t i = 0; i < g.num_vars; ++i) {
        if (alpha == g.logical_adjacencies[i]) return ((a >> i) & 1U) != 0;
      }
      return false;
    });
    EXPECT_EQ(gadget_assignment_count(g, a), count_scenarios_for_assignment(g.tree, labels)) << a;
  }
}

TEST(Gadget, CountIsAProductOfUnitCounts) {
  // Outside the unit subtrees every edge carries at most one change.
  for (const char* text : {"p cnf 3 1\n1 2 3 0\n", "p cnf 3 1\n-1 2 -3 0\n"}) {
    const CnfFormula phi = parse_cnf(text);
    const GadgetTree g = build_gadget(phi);
    for (std::uint64_t a = 0; a < 8; ++a) {
      const BigCount unit = phi.satisfied(a) ? unit_count_satisfied() : unit_count_unsatisfied();
      EXPECT_EQ(gadget_assignment_count(g, a), power(unit, 5)) << text << a;
    }
  }
}

TEST(Majority, SatisfiableSingleClause) {
  const MajorityResult m = majority_check(single_clause(), all_assignments(3));
  EXPECT_GT(m.sat_total, m.unsat_total);
  EXPECT_EQ(m.sat_total, 7 * power(unit_count_satisfied(), 5));
  EXPECT_EQ(m.unsat_total, power(unit_count_unsatisfied(), 5));
}

TEST(Majority, UnsatisfiableFormulaHasNoSatisfiedMass) {
  const CnfFormula phi = read_cnf_file(testing::data("unsat_k8.cnf"));
  for (std::uint64_t a = 0; a < 8; ++a) EXPECT_FALSE(phi.satisfied(a));
  const MajorityResult m = majority_check(phi, all_assignments(3));
  EXPECT_EQ(m.sat_total, 0);
  EXPECT_GT(m.unsat_total, 0);
}

TEST(Majority, OnlySatisfyingAssignmentsGiveNoUnsatisfiedMass) {
  const CnfFormula phi = read_cnf_file(testing::data("sat_k2.cnf"));
  std::vector<std::uint64_t> satisfying;
  for (auto a : all_assignments(phi.num_vars)) {
    if (phi.satisfied(a)) satisfying.push_back(a);
  }
  const MajorityResult m = majority_check(phi, satisfying);
  EXPECT_EQ(m.unsat_total, 0);
  EXPECT_GT(m.sat_total, 0);
}

TEST(Majority, SerialMatchesParallel) {
  const CnfFormula phi = read_cnf_file(testing::data("sat_k2.cnf"));
  const GadgetTree g = build_gadget(phi);
  const auto s = majority_check(g, phi, all_assignments(phi.num_vars), Execution::kSerial);
  const auto p = majority_check(g, phi, all_assignments(phi.num_vars), Execution::kParallel);
  EXPECT_EQ(s.per_assignment, p.per_assignment);
  EXPECT_EQ(s.sat_total, p.sat_total);
}

TEST(Majority, GuardOnVariableCount) {
  const CnfFormula phi = parse_cnf("p cnf 11 1\n1 2 3 0\n");
  EXPECT_THROW(majority_check(phi, {0}), GuardError);
}

}  // namespace
}  // namespace scj
