#include "scj/genome.hpp"

#include <gtest/gtest.h>

#include "scj/error.hpp"
#include "test_support.hpp"

namespace scj {
namespace {

Extremity x(std::string_view s) { return Extremity::parse(s); }
Adjacency adj(std::string_view a, std::string_view b) { return Adjacency(x(a), x(b)); }

TEST(Extremity, ParsesHeadAndTail) {
  EXPECT_EQ(x("12_h").gene(), "12");
  EXPECT_EQ(x("12_h").end(), End::kHead);
  EXPECT_EQ(x("a_b_t").gene(), "a_b");
  EXPECT_EQ(x("a_b_t").end(), End::kTail);
  EXPECT_EQ(x("3_t").other_end(), x("3_h"));
}

TEST(Extremity, RejectsMalformedText) {
  for (const char* bad : {"", "_h", "1", "1_x", "1h", "1 _h", "#_t"}) {
    EXPECT_THROW(x(bad), Error) << bad;
  }
}

TEST(Adjacency, IsUnordered) {
  EXPECT_EQ(adj("2_t", "1_h"), adj("1_h", "2_t"));
  EXPECT_EQ(adj("2_t", "1_h").first(), x("1_h"));
  EXPECT_THROW(adj("1_h", "1_h"), Error);
  EXPECT_TRUE(adj("1_h", "2_t").shares_extremity(adj("2_t", "3_h")));
  EXPECT_FALSE(adj("1_h", "2_t").shares_extremity(adj("2_h", "3_h")));
}

TEST(Genome, ParsesTheTextFormat) {
  const Genome g = parse_genome(
      "# linear chromosome\n"
      "genome G\n"
      "adjacency 1_h 2_t   # inline comment\n"
      "telomere 1_t\n"
      "telomere 2_h\n");
  EXPECT_EQ(g.name(), "G");
  EXPECT_EQ(g.genes(), (std::set<std::string>{"1", "2"}));
  EXPECT_TRUE(g.has_adjacency(adj("2_t", "1_h")));
  EXPECT_TRUE(g.is_telomere(x("1_t")));
  EXPECT_EQ(g.extremities().size(), 4U);
}

TEST(Genome, DeclaredGenesBecomeTelomeres) {
  const Genome g = parse_genome("genome G\ngenes 1 2 3\nadjacency 1_h 2_t\n");
  EXPECT_EQ(g.telomeres().size(), 4U);
  EXPECT_TRUE(g.is_telomere(x("3_h")));
}

TEST(Genome, ReportsErrorPositions) {
  auto position = [](const std::string& text) {
    try {
      parse_genome(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  EXPECT_EQ(position("genome G\nadjacency 1_h 2_t\ntelomere 1_h\n"), std::make_pair(std::size_t{3}, std::size_t{10}));
  EXPECT_EQ(position("genome G\nadjacency 1_h 1_h\n").first, 2U);
  EXPECT_EQ(position("genome G\nbogus 1_h\n").first, 2U);
  EXPECT_EQ(position("genome G\nadjacency 1_h\n").first, 2U);
  EXPECT_EQ(position("adjacency 1_h 2_t\n").first, 1U);
  EXPECT_EQ(position("genome G\ngenome H\n").first, 2U);
  EXPECT_NE(position("").first, 0U);
}

TEST(Genome, PrintIsCanonicalAndRoundTrips) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Genome g = oracle::random_genome(1 + trial % 7, rng, 0.6, "R");
    const std::string text = print_genome(g);
    const Genome back = parse_genome(text);
    EXPECT_TRUE(back.same_content(g));
    EXPECT_EQ(print_genome(back), text);
  }
}

TEST(Genome, MakeRejectsReusedOrForeignExtremities) {
  EXPECT_THROW(Genome::make("G", {"1", "2"}, {adj("1_h", "2_t"), adj("1_h", "2_h")}), Error);
  EXPECT_THROW(Genome::make("G", {"1"}, {adj("1_h", "2_t")}), Error);
  EXPECT_THROW(Genome::make("G", {"1", "2"}, {adj("1_h", "2_t")}, {x("1_h")}), Error);
}

TEST(Genome, ValidAssignment) {
  EXPECT_TRUE(is_valid_assignment({adj("1_h", "2_t"), adj("2_h", "3_t")}));
  EXPECT_FALSE(is_valid_assignment({adj("1_h", "2_t"), adj("2_t", "3_t")}));
}

TEST(ScjOp, CutAndJoinApply) {
  const Genome g = parse_genome("genome G\ngenes 1 2\nadjacency 1_h 2_t\n");
  const Genome cut = apply_scj(g, ScjOp::cut(adj("1_h", "2_t")));
  EXPECT_TRUE(cut.adjacencies().empty());
  EXPECT_EQ(cut.telomeres().size(), 4U);
  EXPECT_THROW(apply_scj(cut, ScjOp::cut(adj("1_h", "2_t"))), Error);
  EXPECT_THROW(apply_scj(g, ScjOp::join(adj("1_h", "2_h"))), Error);
  EXPECT_EQ(ScjOp::join(adj("2_t", "1_h")).text(), "join 1_h 2_t");
}

TEST(ScjOp, CutAndJoinAreInverse) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Genome g = oracle::random_genome(5, rng, 0.5);
    for (const auto& a : g.adjacencies()) {
      EXPECT_TRUE(apply_scj(apply_scj(g, ScjOp::cut(a)), ScjOp::join(a)).same_content(g));
    }
    const auto& tel = g.telomeres();
    if (tel.size() >= 2) {
      const Adjacency a(*tel.begin(), *std::next(tel.begin()));
      EXPECT_TRUE(apply_scj(apply_scj(g, ScjOp::join(a)), ScjOp::cut(a)).same_content(g));
    }
  }
}

TEST(Genome, GeneSetMismatchIsAnError) {
  const Genome a = parse_genome("genome A\ngenes 1 2\n");
  const Genome b = parse_genome("genome B\ngenes 1 3\n");
  EXPECT_THROW(require_same_genes(a, b), Error);
}

TEST(Genome, MissingFileIsAnError) {
  EXPECT_THROW(read_genome_file(testing::data("does_not_exist.scjg")), Error);
  EXPECT_NO_THROW(read_genome_file(testing::data("fixture_g1.scjg")));
}

}  // namespace
}  // namespace scj
