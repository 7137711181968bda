#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace scj {

enum class End : std::uint8_t { kHead, kTail };

// One end of a gene. The canonical text is `<gene>_h` or `<gene>_t`; ordering
// is lexicographic on that text.
class Extremity {
 public:
  Extremity(std::string_view gene, End end);

  // Parses `<gene>_h` / `<gene>_t`. Throws scj::Error on malformed text.
  static Extremity parse(std::string_view text);

  std::string_view gene() const { return std::string_view(text_).substr(0, text_.size() - 2); }
  End end() const { return text_.back() == 'h' ? End::kHead : End::kTail; }
  const std::string& text() const { return text_; }
  Extremity other_end() const { return Extremity(gene(), end() == End::kHead ? End::kTail : End::kHead); }

  friend bool operator==(const Extremity&, const Extremity&) = default;
  friend std::strong_ordering operator<=>(const Extremity& a, const Extremity& b) { return a.text_ <=> b.text_; }

 private:
  explicit Extremity(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const Extremity& x);

// Unordered pair of distinct extremities, stored with first() < second().
class Adjacency {
 public:
  Adjacency(Extremity a, Extremity b);

  const Extremity& first() const { return first_; }
  const Extremity& second() const { return second_; }
  bool contains(const Extremity& x) const { return first_ == x || second_ == x; }
  // The extremity paired with `x`; `x` must be a member.
  const Extremity& partner(const Extremity& x) const { return x == first_ ? second_ : first_; }
  bool shares_extremity(const Adjacency& o) const { return contains(o.first_) || contains(o.second_); }

  std::string text() const { return first_.text() + " " + second_.text(); }

  friend bool operator==(const Adjacency&, const Adjacency&) = default;
  friend auto operator<=>(const Adjacency&, const Adjacency&) = default;

 private:
  Extremity first_;
  Extremity second_;
};

std::ostream& operator<<(std::ostream& os, const Adjacency& a);

using AdjacencySet = std::set<Adjacency>;
using ExtremitySet = std::set<Extremity>;

// True iff no two adjacencies share an extremity.
bool is_valid_assignment(const AdjacencySet& adjacencies);

// A single cut or join.
struct ScjOp {
  enum class Kind : std::uint8_t { kCut, kJoin };

  Kind kind;
  Adjacency adjacency;

  static ScjOp cut(Adjacency a) { return {Kind::kCut, std::move(a)}; }
  static ScjOp join(Adjacency a) { return {Kind::kJoin, std::move(a)}; }

  // `cut a b` / `join a b`
  std::string text() const;

  friend bool operator==(const ScjOp&, const ScjOp&) = default;
  friend auto operator<=>(const ScjOp&, const ScjOp&) = default;
};

std::ostream& operator<<(std::ostream& os, const ScjOp& op);

// A genome as its adjacency/telomere list. Every extremity of every gene occurs
// exactly once, either inside one adjacency or as a telomere. Immutable once
// built.
class Genome {
 public:
  // Builds a genome over `genes`. Extremities not covered by an adjacency and
  // not listed in `telomeres` become telomeres. Throws scj::Error if an
  // extremity is used twice or belongs to a gene outside `genes`.
  static Genome make(std::string name, std::set<std::string> genes, AdjacencySet adjacencies,
                     ExtremitySet telomeres = {});

  // Same gene set, different adjacencies. Telomeres are recomputed.
  static Genome with_adjacencies(std::string name, const std::set<std::string>& genes,
                                 const AdjacencySet& adjacencies);

  const std::string& name() const { return name_; }
  const std::set<std::string>& genes() const { return genes_; }
  const AdjacencySet& adjacencies() const { return adjacencies_; }
  const ExtremitySet& telomeres() const { return telomeres_; }

  bool is_telomere(const Extremity& x) const { return telomeres_.contains(x); }
  bool has_adjacency(const Adjacency& a) const { return adjacencies_.contains(a); }
  // Every extremity of every gene, sorted.
  ExtremitySet extremities() const;

  Genome renamed(std::string name) const;

  // Structural equality; the name is ignored.
  bool same_content(const Genome& o) const {
    return genes_ == o.genes_ && adjacencies_ == o.adjacencies_ && telomeres_ == o.telomeres_;
  }
  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  Genome() = default;
  std::string name_;
  std::set<std::string> genes_;
  AdjacencySet adjacencies_;
  ExtremitySet telomeres_;
};

// Reads the line-oriented `.scjg` format:
//
//   genome <name>
//   adjacency <ext> <ext>
//   telomere <ext>
//   genes <label> ...        (optional; declares genes with no listed extremity)
//
// `#` starts a comment. Throws ParseError with line and column.
Genome parse_genome(std::string_view text);

// Canonical text: header, adjacencies sorted, then telomeres sorted.
std::string print_genome(const Genome& g);

Genome read_genome_file(const std::string& path);

// Applies one SCJ operation. Throws scj::Error("illegal SCJ operation ...")
// when a cut targets a missing adjacency or a join targets non-telomeres.
Genome apply_scj(const Genome& g, const ScjOp& op);

// Throws scj::Error unless both genomes have the same gene set.
void require_same_genes(const Genome& a, const Genome& b);

}  // namespace scj
