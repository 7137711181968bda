#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scj/genome.hpp"

namespace scj {

enum class ComponentKind : std::uint8_t { kCycle, kOddPath, kWShaped, kMShaped };

std::string_view to_string(ComponentKind kind);

enum class Side : std::uint8_t { kFirst, kSecond };

// A vertex of the adjacency graph: an adjacency or a telomere of one genome.
struct GraphVertex {
  Side side;
  Extremity a;
  std::optional<Extremity> b;  // empty for telomeres

  bool is_telomere() const { return !b.has_value(); }
  Adjacency adjacency() const { return Adjacency(a, *b); }
};

// One connected component of the adjacency graph of (G1, G2).
//
// `walk` lists the vertices in traversal order. Paths start at the endpoint
// whose telomere extremity is lexicographically smaller; cycles start at the
// G1 adjacency holding the smallest extremity and leave it through that
// extremity. The adjacency and telomere lists follow the walk.
struct Component {
  ComponentKind kind;
  std::vector<Adjacency> g1_adjacencies;
  std::vector<Adjacency> g2_adjacencies;
  std::vector<Extremity> g1_telomeres;
  std::vector<Extremity> g2_telomeres;
  bool is_trivial = false;
  std::vector<GraphVertex> walk;

  // Size index used by the counting tables: number of G1 adjacencies.
  std::size_t size() const { return g1_adjacencies.size(); }
  // Operations needed to sort this component; zero when trivial.
  std::size_t ops() const { return is_trivial ? 0 : g1_adjacencies.size() + g2_adjacencies.size(); }
};

struct Decomposition {
  std::vector<Component> components;
  std::vector<std::size_t> scj_ops_per_component;

  std::size_t total_ops() const;
  std::size_t count(ComponentKind kind, bool include_trivial = false) const;
};

// Full adjacency graph of two genomes over the same gene set, trivial
// components included. Components are ordered by their smallest extremity.
// Throws scj::Error on a gene-set mismatch.
Decomposition build_adjacency_graph(const Genome& g1, const Genome& g2);

// Non-trivial components only, built from the symmetric difference of two
// valid adjacency sets. Extremities outside the difference cannot take part
// in a non-trivial component, so gene sets are not needed.
Decomposition decompose_difference(const AdjacencySet& pi1, const AdjacencySet& pi2);

}  // namespace scj
