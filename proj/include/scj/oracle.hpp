#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "scj/adjacency_graph.hpp"
#include "scj/bigcount.hpp"
#include "scj/genome.hpp"
#include "scj/random.hpp"
#include "scj/tree.hpp"

namespace scj::oracle {

// Slow references for the tests and `scj selftest`. None of them reuses the
// counting recursions.

// Permutations of 1..n with c1 < c2 > c3 < ..., by listing all n! of them.
// Guard: n <= 10.
BigCount brute_alternating(std::size_t n);

// A genome pair whose adjacency graph is one component of `kind` with `i` G1
// adjacencies, plus possibly one trivial telomere path. Throws for the empty
// shapes M(0) and C(0).
std::pair<Genome, Genome> synthetic_component(ComponentKind kind, std::size_t i);

// Number of scenarios of synthetic_component(kind, i), by enumerating them.
// Guard: at most 9 operations.
BigCount brute_component_count(ComponentKind kind, std::size_t i);

// Uniformly random matching on the extremities of genes 1..genes: each
// extremity pair from a shuffled order becomes an adjacency with probability
// `adjacency_rate`.
Genome random_genome(std::size_t genes, Rng& rng, double adjacency_rate = 0.7, std::string name = "random");

// Random rooted binary tree on leaves L1..Ln, built by joining two random
// roots until one remains.
PhyloTree random_tree(std::size_t leaves, Rng& rng);

}  // namespace scj::oracle
