#include "scj/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "scj/error.hpp"
#include "scj/pairwise.hpp"

namespace scj::oracle {

BigCount brute_alternating(std::size_t n) {
  if (n > 10) throw GuardError("brute_alternating is limited to n <= 10");
  std::vector<int> c(n);
  std::iota(c.begin(), c.end(), 1);
  BigCount count = 0;
  do {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n && ok; ++j) ok = (j % 2 == 0) ? c[j] < c[j + 1] : c[j] > c[j + 1];
    if (ok) ++count;
  } while (std::next_permutation(c.begin(), c.end()));
  return count;
}

namespace {

// Extremity e_j of the chain 1_t 1_h 2_t 2_h ...
Extremity chain(std::size_t j) {
  return Extremity(std::to_string(j / 2 + 1), j % 2 == 0 ? End::kTail : End::kHead);
}

}  // namespace

std::pair<Genome, Genome> synthetic_component(ComponentKind kind, std::size_t i) {
  // The component walks e_0 .. e_{m-1}; consecutive extremities alternate
  // between sharing a G1 adjacency and a G2 adjacency.
  std::size_t m = 0;
  std::size_t g1_offset = 0;  // first index paired in G1
  bool close = false;
  switch (kind) {
    case ComponentKind::kWShaped:
      m = 2 * i + 2;
      g1_offset = 1;
      break;
    case ComponentKind::kMShaped:
      if (i == 0) throw Error("an M-shaped component has at least one G1 adjacency");
      m = 2 * i;
      break;
    case ComponentKind::kOddPath:
      m = 2 * i + 1;
      break;
    case ComponentKind::kCycle:
      if (i == 0) throw Error("a cycle has at least one G1 adjacency");
      m = 2 * i;
      close = true;
      break;
  }
  AdjacencySet a1, a2;
  for (std::size_t j = g1_offset; j + 1 < m; j += 2) a1.insert(Adjacency(chain(j), chain(j + 1)));
  for (std::size_t j = 1 - g1_offset; j + 1 < m; j += 2) a2.insert(Adjacency(chain(j), chain(j + 1)));
  if (close && m > 2) a2.insert(Adjacency(chain(m - 1), chain(0)));
  if (close && m == 2) a2.insert(Adjacency(chain(0), chain(1)));
  std::set<std::string> genes;
  for (std::size_t j = 0; j < m; ++j) genes.insert(std::string(chain(j).gene()));
  return {Genome::make("G1", genes, a1), Genome::make("G2", genes, a2)};
}

BigCount brute_component_count(ComponentKind kind, std::size_t i) {
  const auto [g1, g2] = synthetic_component(kind, i);
  if (scj_distance(g1, g2) > 9) throw GuardError("brute_component_count is limited to 9 operations");
  return BigCount(enumerate_scenarios(g1, g2).size());
}

Genome random_genome(std::size_t genes, Rng& rng, double adjacency_rate, std::string name) {
  std::vector<Extremity> ext;
  std::set<std::string> labels;
  for (std::size_t g = 1; g <= genes; ++g) {
    labels.insert(std::to_string(g));
    ext.emplace_back(std::to_string(g), End::kTail);
    ext.emplace_back(std::to_string(g), End::kHead);
  }
  for (std::size_t j = ext.size(); j > 1; --j) std::swap(ext[j - 1], ext[rng.below(j)]);
  const auto threshold = static_cast<std::uint64_t>(adjacency_rate * 1'000'000.0);
  AdjacencySet adj;
  for (std::size_t j = 0; j + 1 < ext.size(); j += 2) {
    if (rng.below(1'000'000) < threshold) adj.insert(Adjacency(ext[j], ext[j + 1]));
  }
  return Genome::make(std::move(name), labels, adj);
}

PhyloTree random_tree(std::size_t leaves, Rng& rng) {
  if (leaves == 0) throw Error("a tree needs at least one leaf");
  PhyloTree t;
  std::vector<int> roots;
  for (std::size_t k = 1; k <= leaves; ++k) roots.push_back(t.add_leaf("L" + std::to_string(k)));
  while (roots.size() > 1) {
    const std::size_t a = rng.below(roots.size());
    const int left = roots[a];
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(a));
    const std::size_t b = rng.below(roots.size());
    const int right = roots[b];
    roots[b] = t.join(left, right);
  }
  return t;
}

}  // namespace scj::oracle
