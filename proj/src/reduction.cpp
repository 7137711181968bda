#include "scj/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "scj/error.hpp"
#include "scj/pairwise.hpp"

namespace scj {

bool CnfFormula::clause_satisfied(std::size_t clause, std::uint64_t assignment) const {
  for (int lit : clauses.at(clause)) {
    const auto var = static_cast<std::uint64_t>(lit > 0 ? lit : -lit);
    const bool value = ((assignment >> (var - 1)) & 1U) != 0;
    if (value == (lit > 0)) return true;
  }
  return false;
}

bool CnfFormula::satisfied(std::uint64_t assignment) const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (!clause_satisfied(c, assignment)) return false;
  }
  return true;
}

CnfFormula parse_cnf(std::string_view text) {
  CnfFormula phi;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::size_t clause_line = 0, clause_column = 0;

  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size() || line[i] == 'c') continue;
    if (line[i] == '%') break;
    if (line[i] == 'p') {
      if (have_header) throw ParseError(line_no, i + 1, "duplicate problem line");
      std::istringstream in{std::string(line.substr(i))};
      std::string p, fmt;
      long long n = -1, k = -1;
      if (!(in >> p >> fmt >> n >> k) || p != "p" || fmt != "cnf" || n < 0 || k < 0) {
        throw ParseError(line_no, i + 1, "expected 'p cnf <variables> <clauses>'");
      }
      std::string extra;
      if (in >> extra) throw ParseError(line_no, i + 1, "trailing text on problem line");
      phi.num_vars = static_cast<std::size_t>(n);
      declared_clauses = static_cast<std::size_t>(k);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, i + 1, "clause before the 'p cnf' problem line");

    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::string_view token = line.substr(start, i - start);
      int lit = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), lit);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line_no, start + 1, "invalid literal '" + std::string(token) + "'");
      }
      if (current.empty()) {
        clause_line = line_no;
        clause_column = start + 1;
      }
      if (lit == 0) {
        const std::size_t index = phi.clauses.size() + 1;
        if (current.size() != 3) {
          throw ParseError(clause_line, clause_column,
                           "clause " + std::to_string(index) + " has width " + std::to_string(current.size()) +
                               " (expected 3)");
        }
        std::array<int, 3> clause{current[0], current[1], current[2]};
        std::array<int, 3> vars{};
        for (std::size_t k = 0; k < 3; ++k) vars[k] = std::abs(clause[k]);
        if (vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2]) {
          throw ParseError(clause_line, clause_column,
                           "clause " + std::to_string(index) + " repeats a variable");
        }
        phi.clauses.push_back(clause);
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::abs(lit)) > phi.num_vars) {
        throw ParseError(line_no, start + 1, "literal " + std::to_string(lit) + " exceeds the declared variable count");
      }
      current.push_back(lit);
    }
  }
  if (!have_header) throw ParseError(line_no, 0, "missing 'p cnf' problem line");
  if (!current.empty()) throw ParseError(clause_line, clause_column, "last clause is not terminated by 0");
  if (phi.clauses.size() != declared_clauses) {
    throw ParseError(line_no, 0,
                     "problem line declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(phi.clauses.size()));
  }
  if (phi.clauses.empty()) throw ParseError(line_no, 0, "formula has no clauses");
  return phi;
}

CnfFormula read_cnf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open CNF file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cnf(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

namespace {

std::array<std::uint8_t, 3> bits(std::string_view s) {
  return {static_cast<std::uint8_t>(s[0] == '1'), static_cast<std::uint8_t>(s[1] == '1'),
          static_cast<std::uint8_t>(s[2] == '1')};
}

ElementaryType cherry(std::string name, std::string_view left, std::string_view right, std::size_t left_extras,
                      std::size_t right_extras, std::size_t multiplicity, std::array<std::uint32_t, 8> expected) {
  return {std::move(name),
          std::string(left),
          ElementaryShape::kCherry,
          multiplicity,
          {{bits(left), left_extras}, {bits(right), right_extras}},
          expected};
}

// Three cherries joined by a comb. The outermost cherry carries `label` on
// its left leaf and 000 on its right leaf. Its zero position t is present on
// every leaf of the two inner cherries, which make the two other adjacencies
// ambiguous with at most one change per edge.
ElementaryType comb(std::string name, std::string_view label, std::size_t left_extras, std::size_t right_extras,
                    std::size_t multiplicity, std::array<std::uint32_t, 8> expected) {
  const auto l = bits(label);
  const std::size_t t = static_cast<std::size_t>(std::find(l.begin(), l.end(), 0) - l.begin());
  const std::size_t p = t == 0 ? 1 : 0;
  const std::size_t q = t == 2 ? 1 : 2;
  auto leaf = [&](std::uint8_t at_p, std::uint8_t at_q) {
    std::array<std::uint8_t, 3> b{};
    b[t] = 1;
    b[p] = at_p;
    b[q] = at_q;
    return GadgetLeaf{b, 0};
  };
  return {std::move(name),
          std::string(label),
          ElementaryShape::kThreeCherryComb,
          multiplicity,
          {leaf(0, 0), leaf(0, 1), leaf(1, 0), leaf(1, 1), {l, left_extras}, {{0, 0, 0}, right_extras}},
          expected};
}

}  // namespace

const std::vector<ElementaryType>& elementary_types() {
  // Rows: 000 100 010 110 001 101 011 111
  static const std::vector<ElementaryType> types{
      cherry("cherry_left_extra", "011", "100", 1, 0, 1, {6, 24, 4, 6, 4, 6, 6, 4}),
      cherry("cherry_left_extra", "101", "010", 1, 0, 1, {6, 4, 24, 6, 4, 6, 6, 4}),
      cherry("cherry_left_extra", "110", "001", 1, 0, 1, {6, 4, 4, 6, 24, 6, 6, 4}),
      cherry("cherry_left_extra", "000", "111", 1, 0, 1, {6, 4, 4, 6, 4, 6, 6, 24}),
      comb("comb_left_extra", "011", 1, 0, 3, {6, 6, 2, 2, 2, 2, 2, 2}),
      comb("comb_left_extra", "101", 1, 0, 3, {6, 2, 6, 2, 2, 2, 2, 2}),
      comb("comb_left_extra", "110", 1, 0, 3, {6, 2, 2, 2, 6, 2, 2, 2}),
      cherry("cherry_plain", "000", "111", 0, 0, 3, {6, 2, 2, 2, 2, 2, 2, 6}),
      comb("comb_one_two_extras", "011", 1, 2, 5, {12, 12, 12, 12, 12, 12, 24, 24}),
      comb("comb_one_two_extras", "101", 1, 2, 5, {12, 12, 12, 12, 12, 24, 12, 24}),
      comb("comb_one_two_extras", "110", 1, 2, 5, {12, 12, 12, 24, 12, 12, 12, 24}),
      cherry("cherry_both_extras", "011", "100", 1, 1, 15, {12, 24, 12, 12, 12, 12, 24, 12}),
      cherry("cherry_both_extras", "101", "010", 1, 1, 15, {12, 12, 24, 12, 12, 24, 12, 12}),
      cherry("cherry_both_extras", "110", "001", 1, 1, 15, {12, 12, 12, 24, 24, 12, 12, 12}),
  };
  return types;
}

const std::vector<std::array<std::uint8_t, 3>>& amending_leaves() {
  // ((000,001),(010,011)),((100,101),(110,111)): the first adjacency splits at
  // the root, the second at depth 1, the third inside each cherry.
  static const std::vector<std::array<std::uint8_t, 3>> leaves{
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  return leaves;
}

BigCount unit_count_unsatisfied() { return power(2, 136) * power(3, 76); }
BigCount unit_count_satisfied() { return power(2, 156) * power(3, 64); }

std::size_t blowup_repeats(std::size_t num_vars, std::size_t num_clauses) {
  if (num_vars < 3) throw Error("a 3CNF formula needs at least 3 variables");
  const BigCount target = power(factorial(num_vars - 3), num_clauses) * power(2, num_vars);
  // Least m with gamma^m >= target, gamma = 2^20 / 3^12.
  std::size_t m = 0;
  BigCount lhs = 1, rhs = target;
  while (lhs < rhs) {
    lhs <<= 20;
    rhs *= 531441;  // 3^12
    ++m;
  }
  return m + 1;
}

GadgetSizeBounds gadget_size_bounds(std::size_t num_clauses) {
  const std::size_t k = num_clauses;
  const std::size_t r = blowup_repeats(3 * k, k);
  return {(kUnitLeaves * r + kAmendingLeaves) * k, 6 * k + 2 * kUnitExtras * k * r};
}

namespace {

int build_elementary_into(PhyloTree& tree, const ElementaryType& type, const std::function<int(const GadgetLeaf&)>& leaf) {
  std::vector<int> l;
  for (const auto& pattern : type.leaves) l.push_back(leaf(pattern));
  if (type.shape == ElementaryShape::kCherry) return tree.join(l[0], l[1]);
  const int inner = tree.join(tree.join(l[0], l[1]), tree.join(l[2], l[3]));
  return tree.join(inner, tree.join(l[4], l[5]));
}

int comb_of(PhyloTree& tree, const std::vector<int>& parts) {
  int acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = tree.join(acc, parts[k]);
  return acc;
}

Adjacency circular(const std::string& gene) { return Adjacency(Extremity(gene, End::kHead), Extremity(gene, End::kTail)); }

}  // namespace

GadgetTree build_gadget(const CnfFormula& phi) {
  if (phi.clauses.empty()) throw Error("formula has no clauses");
  GadgetTree g;
  g.num_vars = phi.num_vars;
  for (std::size_t v = 1; v <= phi.num_vars; ++v) g.logical_adjacencies.push_back(circular("b" + std::to_string(v)));

  const std::size_t repeats = blowup_repeats(phi.num_vars, phi.clauses.size());
  auto grow = [&] {
    g.logical.resize(g.tree.size());
    g.leaf_extras.resize(g.tree.size());
  };

  std::vector<int> clause_roots;
  for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
    const auto& clause = phi.clauses[c];
    const std::string cname = "c" + std::to_string(c + 1);
    ClauseStats stats;
    stats.repeats = repeats;

    // Leaf pattern of the clause's three adjacencies, mapped to variables;
    // negated literals flip their column. `others` fills the rest.
    auto make_leaf = [&](const std::array<std::uint8_t, 3>& pattern, std::uint8_t others, const std::string& name) {
      const int v = g.tree.add_leaf(name);
      grow();
      auto& row = g.logical[static_cast<std::size_t>(v)];
      row.assign(phi.num_vars, others);
      for (std::size_t p = 0; p < 3; ++p) {
        const int lit = clause[p];
        row[static_cast<std::size_t>(std::abs(lit) - 1)] = static_cast<std::uint8_t>(pattern[p] ^ (lit < 0 ? 1 : 0));
      }
      ++stats.leaves;
      return v;
    };

    std::vector<int> units;
    for (std::size_t u = 0; u < repeats; ++u) {
      const std::string uname = cname + "_u" + std::to_string(u + 1);
      std::size_t leaf_index = 0, extra_index = 0;
      std::vector<int> elementary;
      for (const auto& type : elementary_types()) {
        for (std::size_t copy = 0; copy < type.multiplicity; ++copy) {
          elementary.push_back(build_elementary_into(g.tree, type, [&](const GadgetLeaf& pattern) {
            const int v = make_leaf(pattern.logical, 0, uname + "_l" + std::to_string(leaf_index++));
            for (std::size_t e = 0; e < pattern.extras; ++e) {
              g.extra_adjacencies.push_back(circular("x_" + uname + "_e" + std::to_string(extra_index++)));
              g.extra_leaf.push_back(v);
              g.leaf_extras[static_cast<std::size_t>(v)].push_back(g.extra_adjacencies.size() - 1);
              ++stats.extra_adjacencies;
            }
            return v;
          }));
        }
      }
      units.push_back(comb_of(g.tree, elementary));
      grow();
    }
    const int blown_up = comb_of(g.tree, units);

    std::vector<int> a;
    for (std::size_t k = 0; k < amending_leaves().size(); ++k) {
      a.push_back(make_leaf(amending_leaves()[k], 1, cname + "_a" + std::to_string(k)));
    }
    const int amend = g.tree.join(g.tree.join(g.tree.join(a[0], a[1]), g.tree.join(a[2], a[3])),
                                  g.tree.join(g.tree.join(a[4], a[5]), g.tree.join(a[6], a[7])));
    clause_roots.push_back(g.tree.join(blown_up, amend));
    grow();
    g.clause_stats.push_back(stats);
  }
  comb_of(g.tree, clause_roots);
  grow();
  return g;
}

std::size_t GadgetTree::leaf_count() const {
  std::size_t n = 0;
  for (std::size_t v = 0; v < tree.size(); ++v) n += tree.is_leaf(static_cast<int>(v)) ? 1 : 0;
  return n;
}

std::set<std::string> GadgetTree::genes() const {
  std::set<std::string> out;
  for (const auto* list : {&logical_adjacencies, &extra_adjacencies}) {
    for (const auto& a : *list) out.insert(std::string(a.first().gene()));
  }
  return out;
}

NodeAdjacencies GadgetTree::leaf_adjacencies() const {
  NodeAdjacencies out(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (!tree.is_leaf(static_cast<int>(v))) continue;
    for (std::size_t i = 0; i < num_vars; ++i) {
      if (logical[v][i] != 0) out[v].insert(logical_adjacencies[i]);
    }
    for (auto e : leaf_extras[v]) out[v].insert(extra_adjacencies[e]);
  }
  return out;
}

Genome GadgetTree::leaf_genome(int leaf) const {
  const auto v = static_cast<std::size_t>(leaf);
  AdjacencySet present;
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (logical[v][i] != 0) present.insert(logical_adjacencies[i]);
  }
  for (auto e : leaf_extras[v]) present.insert(extra_adjacencies[e]);
  return Genome::with_adjacencies(tree.node(leaf).name, genes(), present);
}

Presence GadgetTree::logical_presence(std::size_t var_index) const {
  Presence p(tree.size(), 0);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (tree.is_leaf(static_cast<int>(v))) p[v] = logical[v][var_index];
  }
  return p;
}

Presence GadgetTree::extra_presence(std::size_t extra_index) const {
  Presence p(tree.size(), 0);
  p[static_cast<std::size_t>(extra_leaf.at(extra_index))] = 1;
  return p;
}

ElementaryInstance build_elementary(const ElementaryType& type) {
  ElementaryInstance inst{PhyloTree{}, {}, {circular("b1"), circular("b2"), circular("b3")}};
  std::size_t leaf_index = 0, extra_index = 0;
  std::vector<AdjacencySet> leaf_sets;
  build_elementary_into(inst.tree, type, [&](const GadgetLeaf& pattern) {
    const int v = inst.tree.add_leaf("l" + std::to_string(leaf_index++));
    AdjacencySet s;
    for (std::size_t p = 0; p < 3; ++p) {
      if (pattern.logical[p] != 0) s.insert(inst.logical[p]);
    }
    for (std::size_t e = 0; e < pattern.extras; ++e) s.insert(circular("x_e" + std::to_string(extra_index++)));
    if (leaf_sets.size() <= static_cast<std::size_t>(v)) leaf_sets.resize(static_cast<std::size_t>(v) + 1);
    leaf_sets[static_cast<std::size_t>(v)] = std::move(s);
    return v;
  });
  leaf_sets.resize(inst.tree.size());
  inst.leaves = std::move(leaf_sets);
  return inst;
}

NodeAdjacencies elementary_assignment(const ElementaryInstance& inst, std::string_view row) {
  const auto b = bits(row);
  return fitch_assignment(inst.tree, inst.leaves, [&](const Adjacency& alpha) {
    for (std::size_t p = 0; p < 3; ++p) {
      if (alpha == inst.logical[p]) return b[p] != 0;
    }
    return false;
  });
}

bool Table1Report::ok() const {
  return products_ok && gamma_ok && std::all_of(cells.begin(), cells.end(), [](const Table1Cell& c) { return c.ok(); });
}

Table1Report verify_table1(Execution exec) {
  const auto& types = elementary_types();
  std::vector<ElementaryInstance> instances;
  for (const auto& t : types) instances.push_back(build_elementary(t));

  Table1Report report;
  report.cells.resize(types.size() * kTruthRows.size());
  for_each_index(exec, report.cells.size(), [&](std::size_t cell) {
    const std::size_t t = cell / kTruthRows.size();
    const std::size_t r = cell % kTruthRows.size();
    const auto& inst = instances[t];
    const int root = inst.tree.root();
    bool ambiguous = true;
    for (const auto& alpha : inst.logical) {
      const auto b = fitch_bottom_up(inst.tree, presence_of(inst.tree, inst.leaves, alpha));
      ambiguous = ambiguous && b[static_cast<std::size_t>(root)] == StateSet::kAmbiguous;
    }
    const auto assignment = elementary_assignment(inst, kTruthRows[r]);
    report.cells[cell] = Table1Cell{t, std::string(kTruthRows[r]), BigCount(types[t].expected[r]),
                                    count_scenarios_for_assignment(inst.tree, assignment), ambiguous};
  });

  report.row_products.assign(kTruthRows.size(), BigCount(1));
  for (const auto& cell : report.cells) {
    const auto r = static_cast<std::size_t>(std::find(kTruthRows.begin(), kTruthRows.end(), cell.row) - kTruthRows.begin());
    report.row_products[r] *= power(cell.got, types[cell.type].multiplicity);
  }
  report.products_ok = true;
  report.gamma_ok = unit_count_satisfied() * power(3, 12) == unit_count_unsatisfied() * power(2, 20);
  for (std::size_t r = 0; r < kTruthRows.size(); ++r) {
    const BigCount& want = r == 0 ? unit_count_unsatisfied() : unit_count_satisfied();
    report.products_ok = report.products_ok && report.row_products[r] == want;
    if (r > 0) {
      report.gamma_ok = report.gamma_ok && report.row_products[r] * power(3, 12) == report.row_products[0] * power(2, 20);
    }
  }
  return report;
}

namespace {

// Per-gadget data that does not depend on the root assignment: for each
// logical adjacency and root label, the edges whose Fitch labels differ.
class GadgetCounter {
 public:
  explicit GadgetCounter(const GadgetTree& g) : base_(g.tree.size(), 0), changed_(g.num_vars) {
    const PhyloTree& tree = g.tree;
    // Each extra is present on one leaf only: Fitch gives it absence
    // everywhere above, so it changes on that leaf's edge and nowhere else.
    for (int leaf : g.extra_leaf) ++base_[static_cast<std::size_t>(leaf)];
    const auto b_root = static_cast<std::size_t>(tree.root());
    for (std::size_t i = 0; i < g.num_vars; ++i) {
      const auto b = fitch_bottom_up(tree, g.logical_presence(i));
      for (int choice = 0; choice < 2; ++choice) {
        auto& edges = changed_[i][static_cast<std::size_t>(choice)];
        if (!contains(b[b_root], choice != 0)) {
          edges.reset();
          continue;
        }
        const Presence f = fitch_top_down(tree, b, choice != 0);
        edges.emplace();
        for (std::size_t v = 0; v < tree.size(); ++v) {
          const int p = tree.parent(static_cast<int>(v));
          if (p != PhyloTree::kNone && f[v] != f[static_cast<std::size_t>(p)]) edges->push_back(v);
        }
      }
    }
  }

  BigCount count(std::uint64_t assignment) const {
    std::vector<std::size_t> changes = base_;
    for (std::size_t i = 0; i < changed_.size(); ++i) {
      const auto& edges = changed_[i][(assignment >> i) & 1U];
      if (!edges) throw Error("root assignment outside the Fitch root set");
      for (auto v : *edges) ++changes[v];
    }
    std::map<std::size_t, std::uint64_t> histogram;
    for (auto d : changes) {
      if (d > 1) ++histogram[d];
    }
    BigCount product = 1;
    for (const auto& [d, n] : histogram) product *= power(factorial(d), n);
    return product;
  }

 private:
  std::vector<std::size_t> base_;
  std::vector<std::array<std::optional<std::vector<std::size_t>>, 2>> changed_;
};

}  // namespace

BigCount gadget_assignment_count(const GadgetTree& g, std::uint64_t assignment) {
  return GadgetCounter(g).count(assignment);
}

std::vector<std::uint64_t> all_assignments(std::size_t num_vars) {
  std::vector<std::uint64_t> out(std::size_t{1} << num_vars);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = k;
  return out;
}

MajorityResult majority_check(const GadgetTree& g, const CnfFormula& phi,
                              const std::vector<std::uint64_t>& assignments, Execution exec) {
  constexpr std::size_t kMaxVars = 10;
  if (phi.num_vars > kMaxVars) {
    throw GuardError("majority check enumerates assignments; limited to " + std::to_string(kMaxVars) + " variables");
  }
  MajorityResult result;
  result.per_assignment.resize(assignments.size());
  const GadgetCounter counter(g);
  for_each_index(exec, assignments.size(),
                 [&](std::size_t k) { result.per_assignment[k] = counter.count(assignments[k]); });
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    (phi.satisfied(assignments[k]) ? result.sat_total : result.unsat_total) += result.per_assignment[k];
  }
  return result;
}

MajorityResult majority_check(const CnfFormula& phi, const std::vector<std::uint64_t>& assignments,
                              Execution exec) {
  if (phi.num_vars > 10) throw GuardError("majority check enumerates assignments; limited to 10 variables");
  return majority_check(build_gadget(phi), phi, assignments, exec);
}

}  // namespace scj
