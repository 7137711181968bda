// Acceptance criteria 1-10. One PASS/FAIL line per criterion; the exit code
// is non-zero when any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "scj/cli.hpp"
#include "scj/oracle.hpp"
#include "scj/pairwise.hpp"
#include "scj/parsimony.hpp"
#include "scj/reduction.hpp"
#include "test_support.hpp"

namespace scj {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Runtime limits in seconds; 0 means none.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 60.0;
constexpr double kLimit4 = 10.0;
constexpr double kLimit5 = 30.0;
constexpr double kLimit7 = 60.0;
constexpr double kChiSquaredAlpha = 0.001;

Outcome criterion1() {
  const ComponentTables t(20);
  const auto a = zigzag_numbers(41);
  auto A = [&](std::size_t n) { return a[n - 1]; };
  for (std::size_t k = 1; k <= 20; ++k) {
    if (t.m(k) != A(2 * k - 1) || t.w(k) != A(2 * k + 1) || t.o(k) != A(2 * k) || t.c(k) != BigCount(k) * A(2 * k - 1)) {
      return {false, "identity fails at k=" + std::to_string(k)};
    }
  }
  return {true, "M, W, O, C identities hold for k=1..20"};
}

Outcome criterion2() {
  Rng rng(kDefaultSeed);
  std::size_t checked = 0, max_d = 0;
  for (std::size_t trial = 0; trial < 200; ++trial) {
    const auto [a, b] = testing::random_pair(rng, 3 + trial % 5, 8);
    const BigCount fast = count_scenarios(a, b);
    const auto all = enumerate_scenarios(a, b);
    if (fast != BigCount(all.size())) {
      return {false, "pair " + std::to_string(trial) + ": count " + fast.str() + " vs " + std::to_string(all.size())};
    }
    max_d = std::max(max_d, scj_distance(a, b));
    ++checked;
  }
  return {true, std::to_string(checked) + " pairs agree (max distance " + std::to_string(max_d) + ")"};
}

Outcome criterion3() {
  const Genome g1 = read_genome_file(testing::data("fixture_g1.scjg"));
  const Genome g2 = read_genome_file(testing::data("fixture_g2.scjg"));
  const BigCount formula = BigCount(16) * factorial(12) / (factorial(3) * factorial(3) * factorial(4) * factorial(2));
  const std::size_t d = scj_distance(g1, g2);
  const BigCount n = count_scenarios(g1, g2);
  const bool ok = d == 12 && n == formula && formula == 4435200;
  return {ok, "distance " + std::to_string(d) + ", count " + n.str()};
}

Outcome criterion4() {
  const Genome g1 = read_genome_file(testing::data("twelve_g1.scjg"));
  const Genome g2 = read_genome_file(testing::data("twelve_g2.scjg"));
  const auto all = enumerate_scenarios(g1, g2);
  if (all.size() != 12 || count_scenarios(g1, g2) != 12) return {false, "instance does not have 12 scenarios"};
  std::map<Scenario, std::size_t> index;
  for (std::size_t k = 0; k < all.size(); ++k) index[all[k]] = k;

  constexpr std::size_t kDraws = 10000;
  const auto draws = sample_scenarios(g1, g2, kDefaultSeed, kDraws);
  std::array<double, 12> observed{};
  for (const auto& s : draws) {
    if (!is_parsimonious_scenario(g1, g2, s)) return {false, "invalid scenario drawn"};
    observed[index.at(s)] += 1;
  }
  const double expected = static_cast<double>(kDraws) / 12.0;
  double stat = 0;
  for (double o : observed) stat += (o - expected) * (o - expected) / expected;
  const boost::math::chi_squared dist(11);
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  std::ostringstream msg;
  msg << "10000 valid draws, chi2=" << stat << " df=11 p=" << p << " (alpha " << kChiSquaredAlpha << ")";
  return {p > kChiSquaredAlpha, msg.str()};
}

Outcome criterion5() {
  Rng rng(kDefaultSeed + 5);
  std::size_t adjacencies = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    const PhyloTree t = oracle::random_tree(2 + rng.below(15), rng);
    std::map<std::string, Genome> genomes;
    for (int leaf : t.leaves()) {
      const auto& name = t.node(leaf).name;
      genomes.emplace(name, oracle::random_genome(8, rng, 0.6, name));
    }
    const LeafData leaves = leaf_data(t, genomes);
    std::size_t sankoff_sum = 0;
    for (const auto& alpha : adjacency_universe(t, leaves.adjacencies)) {
      const Presence p = presence_of(t, leaves.adjacencies, alpha);
      const auto b = fitch_bottom_up(t, p);
      const Cost min = sankoff(t, p).minimum(t.root());
      for (bool choice : {false, true}) {
        if (!contains(b[static_cast<std::size_t>(t.root())], choice)) continue;
        if (Cost::finite(static_cast<std::uint32_t>(changed_edges(t, fitch_top_down(t, b, choice)))) != min) {
          return {false, "Fitch and Sankoff disagree on tree " + std::to_string(trial)};
        }
      }
      sankoff_sum += min.value();
      ++adjacencies;
    }
    const TreeAssignment a = solve_spscj(t, leaves);
    if (a.score != sankoff_sum || assignment_score(t, a.genome_at) != a.score) {
      return {false, "solve_spscj score differs from the Sankoff sum on tree " + std::to_string(trial)};
    }
    for (const auto& g : a.genome_at) {
      if (!is_valid_assignment(g)) return {false, "invalid internal genome on tree " + std::to_string(trial)};
    }
  }
  return {true, "100 trees, " + std::to_string(adjacencies) + " adjacencies"};
}

Outcome criterion6() {
  Rng rng(kDefaultSeed + 6);
  std::size_t trees = 0, pairs = 0;
  while (trees < 100) {
    const PhyloTree t = oracle::random_tree(2 + rng.below(4), rng);
    std::map<std::string, Genome> genomes;
    for (int leaf : t.leaves()) {
      const auto& name = t.node(leaf).name;
      genomes.emplace(name, oracle::random_genome(3, rng, 0.5, name));
    }
    const LeafData leaves = leaf_data(t, genomes);
    if (adjacency_universe(t, leaves.adjacencies).size() > 4) continue;
    ++trees;
    const SpscjCount brute = brute_force_spscj_count(t, leaves.adjacencies);
    if (brute.min_score != solve_spscj(t, leaves).score) {
      return {false, "oracle minimum differs from solve_spscj on tree " + std::to_string(trees)};
    }
  }
  // Two leaves: the root cuts a pairwise scenario at one of its d+1 positions.
  const PhyloTree cherry = parse_newick("(A,B);");
  while (pairs < 50) {
    std::map<std::string, Genome> genomes;
    genomes.emplace("A", oracle::random_genome(3, rng, 0.6, "A"));
    genomes.emplace("B", oracle::random_genome(3, rng, 0.6, "B"));
    const LeafData leaves = leaf_data(cherry, genomes);
    if (adjacency_universe(cherry, leaves.adjacencies).size() > 4) continue;
    ++pairs;
    const std::size_t d = scj_distance(genomes.at("A"), genomes.at("B"));
    const SpscjCount brute = brute_force_spscj_count(cherry, leaves.adjacencies);
    if (brute.min_score != d || brute.total != BigCount(d + 1) * count_scenarios(genomes.at("A"), genomes.at("B"))) {
      return {false, "two-leaf total differs from (d+1) x pairwise count"};
    }
  }
  return {true, "100 trees match solve_spscj; 50 two-leaf totals equal (d+1) x pairwise count"};
}

Outcome criterion7() {
  const Table1Report r = verify_table1();
  std::size_t good = 0;
  for (const auto& c : r.cells) good += c.ok() ? 1 : 0;
  const bool rows = r.row_products[0] == power(2, 136) * power(3, 76);
  return {r.ok() && rows, std::to_string(good) + "/112 cells, row products " + (r.products_ok ? "exact" : "WRONG") +
                              ", gamma " + (r.gamma_ok ? "exact" : "WRONG")};
}

Outcome criterion8() {
  const GadgetTree g = build_gadget(parse_cnf("p cnf 3 1\n1 2 3 0\n"));
  if (blowup_repeats(3, 1) != 5 || g.clause_stats.at(0).leaves != 1248) {
    return {false, "R=" + std::to_string(blowup_repeats(3, 1)) + " clause leaves " + std::to_string(g.clause_stats[0].leaves)};
  }
  for (const char* text : {"p cnf 3 1\n1 2 3 0\n", "p cnf 6 2\n1 2 3 0\n-4 5 -6 0\n", "p cnf 4 3\n1 2 3 0\n-2 3 4 0\n1 -3 -4 0\n",
                           "p cnf 9 3\n1 2 3 0\n4 5 6 0\n7 8 9 0\n"}) {
    const CnfFormula phi = parse_cnf(text);
    const GadgetTree t = build_gadget(phi);
    const auto bounds = gadget_size_bounds(phi.clauses.size());
    if (t.leaf_count() > bounds.leaves || t.extremity_count() > bounds.extremities) {
      return {false, "size bound exceeded for k=" + std::to_string(phi.clauses.size())};
    }
  }
  return {true, "R=5, clause leaves 1248, leaves and extremities within bounds for k=1..3"};
}

// Every 3CNF with n <= 6 and k <= 2, one formula per class under variable
// renaming and clause order. Both symmetries map the gadget tree onto an
// isomorphic tree, so the totals are class invariants.
std::vector<CnfFormula> small_formulas() {
  using Clause = std::array<int, 3>;
  // Relabels variables by first occurrence.
  auto canonical = [](std::vector<Clause> clauses) {
    std::map<int, int> label;
    for (auto& c : clauses) {
      for (int& lit : c) {
        const int v = std::abs(lit);
        auto [it, fresh] = label.emplace(v, static_cast<int>(label.size()) + 1);
        lit = lit > 0 ? it->second : -it->second;
      }
    }
    return clauses;
  };
  std::vector<CnfFormula> out;
  auto signed_clause = [](std::array<int, 3> vars, int signs) {
    Clause c{};
    for (int p = 0; p < 3; ++p) c[static_cast<std::size_t>(p)] = ((signs >> p) & 1) ? -vars[static_cast<std::size_t>(p)] : vars[static_cast<std::size_t>(p)];
    return c;
  };
  for (int s1 = 0; s1 < 8; ++s1) {
    const Clause c1 = signed_clause({1, 2, 3}, s1);
    for (std::size_t n = 3; n <= 6; ++n) out.push_back({n, {c1}});
    // Second clause: each position takes an earlier variable or the next new one.
    std::function<void(std::array<int, 3>&, std::size_t, int)> extend = [&](std::array<int, 3>& vars, std::size_t pos,
                                                                           int max_var) {
      if (pos == 3) {
        for (int s2 = 0; s2 < 8; ++s2) {
          const Clause c2 = signed_clause(vars, s2);
          const auto fwd = canonical({c1, c2});
          if (canonical({c2, c1}) < fwd) continue;
          for (auto n = static_cast<std::size_t>(max_var); n <= 6; ++n) out.push_back({n, fwd});
        }
        return;
      }
      for (int v = 1; v <= std::min(max_var + 1, 6); ++v) {
        if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(pos), v) != vars.begin() + static_cast<std::ptrdiff_t>(pos)) continue;
        vars[pos] = v;
        extend(vars, pos + 1, std::max(max_var, v));
      }
    };
    std::array<int, 3> vars{};
    extend(vars, 0, 3);
  }
  return out;
}

Outcome criterion9() {
  const auto formulas = small_formulas();
  std::size_t satisfiable = 0;
  for (const auto& phi : formulas) {
    bool sat = false;
    for (auto a : all_assignments(phi.num_vars)) sat = sat || phi.satisfied(a);
    const MajorityResult m = majority_check(phi, all_assignments(phi.num_vars));
    if (sat ? !(m.sat_total > m.unsat_total) : m.sat_total != 0) {
      std::ostringstream msg;
      msg << "majority fails for n=" << phi.num_vars << " clauses";
      for (const auto& c : phi.clauses) msg << " (" << c[0] << " " << c[1] << " " << c[2] << ")";
      return {false, msg.str()};
    }
    satisfiable += sat ? 1 : 0;
  }
  const CnfFormula unsat = read_cnf_file(testing::data("unsat_k8.cnf"));
  const MajorityResult m = majority_check(unsat, all_assignments(unsat.num_vars));
  if (m.sat_total != 0) return {false, "unsatisfiable set has sat_total " + m.sat_total.str()};
  return {true, std::to_string(satisfiable) + " formula classes (n<=6, k<=2) with sat_total > unsat_total; " +
                    "8-clause unsatisfiable set has sat_total 0"};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  out += "\nexit " + std::to_string(pclose(pipe));
  return out;
}

std::string directory_digest(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[e.path().filename().string()] = s.str();
  }
  std::string all;
  for (const auto& [name, text] : files) all += name + "\n" + text;
  return all;
}

Outcome criterion10() {
  const std::string cli = SCJ_CLI_PATH;
  const std::string g1 = testing::data("fixture_g1.scjg"), g2 = testing::data("fixture_g2.scjg");
  const std::string tree = testing::data("tree4/tree.nwk"), dir = testing::data("tree4");
  const fs::path out_a = fs::temp_directory_path() / "scj_accept_reduce_a";
  const fs::path out_b = fs::temp_directory_path() / "scj_accept_reduce_b";
  const std::vector<std::string> commands{
      "dist " + g1 + " " + g2,
      "count " + g1 + " " + g2 + " --json",
      "sample " + g1 + " " + g2 + " --seed 7 --count 20",
      "sample " + g1 + " " + g2 + " --count 5 --json",
      "components " + g1 + " " + g2,
      "zigzag 30 --json",
      "parsimony " + tree + " --genomes " + dir,
      "parsimony " + tree + " --genomes " + dir + " --resolve greedy --json",
      "verify-gadget --table1 --majority " + testing::data("sat_k2.cnf"),
      "selftest --json",
  };
  for (const auto& c : commands) {
    const std::string first = capture(cli + " " + c + " 2>&1");
    const std::string second = capture(cli + " " + c + " 2>&1");
    if (first != second) return {false, "output differs for: scj " + c};
    if (first.find("exit 0") == std::string::npos) return {false, "non-zero exit for: scj " + c};
  }
  fs::remove_all(out_a);
  fs::remove_all(out_b);
  const std::string cnf = testing::data("sat_k1.cnf");
  const std::string ra = capture(cli + " reduce " + cnf + " -o " + out_a.string() + " 2>&1");
  const std::string rb = capture(cli + " reduce " + cnf + " -o " + out_b.string() + " 2>&1");
  const bool same_dirs = directory_digest(out_a) == directory_digest(out_b);
  const bool same_stdout = ra.substr(ra.find('\n')) == rb.substr(rb.find('\n'));
  fs::remove_all(out_a);
  fs::remove_all(out_b);
  if (!same_dirs || !same_stdout) return {false, "reduce output differs between runs"};
  return {true, std::to_string(commands.size() + 1) + " invocations byte-identical across two runs"};
}

}  // namespace
}  // namespace scj

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::tuple<int, double, std::function<scj::Outcome()>>> criteria{
      {1, scj::kLimit1, scj::criterion1}, {2, scj::kLimit2, scj::criterion2}, {3, 0, scj::criterion3},
      {4, scj::kLimit4, scj::criterion4}, {5, scj::kLimit5, scj::criterion5}, {6, 0, scj::criterion6},
      {7, scj::kLimit7, scj::criterion7}, {8, 0, scj::criterion8},           {9, 0, scj::criterion9},
      {10, 0, scj::criterion10}};
  int failures = 0;
  for (const auto& [id, limit, run] : criteria) {
    const auto start = Clock::now();
    scj::Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit > 0 && seconds >= limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(limit) + " s limit";
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s (%.3f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
