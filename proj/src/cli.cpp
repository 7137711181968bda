#include "scj/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scj/error.hpp"
#include "scj/oracle.hpp"
#include "scj/pairwise.hpp"
#include "scj/parsimony.hpp"
#include "scj/reduction.hpp"

namespace scj {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string str(const BigCount& n) { return n.str(); }

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json strings(const auto& items) {
  Json a = Json::array();
  for (const auto& x : items) {
    if constexpr (requires { x.text(); }) {
      a.push_back(x.text());
    } else {
      a.push_back(x);
    }
  }
  return a;
}

struct Options {
  bool json = false;
  bool serial = false;
  std::string a, b;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 1;
  std::size_t n = 0;
  std::string tree_path, genomes_dir, resolve = "absent";
  std::string cnf_path, out_dir;
  bool table1 = false;
  std::string majority_path;

  Execution exec() const { return serial ? Execution::kSerial : Execution::kParallel; }
};

int cmd_dist(const Options& o, std::ostream& out) {
  const auto d = scj_distance(read_genome_file(o.a), read_genome_file(o.b));
  if (o.json) {
    emit_json(out, Json{{"distance", d}});
  } else {
    out << d << "\n";
  }
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const Genome g1 = read_genome_file(o.a);
  const Genome g2 = read_genome_file(o.b);
  const BigCount n = count_scenarios(g1, g2);
  if (o.json) {
    emit_json(out, Json{{"distance", scj_distance(g1, g2)}, {"count", str(n)}});
  } else {
    out << n << "\n";
  }
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const Genome g1 = read_genome_file(o.a);
  const Genome g2 = read_genome_file(o.b);
  const auto draws = sample_scenarios(g1, g2, o.seed, o.count, o.exec());
  if (o.json) {
    Json list = Json::array();
    for (const auto& s : draws) list.push_back(strings(s));
    emit_json(out, Json{{"seed", o.seed}, {"count", o.count}, {"scenarios", list}});
    return kExitOk;
  }
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (draws.size() > 1) out << "# draw " << i << "\n";
    out << scenario_text(draws[i]);
  }
  return kExitOk;
}

int cmd_components(const Options& o, std::ostream& out) {
  const Genome g1 = read_genome_file(o.a);
  const Genome g2 = read_genome_file(o.b);
  const Decomposition d = build_adjacency_graph(g1, g2);
  Json list = Json::array();
  for (const auto& c : d.components) {
    list.push_back(Json{{"kind", to_string(c.kind)},
                        {"trivial", c.is_trivial},
                        {"size", c.size()},
                        {"ops", c.ops()},
                        {"g1_adjacencies", strings(c.g1_adjacencies)},
                        {"g2_adjacencies", strings(c.g2_adjacencies)},
                        {"g1_telomeres", strings(c.g1_telomeres)},
                        {"g2_telomeres", strings(c.g2_telomeres)}});
  }
  emit_json(out, Json{{"distance", d.total_ops()}, {"components", list}});
  return kExitOk;
}

int cmd_zigzag(const Options& o, std::ostream& out) {
  if (o.n == 0) throw Error("zigzag needs N >= 1");
  const auto a = zigzag_numbers(o.n);
  if (o.json) {
    Json list = Json::array();
    for (const auto& x : a) list.push_back(str(x));
    emit_json(out, Json{{"n", o.n}, {"alternating", list}});
    return kExitOk;
  }
  for (std::size_t k = 0; k < a.size(); ++k) out << (k + 1) << " " << a[k] << "\n";
  return kExitOk;
}

std::map<std::string, Genome> read_genome_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("genome directory '" + dir + "' does not exist");
  std::map<std::string, Genome> genomes;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".scjg") continue;
    genomes.emplace(entry.path().stem().string(), read_genome_file(entry.path().string()));
  }
  return genomes;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_parsimony(const Options& o, std::ostream& out) {
  PhyloTree tree;
  try {
    tree = parse_newick(read_text(o.tree_path));
  } catch (const ParseError& e) {
    throw Error(o.tree_path + ": " + e.what());
  }
  const auto genomes = read_genome_dir(o.genomes_dir);
  const auto resolution = o.resolve == "greedy" ? RootResolution::kGreedy : RootResolution::kAbsent;
  const TreeAssignment t = solve_spscj(tree, genomes, resolution, o.exec());
  const auto order = tree.postorder();

  struct Edge {
    int parent, child;
    std::size_t distance;
    BigCount count;
  };
  std::vector<Edge> edges;
  for (int v : order) {
    const int p = tree.parent(v);
    if (p == PhyloTree::kNone) continue;
    const auto& a = t.genome_at[static_cast<std::size_t>(p)];
    const auto& b = t.genome_at[static_cast<std::size_t>(v)];
    edges.push_back({p, v, scj_distance(a, b), count_scenarios(a, b)});
  }
  const BigCount total = count_scenarios_for_assignment(tree, t.genome_at);

  if (o.json) {
    Json nodes = Json::array();
    for (int v : order) {
      if (tree.is_leaf(v)) continue;
      nodes.push_back(Json{{"node", tree.display_name(v)},
                           {"adjacencies", strings(t.genome_at[static_cast<std::size_t>(v)])},
                           {"genome", print_genome(t.genome(tree, v))}});
    }
    Json e = Json::array();
    for (const auto& x : edges) {
      e.push_back(Json{{"parent", tree.display_name(x.parent)},
                       {"child", tree.display_name(x.child)},
                       {"distance", x.distance},
                       {"count", str(x.count)}});
    }
    emit_json(out, Json{{"score", t.score}, {"resolve", o.resolve}, {"internal", nodes}, {"edges", e},
                        {"total_count", str(total)}});
    return kExitOk;
  }
  out << "score " << t.score << "\n";
  for (int v : order) {
    if (tree.is_leaf(v)) continue;
    out << print_genome(t.genome(tree, v));
  }
  for (const auto& x : edges) {
    out << "edge " << tree.display_name(x.parent) << " " << tree.display_name(x.child) << " distance "
        << x.distance << " count " << x.count << "\n";
  }
  out << "total " << total << "\n";
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const CnfFormula phi = read_cnf_file(o.cnf_path);
  const GadgetTree g = build_gadget(phi);
  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);
  {
    std::ofstream f(dir / "tree.nwk", std::ios::binary);
    f << print_newick(g.tree);
    if (!f) throw Error("cannot write '" + (dir / "tree.nwk").string() + "'");
  }
  const auto genes = g.genes();
  for (int leaf : g.tree.leaves()) {
    AdjacencySet present;
    const auto v = static_cast<std::size_t>(leaf);
    for (std::size_t i = 0; i < g.num_vars; ++i) {
      if (g.logical[v][i] != 0) present.insert(g.logical_adjacencies[i]);
    }
    for (auto e : g.leaf_extras[v]) present.insert(g.extra_adjacencies[e]);
    const auto& name = g.tree.node(leaf).name;
    std::ofstream f(dir / (name + ".scjg"), std::ios::binary);
    f << print_genome(Genome::with_adjacencies(name, genes, present));
    if (!f) throw Error("cannot write genome for leaf '" + name + "'");
  }
  const auto bounds = gadget_size_bounds(phi.clauses.size());
  Json clauses = Json::array();
  for (const auto& c : g.clause_stats) {
    clauses.push_back(Json{{"repeats", c.repeats}, {"leaves", c.leaves}, {"extra_adjacencies", c.extra_adjacencies}});
  }
  Json stats{{"num_vars", phi.num_vars},
             {"num_clauses", phi.clauses.size()},
             {"repeats", blowup_repeats(phi.num_vars, phi.clauses.size())},
             {"leaves", g.leaf_count()},
             {"extremities", g.extremity_count()},
             {"logical_adjacencies", g.logical_adjacencies.size()},
             {"extra_adjacencies", g.extra_adjacencies.size()},
             {"leaf_bound", bounds.leaves},
             {"extremity_bound", bounds.extremities},
             {"clauses", clauses}};
  {
    std::ofstream f(dir / "stats.json", std::ios::binary);
    f << stats.dump(2) << "\n";
  }
  if (o.json) {
    emit_json(out, stats);
  } else {
    out << "wrote " << g.leaf_count() << " leaf genomes, tree.nwk and stats.json to " << o.out_dir << "\n";
    out << "repeats " << stats["repeats"] << " leaves " << g.leaf_count() << " extremities " << g.extremity_count()
        << "\n";
  }
  return kExitOk;
}

int cmd_verify_gadget(const Options& o, std::ostream& out) {
  const bool do_table = o.table1 || o.majority_path.empty();
  Json report = Json::object();
  bool ok = true;
  std::ostringstream text;

  if (do_table) {
    const Table1Report t = verify_table1(o.exec());
    const auto& types = elementary_types();
    Json rows = Json::array();
    for (std::size_t r = 0; r < kTruthRows.size(); ++r) {
      Json values = Json::array();
      text << kTruthRows[r] << ":";
      for (std::size_t ty = 0; ty < types.size(); ++ty) {
        const auto& cell = t.cells[ty * kTruthRows.size() + r];
        values.push_back(str(cell.got));
        text << " " << cell.got;
        if (!cell.ok()) {
          text << "(expected " << cell.expected << (cell.root_ambiguous ? "" : ", root not ambiguous") << ")";
        }
      }
      text << "  product " << t.row_products[r] << "\n";
      rows.push_back(Json{{"row", kTruthRows[r]}, {"counts", values}, {"product", str(t.row_products[r])}});
    }
    text << "table1 " << (t.ok() ? "ok" : "MISMATCH") << " (products " << (t.products_ok ? "ok" : "wrong")
         << ", gamma " << (t.gamma_ok ? "ok" : "wrong") << ")\n";
    report["table1"] = Json{{"ok", t.ok()}, {"products_ok", t.products_ok}, {"gamma_ok", t.gamma_ok}, {"rows", rows}};
    ok = ok && t.ok();
  }
  if (!o.majority_path.empty()) {
    const CnfFormula phi = read_cnf_file(o.majority_path);
    const auto m = majority_check(phi, all_assignments(phi.num_vars), o.exec());
    std::size_t satisfying = 0;
    for (auto a : all_assignments(phi.num_vars)) satisfying += phi.satisfied(a) ? 1 : 0;
    const bool holds = satisfying == 0 ? m.sat_total == 0 : m.sat_total > m.unsat_total;
    text << "satisfying assignments " << satisfying << "\n";
    text << "sat_total " << m.sat_total << "\n";
    text << "unsat_total " << m.unsat_total << "\n";
    text << "majority " << (holds ? "ok" : "VIOLATED") << "\n";
    report["majority"] = Json{{"satisfying_assignments", satisfying},
                              {"sat_total", str(m.sat_total)},
                              {"unsat_total", str(m.unsat_total)},
                              {"ok", holds}};
    ok = ok && holds;
  }
  if (o.json) {
    report["ok"] = ok;
    emit_json(out, report);
  } else {
    out << text.str();
  }
  return ok ? kExitOk : kExitDomainError;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  Json checks = Json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool passed) {
    checks.push_back(Json{{"check", name}, {"ok", passed}});
    all = all && passed;
  };

  const auto zig = zigzag_numbers(9);
  for (std::size_t n = 1; n <= 9; ++n) {
    check("alternating n=" + std::to_string(n), zig[n - 1] == oracle::brute_alternating(n));
  }
  const ComponentTables tables(5);
  const std::pair<ComponentKind, std::size_t> shapes[] = {
      {ComponentKind::kWShaped, 0}, {ComponentKind::kWShaped, 1}, {ComponentKind::kWShaped, 2},
      {ComponentKind::kWShaped, 3}, {ComponentKind::kWShaped, 4}, {ComponentKind::kMShaped, 1},
      {ComponentKind::kMShaped, 2}, {ComponentKind::kMShaped, 3}, {ComponentKind::kMShaped, 4},
      {ComponentKind::kMShaped, 5}, {ComponentKind::kOddPath, 1}, {ComponentKind::kOddPath, 2},
      {ComponentKind::kOddPath, 3}, {ComponentKind::kOddPath, 4}, {ComponentKind::kCycle, 2},
      {ComponentKind::kCycle, 3},   {ComponentKind::kCycle, 4}};
  for (const auto& [kind, i] : shapes) {
    check(std::string(to_string(kind)) + " i=" + std::to_string(i),
          oracle::brute_component_count(kind, i) == tables.get(kind, i));
  }
  check("table1", verify_table1(o.exec()).ok());

  if (o.json) {
    emit_json(out, Json{{"ok", all}, {"checks", checks}});
  } else {
    for (const auto& c : checks) {
      out << (c["ok"].get<bool>() ? "ok   " : "FAIL ") << c["check"].get<std::string>() << "\n";
    }
    out << (all ? "selftest passed" : "selftest FAILED") << "\n";
  }
  return all ? kExitOk : kExitDomainError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SCJ rearrangement scenarios: distance, counting, sampling, tree parsimony and the hardness gadget",
               "scj"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_flag("--serial", o.serial, "Use the serial reference kernels");
  };
  auto pair = [&](CLI::App* sub) {
    sub->add_option("A", o.a, "First genome (.scjg)")->required();
    sub->add_option("B", o.b, "Second genome (.scjg)")->required();
  };

  auto* dist = app.add_subcommand("dist", "SCJ distance");
  pair(dist);
  common(dist);
  dist->callback([&] { action = cmd_dist; });

  auto* count = app.add_subcommand("count", "Exact number of most parsimonious scenarios");
  pair(count);
  common(count);
  count->callback([&] { action = cmd_count; });

  auto* sample = app.add_subcommand("sample", "Uniformly sampled most parsimonious scenarios");
  pair(sample);
  common(sample);
  sample->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sample->add_option("--count", o.count, "Number of draws")->check(CLI::PositiveNumber);
  sample->callback([&] { action = cmd_sample; });

  auto* comps = app.add_subcommand("components", "Adjacency graph components as JSON");
  pair(comps);
  common(comps);
  comps->callback([&] { action = cmd_components; });

  auto* zig = app.add_subcommand("zigzag", "Alternating permutation counts A_1..A_N");
  zig->add_option("N", o.n, "Largest n")->required()->check(CLI::PositiveNumber);
  common(zig);
  zig->callback([&] { action = cmd_zigzag; });

  auto* pars = app.add_subcommand("parsimony", "Small parsimony on a rooted binary tree");
  pars->add_option("tree", o.tree_path, "Rooted binary Newick tree")->required();
  pars->add_option("--genomes", o.genomes_dir, "Directory of <leaf>.scjg files")->required();
  pars->add_option("--resolve", o.resolve, "Root ambiguity resolution")
      ->check(CLI::IsMember({"absent", "greedy"}))
      ->capture_default_str();
  common(pars);
  pars->callback([&] { action = cmd_parsimony; });

  auto* reduce = app.add_subcommand("reduce", "Build the 3CNF hardness tree");
  reduce->add_option("cnf", o.cnf_path, "DIMACS CNF formula")->required();
  reduce->add_option("-o,--out", o.out_dir, "Output directory")->required();
  common(reduce);
  reduce->callback([&] { action = cmd_reduce; });

  auto* verify = app.add_subcommand("verify-gadget", "Check the elementary subtree table and the majority property");
  verify->add_flag("--table1", o.table1, "Verify the elementary subtree count table (default without --majority)");
  verify->add_option("--majority", o.majority_path, "DIMACS CNF to check over all assignments (n <= 10)");
  common(verify);
  verify->callback([&] { action = cmd_verify_gadget; });

  auto* self = app.add_subcommand("selftest", "Compare the counting tables with brute-force oracles");
  common(self);
  self->callback([&] { action = cmd_selftest; });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action(o, out);
  } catch (const std::exception& e) {
    err << "scj: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace scj
