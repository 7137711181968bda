#include "scj/genome.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "scj/error.hpp"

namespace scj {

namespace {

bool valid_gene_label(std::string_view gene) {
  if (gene.empty()) return false;
  return std::none_of(gene.begin(), gene.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '#';
  });
}

}  // namespace

Extremity::Extremity(std::string_view gene, End end) {
  if (!valid_gene_label(gene)) throw Error("invalid gene label '" + std::string(gene) + "'");
  text_.reserve(gene.size() + 2);
  text_.append(gene);
  text_.append(end == End::kHead ? "_h" : "_t");
}

Extremity Extremity::parse(std::string_view text) {
  if (text.size() < 3 || text[text.size() - 2] != '_' || (text.back() != 'h' && text.back() != 't')) {
    throw Error("invalid extremity '" + std::string(text) + "' (expected <gene>_h or <gene>_t)");
  }
  return Extremity(text.substr(0, text.size() - 2), text.back() == 'h' ? End::kHead : End::kTail);
}

std::ostream& operator<<(std::ostream& os, const Extremity& x) { return os << x.text(); }

Adjacency::Adjacency(Extremity a, Extremity b) : first_(std::move(a)), second_(std::move(b)) {
  if (first_ == second_) throw Error("adjacency with identical extremities " + first_.text());
  if (second_ < first_) std::swap(first_, second_);
}

std::ostream& operator<<(std::ostream& os, const Adjacency& a) {
  return os << '(' << a.first() << ',' << a.second() << ')';
}

bool is_valid_assignment(const AdjacencySet& adjacencies) {
  ExtremitySet seen;
  for (const auto& a : adjacencies) {
    if (!seen.insert(a.first()).second || !seen.insert(a.second()).second) return false;
  }
  return true;
}

std::string ScjOp::text() const {
  return std::string(kind == Kind::kCut ? "cut " : "join ") + adjacency.text();
}

std::ostream& operator<<(std::ostream& os, const ScjOp& op) { return os << op.text(); }

Genome Genome::make(std::string name, std::set<std::string> genes, AdjacencySet adjacencies,
                    ExtremitySet telomeres) {
  ExtremitySet used;
  auto claim = [&](const Extremity& x) {
    if (!genes.contains(std::string(x.gene()))) {
      throw Error("extremity " + x.text() + " belongs to no gene of genome '" + name + "'");
    }
    if (!used.insert(x).second) throw Error("duplicate extremity " + x.text());
  };
  for (const auto& a : adjacencies) {
    claim(a.first());
    claim(a.second());
  }
  for (const auto& t : telomeres) claim(t);
  for (const auto& gene : genes) {
    for (End e : {End::kHead, End::kTail}) {
      Extremity x(gene, e);
      if (!used.contains(x)) telomeres.insert(x);
    }
  }
  Genome g;
  g.name_ = std::move(name);
  g.genes_ = std::move(genes);
  g.adjacencies_ = std::move(adjacencies);
  g.telomeres_ = std::move(telomeres);
  return g;
}

Genome Genome::with_adjacencies(std::string name, const std::set<std::string>& genes,
                                const AdjacencySet& adjacencies) {
  return make(std::move(name), genes, adjacencies);
}

ExtremitySet Genome::extremities() const {
  ExtremitySet all = telomeres_;
  for (const auto& a : adjacencies_) {
    all.insert(a.first());
    all.insert(a.second());
  }
  return all;
}

Genome Genome::renamed(std::string name) const {
  Genome g = *this;
  g.name_ = std::move(name);
  return g;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

}  // namespace

Genome parse_genome(std::string_view text) {
  std::optional<std::string> name;
  std::set<std::string> genes;
  AdjacencySet adjacencies;
  ExtremitySet telomeres;
  ExtremitySet used;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    const auto& keyword = tokens[0];
    auto expect_args = [&](std::size_t n) {
      if (tokens.size() != n + 1) {
        throw ParseError(line_no, keyword.column,
                         "'" + std::string(keyword.text) + "' takes " + std::to_string(n) + " argument(s)");
      }
    };
    auto extremity = [&](const Token& t) {
      try {
        Extremity x = Extremity::parse(t.text);
        if (!used.insert(x).second) throw ParseError(line_no, t.column, "duplicate extremity " + x.text());
        genes.insert(std::string(x.gene()));
        return x;
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(line_no, t.column, e.what());
      }
    };

    if (!name) {
      if (keyword.text != "genome") throw ParseError(line_no, keyword.column, "expected 'genome <name>' header");
      expect_args(1);
      name = std::string(tokens[1].text);
      continue;
    }
    if (keyword.text == "adjacency") {
      expect_args(2);
      if (tokens[1].text == tokens[2].text) {
        throw ParseError(line_no, tokens[2].column,
                         "adjacency with identical extremities " + std::string(tokens[1].text));
      }
      Extremity a = extremity(tokens[1]);
      Extremity b = extremity(tokens[2]);
      adjacencies.emplace(std::move(a), std::move(b));
    } else if (keyword.text == "telomere") {
      expect_args(1);
      telomeres.insert(extremity(tokens[1]));
    } else if (keyword.text == "genes") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!valid_gene_label(tokens[i].text)) {
          throw ParseError(line_no, tokens[i].column, "invalid gene label '" + std::string(tokens[i].text) + "'");
        }
        genes.insert(std::string(tokens[i].text));
      }
    } else if (keyword.text == "genome") {
      throw ParseError(line_no, keyword.column, "second 'genome' header");
    } else {
      throw ParseError(line_no, keyword.column, "unknown keyword '" + std::string(keyword.text) + "'");
    }
  }
  if (!name) throw ParseError(line_no == 0 ? 1 : line_no, 0, "missing 'genome <name>' header");
  return Genome::make(std::move(*name), std::move(genes), std::move(adjacencies), std::move(telomeres));
}

std::string print_genome(const Genome& g) {
  std::string out = "genome " + g.name() + "\n";
  for (const auto& a : g.adjacencies()) out += "adjacency " + a.text() + "\n";
  for (const auto& t : g.telomeres()) out += "telomere " + t.text() + "\n";
  return out;
}

Genome read_genome_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open genome file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_genome(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

Genome apply_scj(const Genome& g, const ScjOp& op) {
  const Adjacency& a = op.adjacency;
  AdjacencySet adjacencies = g.adjacencies();
  ExtremitySet telomeres = g.telomeres();
  if (op.kind == ScjOp::Kind::kCut) {
    if (adjacencies.erase(a) == 0) throw Error("illegal SCJ operation: " + op.text() + " (no such adjacency)");
    telomeres.insert(a.first());
    telomeres.insert(a.second());
  } else {
    for (const auto& x : {a.first(), a.second()}) {
      if (!telomeres.contains(x)) {
        throw Error("illegal SCJ operation: " + op.text() + " (" + x.text() + " is not a telomere)");
      }
    }
    telomeres.erase(a.first());
    telomeres.erase(a.second());
    adjacencies.insert(a);
  }
  return Genome::make(g.name(), g.genes(), std::move(adjacencies), std::move(telomeres));
}

void require_same_genes(const Genome& a, const Genome& b) {
  if (a.genes() == b.genes()) return;
  std::vector<std::string> only_a, only_b;
  std::set_difference(a.genes().begin(), a.genes().end(), b.genes().begin(), b.genes().end(),
                      std::back_inserter(only_a));
  std::set_difference(b.genes().begin(), b.genes().end(), a.genes().begin(), a.genes().end(),
                      std::back_inserter(only_b));
  std::string msg = "gene sets differ between '" + a.name() + "' and '" + b.name() + "'";
  if (!only_a.empty()) msg += "; only in '" + a.name() + "': " + only_a.front();
  if (!only_b.empty()) msg += "; only in '" + b.name() + "': " + only_b.front();
  throw Error(msg);
}

}  // namespace scj
