#include "scj/pairwise.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

#include "scj/error.hpp"

namespace scj {

std::string scenario_text(const Scenario& s) {
  std::string out;
  for (const auto& op : s) out += op.text() + "\n";
  return out;
}

ComponentTables::ComponentTables(std::size_t max_i) : w_{1}, m_{0}, o_{1}, c_{0} { reserve(max_i); }

void ComponentTables::reserve(std::size_t max_i) {
  binom_.reserve(2 * max_i);
  for (std::size_t i = w_.size(); i <= max_i; ++i) {
    BigCount w = 0, m = 0, o = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      w += binom_(2 * i, 2 * j - 1) * w_[j - 1] * w_[i - j];
      m += binom_(2 * i - 2, 2 * j - 2) * o_[j - 1] * o_[i - j];
      o += binom_(2 * i - 1, 2 * j - 2) * o_[j - 1] * w_[i - j];
    }
    c_.push_back(BigCount(i) * w_[i - 1]);
    w_.push_back(std::move(w));
    m_.push_back(std::move(m));
    o_.push_back(std::move(o));
  }
}

const BigCount& ComponentTables::get(ComponentKind kind, std::size_t i) const {
  switch (kind) {
    case ComponentKind::kCycle:
      return c(i);
    case ComponentKind::kOddPath:
      return o(i);
    case ComponentKind::kWShaped:
      return w(i);
    case ComponentKind::kMShaped:
      return m(i);
  }
  throw std::logic_error("unknown component kind");
}

ComponentTables component_tables(std::size_t max_i) { return ComponentTables(max_i); }

std::vector<BigCount> zigzag_numbers(std::size_t n_max) {
  // Row n of the Entringer triangle: E(n,0) = 0 for n > 0,
  // E(n,k) = E(n,k-1) + E(n-1,n-k); A_n = E(n,n).
  std::vector<BigCount> result;
  std::vector<BigCount> prev{1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<BigCount> row(n + 1);
    row[0] = 0;
    for (std::size_t k = 1; k <= n; ++k) row[k] = row[k - 1] + prev[n - k];
    result.push_back(row[n]);
    prev = std::move(row);
  }
  return result;
}

std::size_t scj_distance(const AdjacencySet& pi1, const AdjacencySet& pi2) {
  std::size_t shared = 0;
  for (const auto& a : pi1) shared += pi2.contains(a) ? 1 : 0;
  return pi1.size() + pi2.size() - 2 * shared;
}

std::size_t scj_distance(const Genome& g1, const Genome& g2) {
  require_same_genes(g1, g2);
  return scj_distance(g1.adjacencies(), g2.adjacencies());
}

namespace {

std::size_t max_component_size(const Decomposition& d) {
  std::size_t m = 0;
  for (const auto& c : d.components) m = std::max(m, c.size());
  return m;
}

}  // namespace

BigCount count_scenarios(const Decomposition& d, const ComponentTables& tables) {
  BigCount product = 1;
  BigCount denominator = 1;
  std::size_t total = 0;
  for (const auto& c : d.components) {
    if (c.is_trivial) continue;
    product *= tables.get(c.kind, c.size());
    denominator *= factorial(c.ops());
    total += c.ops();
  }
  return factorial(total) / denominator * product;
}

BigCount count_scenarios(const AdjacencySet& pi1, const AdjacencySet& pi2) {
  Decomposition d = decompose_difference(pi1, pi2);
  return count_scenarios(d, ComponentTables(max_component_size(d)));
}

BigCount count_scenarios(const Genome& g1, const Genome& g2) {
  Decomposition d = build_adjacency_graph(g1, g2);
  return count_scenarios(d, ComponentTables(max_component_size(d)));
}

namespace {

// An operation slot on a path: a G1 adjacency (cut) or a G2 adjacency (join).
struct Item {
  bool is_cut;
  Adjacency adjacency;
};

ComponentKind path_kind(Side left, Side right) {
  if (left == Side::kFirst && right == Side::kFirst) return ComponentKind::kWShaped;
  if (left == Side::kSecond && right == Side::kSecond) return ComponentKind::kMShaped;
  return ComponentKind::kOddPath;
}

Scenario interleave(Scenario a, Scenario b, Rng& rng) {
  Scenario out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const std::size_t left = a.size() - i;
    const std::size_t right = b.size() - j;
    if (rng.below(left + right) < left) {
      out.push_back(std::move(a[i++]));
    } else {
      out.push_back(std::move(b[j++]));
    }
  }
  return out;
}

class ComponentSampler {
 public:
  ComponentSampler(const ComponentTables& tables, Rng& rng) : tables_(tables), rng_(rng) {}

  Scenario sample(const Component& c) {
    std::vector<Item> items;
    if (c.kind == ComponentKind::kCycle) {
      for (const auto& v : c.walk) items.push_back({v.side == Side::kFirst, v.adjacency()});
      return sample_cycle(items);
    }
    for (std::size_t k = 1; k + 1 < c.walk.size(); ++k) {
      items.push_back({c.walk[k].side == Side::kFirst, c.walk[k].adjacency()});
    }
    return sample_path(items, c.walk.front().side, c.walk.back().side);
  }

 private:
  static std::size_t cuts_in(std::span<const Item> items) {
    return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const Item& it) { return it.is_cut; }));
  }

  // Walk items alternate G1/G2 adjacencies, starting with a G1 one.
  Scenario sample_cycle(const std::vector<Item>& items) {
    const std::size_t i = items.size() / 2;
    const std::size_t k = 2 * rng_.below(i);
    std::vector<Item> opened;
    for (std::size_t step = 1; step < items.size(); ++step) opened.push_back(items[(k + step) % items.size()]);
    Scenario rest = sample_path(opened, Side::kFirst, Side::kFirst);
    Scenario out{ScjOp::cut(items[k].adjacency)};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }

  // A path piece between two telomere ends. The first operation cuts one of
  // its G1 adjacencies, chosen with probability proportional to the number of
  // scenarios that start with it.
  Scenario sample_path(std::span<const Item> items, Side left_end, Side right_end) {
    const std::size_t cuts = cuts_in(items);
    if (cuts == 0) {
      Scenario out;
      for (const auto& it : items) out.push_back(ScjOp::join(it.adjacency));
      return out;
    }
    const BigCount& total = tables_.get(path_kind(left_end, right_end), cuts);

    std::vector<std::pair<std::size_t, BigCount>> choices;
    BigCount sum = 0;
    std::size_t cuts_before = 0;
    for (std::size_t p = 0; p < items.size(); ++p) {
      if (!items[p].is_cut) continue;
      const std::size_t left_cuts = cuts_before++;
      const std::size_t right_cuts = cuts - left_cuts - 1;
      const std::size_t left_ops = p;
      const std::size_t right_ops = items.size() - p - 1;
      BigCount weight = tables_.get(path_kind(left_end, Side::kFirst), left_cuts) *
                        tables_.get(path_kind(Side::kFirst, right_end), right_cuts) *
                        tables_.binomials()(left_ops + right_ops, left_ops);
      sum += weight;
      choices.emplace_back(p, std::move(weight));
    }
    if (sum != total) throw std::logic_error("sampler weights disagree with the counting tables");

    BigCount r = rng_.below(total);
    std::size_t split = choices.back().first;
    for (const auto& [p, weight] : choices) {
      if (r < weight) {
        split = p;
        break;
      }
      r -= weight;
    }
    Scenario left = sample_path(items.subspan(0, split), left_end, Side::kFirst);
    Scenario right = sample_path(items.subspan(split + 1), Side::kFirst, right_end);
    Scenario out{ScjOp::cut(items[split].adjacency)};
    Scenario merged = interleave(std::move(left), std::move(right), rng_);
    out.insert(out.end(), merged.begin(), merged.end());
    return out;
  }

  const ComponentTables& tables_;
  Rng& rng_;
};

}  // namespace

Scenario sample_scenario(const Decomposition& d, const ComponentTables& tables, Rng& rng) {
  ComponentSampler sampler(tables, rng);
  std::vector<Scenario> parts;
  std::size_t total = 0;
  for (const auto& c : d.components) {
    if (c.is_trivial) continue;
    parts.push_back(sampler.sample(c));
    total += parts.back().size();
  }
  // Uniform arrangement of the multiset of component colours.
  std::vector<std::size_t> next(parts.size(), 0);
  Scenario out;
  out.reserve(total);
  for (std::size_t remaining = total; remaining > 0; --remaining) {
    std::uint64_t r = rng.below(remaining);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const std::size_t left = parts[k].size() - next[k];
      if (r < left) {
        out.push_back(parts[k][next[k]++]);
        break;
      }
      r -= left;
    }
  }
  return out;
}

Scenario sample_scenario(const Genome& g1, const Genome& g2, std::uint64_t seed) {
  Decomposition d = build_adjacency_graph(g1, g2);
  ComponentTables tables(max_component_size(d));
  Rng rng(seed);
  return sample_scenario(d, tables, rng);
}

std::vector<Scenario> sample_scenarios(const Genome& g1, const Genome& g2, std::uint64_t seed,
                                       std::size_t count, Execution exec) {
  const Decomposition d = build_adjacency_graph(g1, g2);
  const ComponentTables tables(max_component_size(d));
  std::vector<Scenario> out(count);
  for_each_index(exec, count, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    out[i] = sample_scenario(d, tables, rng);
  });
  return out;
}

namespace {

class ScenarioEnumerator {
 public:
  ScenarioEnumerator(const Genome& g1, const Genome& g2, std::size_t cap) : cap_(cap) {
    for (const auto& a : g1.adjacencies()) {
      if (!g2.has_adjacency(a)) pending_.push_back(ScjOp::cut(a));
    }
    for (const auto& a : g2.adjacencies()) {
      if (!g1.has_adjacency(a)) pending_.push_back(ScjOp::join(a));
    }
    used_.assign(pending_.size(), false);
  }

  std::vector<Scenario> run(const Genome& start) {
    dfs(start);
    return std::move(found_);
  }

 private:
  static bool legal(const Genome& g, const ScjOp& op) {
    if (op.kind == ScjOp::Kind::kCut) return g.has_adjacency(op.adjacency);
    return g.is_telomere(op.adjacency.first()) && g.is_telomere(op.adjacency.second());
  }

  void dfs(const Genome& g) {
    if (current_.size() == pending_.size()) {
      if (found_.size() == cap_) {
        throw GuardError("more than " + std::to_string(cap_) + " scenarios; enumeration cap exceeded");
      }
      found_.push_back(current_);
      return;
    }
    for (std::size_t k = 0; k < pending_.size(); ++k) {
      if (used_[k] || !legal(g, pending_[k])) continue;
      used_[k] = true;
      current_.push_back(pending_[k]);
      dfs(apply_scj(g, pending_[k]));
      current_.pop_back();
      used_[k] = false;
    }
  }

  std::size_t cap_;
  std::vector<ScjOp> pending_;
  std::vector<bool> used_;
  Scenario current_;
  std::vector<Scenario> found_;
};

}  // namespace

std::vector<Scenario> enumerate_scenarios(const Genome& g1, const Genome& g2, std::size_t cap) {
  require_same_genes(g1, g2);
  return ScenarioEnumerator(g1, g2, cap).run(g1);
}

bool is_parsimonious_scenario(const Genome& g1, const Genome& g2, const Scenario& s) {
  if (s.size() != scj_distance(g1, g2)) return false;
  Genome g = g1;
  try {
    for (const auto& op : s) g = apply_scj(g, op);
  } catch (const Error&) {
    return false;
  }
  return g.same_content(g2);
}

}  // namespace scj
