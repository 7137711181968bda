#include "scj/adjacency_graph.hpp"

#include <algorithm>
#include <map>

#include "scj/error.hpp"

namespace scj {

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kCycle:
      return "cycle";
    case ComponentKind::kOddPath:
      return "odd_path";
    case ComponentKind::kWShaped:
      return "w_shaped";
    case ComponentKind::kMShaped:
      return "m_shaped";
  }
  return "?";
}

std::size_t Decomposition::total_ops() const {
  std::size_t total = 0;
  for (auto n : scj_ops_per_component) total += n;
  return total;
}

std::size_t Decomposition::count(ComponentKind kind, bool include_trivial) const {
  return static_cast<std::size_t>(std::count_if(components.begin(), components.end(), [&](const Component& c) {
    return c.kind == kind && (include_trivial || !c.is_trivial);
  }));
}

namespace {

Side other(Side s) { return s == Side::kFirst ? Side::kSecond : Side::kFirst; }

class GraphWalker {
 public:
  GraphWalker(const AdjacencySet& pi1, const AdjacencySet& pi2, ExtremitySet universe)
      : universe_(std::move(universe)) {
    for (const auto& a : pi1) link(partner1_, a);
    for (const auto& a : pi2) link(partner2_, a);
  }

  Decomposition run() {
    std::vector<Component> components;

    // Paths, entered from their smaller telomere endpoint.
    for (const auto& x : universe_) {
      for (Side s : {Side::kFirst, Side::kSecond}) {
        if (!partner(s, x) && !visited_.contains(x)) components.push_back(walk_path(s, x));
      }
    }
    // Whatever is left lies on cycles.
    for (const auto& x : universe_) {
      if (!visited_.contains(x)) components.push_back(walk_cycle(x));
    }

    std::vector<std::pair<Extremity, std::size_t>> order;
    for (std::size_t i = 0; i < components.size(); ++i) order.emplace_back(smallest(components[i]), i);
    std::sort(order.begin(), order.end());

    Decomposition d;
    for (const auto& [key, i] : order) {
      d.scj_ops_per_component.push_back(components[i].ops());
      d.components.push_back(std::move(components[i]));
    }
    return d;
  }

 private:
  using PartnerMap = std::map<Extremity, Extremity>;

  static void link(PartnerMap& m, const Adjacency& a) {
    m.emplace(a.first(), a.second());
    m.emplace(a.second(), a.first());
  }

  const Extremity* partner(Side s, const Extremity& x) const {
    const PartnerMap& m = s == Side::kFirst ? partner1_ : partner2_;
    auto it = m.find(x);
    return it == m.end() ? nullptr : &it->second;
  }

  GraphVertex vertex(Side s, const Extremity& x) const {
    const Extremity* p = partner(s, x);
    if (!p) return {s, x, std::nullopt};
    return x < *p ? GraphVertex{s, x, *p} : GraphVertex{s, *p, x};
  }

  Component walk_path(Side start_side, const Extremity& x) {
    Component c;
    c.walk.push_back(vertex(start_side, x));
    Side side = start_side;
    Extremity edge = x;
    for (;;) {
      visited_.insert(edge);
      side = other(side);
      GraphVertex v = vertex(side, edge);
      c.walk.push_back(v);
      if (v.is_telomere()) break;
      edge = *partner(side, edge);
    }
    const Side end_side = c.walk.back().side;
    if (start_side == Side::kFirst && end_side == Side::kFirst) {
      c.kind = ComponentKind::kWShaped;
    } else if (start_side == Side::kSecond && end_side == Side::kSecond) {
      c.kind = ComponentKind::kMShaped;
    } else {
      c.kind = ComponentKind::kOddPath;
    }
    fill_lists(c);
    c.is_trivial = c.kind == ComponentKind::kOddPath && c.walk.size() == 2;
    return c;
  }

  Component walk_cycle(const Extremity& x) {
    Component c;
    c.kind = ComponentKind::kCycle;
    const GraphVertex start = vertex(Side::kFirst, x);
    c.walk.push_back(start);
    const Extremity closing = *partner(Side::kFirst, x);
    Side side = Side::kFirst;
    Extremity edge = x;
    for (;;) {
      visited_.insert(edge);
      side = other(side);
      if (side == Side::kFirst && edge == closing) break;
      GraphVertex v = vertex(side, edge);
      c.walk.push_back(v);
      edge = *partner(side, edge);
    }
    fill_lists(c);
    c.is_trivial = c.g1_adjacencies.size() == 1;
    return c;
  }

  static void fill_lists(Component& c) {
    for (const auto& v : c.walk) {
      if (v.is_telomere()) {
        (v.side == Side::kFirst ? c.g1_telomeres : c.g2_telomeres).push_back(v.a);
      } else {
        (v.side == Side::kFirst ? c.g1_adjacencies : c.g2_adjacencies).push_back(v.adjacency());
      }
    }
  }

  static Extremity smallest(const Component& c) {
    Extremity best = c.walk.front().a;
    for (const auto& v : c.walk) best = std::min(best, v.a);
    return best;
  }

  ExtremitySet universe_;
  PartnerMap partner1_;
  PartnerMap partner2_;
  ExtremitySet visited_;
};

}  // namespace

Decomposition build_adjacency_graph(const Genome& g1, const Genome& g2) {
  require_same_genes(g1, g2);
  return GraphWalker(g1.adjacencies(), g2.adjacencies(), g1.extremities()).run();
}

Decomposition decompose_difference(const AdjacencySet& pi1, const AdjacencySet& pi2) {
  AdjacencySet only1, only2;
  std::set_difference(pi1.begin(), pi1.end(), pi2.begin(), pi2.end(), std::inserter(only1, only1.end()));
  std::set_difference(pi2.begin(), pi2.end(), pi1.begin(), pi1.end(), std::inserter(only2, only2.end()));
  ExtremitySet universe;
  for (const auto* set : {&only1, &only2}) {
    for (const auto& a : *set) {
      universe.insert(a.first());
      universe.insert(a.second());
    }
  }
  return GraphWalker(only1, only2, std::move(universe)).run();
}

}  // namespace scj
