#include "gd3/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gd3/tracing.hpp"

namespace gd3 {

namespace {

// Minimal union-find over dense indices.
struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::set<std::uint32_t> roots;
    for (std::uint32_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
    return roots.size();
  }
};

void require_current(const GaussDiagram& d, const Decoration& deco) {
  if (!decoration_is_current(d, deco)) throw DomainError("stale decoration");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Closed: return "closed";
    case Verdict::KnotComplement: return "knot-complement";
    case Verdict::CompressionBodies: return "compression-bodies";
    case Verdict::Invalid: return "invalid";
  }
  return "invalid";
}

std::uint32_t color_excess(const Decoration& deco) {
  return static_cast<std::uint32_t>(deco.cycle_count() - deco.used_colors().size());
}

long long genus(const GaussDiagram& d, const Decoration& deco) {
  require_current(d, deco);
  long long h = static_cast<long long>(d.chord_count());
  long long c = static_cast<long long>(deco.cycle_count());
  if ((h - c) % 2 != 0) throw DomainError("|h| - |c| is odd: not a surface");
  return 1 + static_cast<long long>(color_excess(deco)) + (h - c) / 2;
}

long long genus_from_euler(const GaussDiagram& d, const Decoration& deco) {
  require_current(d, deco);
  RibbonMap m = build_ribbon_map(d);
  // chi(S) = chi(Gamma) + sum over colors of (2 - #cycles of that color);
  // annuli contribute 0 to chi(Gamma).
  long long chi = m.euler_characteristic();
  std::map<ColorId, long long> per_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) per_color[deco.colors[i]]++;
  for (const auto& [col, n] : per_color) chi += 2 - n;
  if (chi % 2 != 0) throw DomainError("odd Euler characteristic: not a closed surface");
  return (2 - chi) / 2;
}

std::size_t BoundaryGraph::component_count() const {
  std::map<ColorId, std::uint32_t> idx;
  for (ColorId v : vertices) idx.emplace(v, static_cast<std::uint32_t>(idx.size()));
  UnionFind uf(idx.size());
  for (const auto& [p, q] : edges) uf.unite(idx.at(p), idx.at(q));
  return uf.components();
}

std::pair<BoundaryGraph, BoundaryGraph> boundary_graphs(const GaussDiagram& d,
                                                        const Decoration& deco) {
  require_current(d, deco);
  auto pairs = infer_edge_colorings(d, deco);

  BoundaryGraph cplus, cminus;
  cplus.which = Family::Plus;
  cminus.which = Family::Minus;
  cplus.vertices = deco.used_colors();
  cminus.vertices = cplus.vertices;

  // C+ collects the arcs and chordless circles of the minus family; C- of
  // the plus family.
  auto feed = [&](BoundaryGraph& g, Family source) {
    for (std::uint32_t ci = 0; ci < d.family(source).size(); ++ci) {
      for (const ArcId& a : arcs_of(d, CircleId{source, ci})) {
        ColorPair cp = pairs.at(a);
        g.edges.emplace_back(cp.co, cp.counter);
      }
    }
  };
  feed(cplus, Family::Minus);
  feed(cminus, Family::Plus);
  return {cplus, cminus};
}

BoundaryReport boundary_genera(const GaussDiagram& d, const Decoration& deco) {
  require_current(d, deco);
  BoundaryReport rep;
  rep.chord_count = d.chord_count();
  rep.cycle_count = deco.cycle_count();
  if (deco.cycle_count() == 0) {
    rep.verdict = Verdict::Invalid;
    rep.invalid_reason = "empty diagram has no associated surface";
    return rep;
  }
  rep.genus_s = genus(d, deco);
  rep.excess = color_excess(deco);

  auto [cplus, cminus] = boundary_graphs(d, deco);
  rep.k_plus = cplus.component_count();
  rep.k_minus = cminus.component_count();

  long long gs = rep.genus_s;
  rep.bg_plus = static_cast<long long>(rep.k_plus) - d.plus_count() + gs - 1;
  rep.bg_minus = static_cast<long long>(rep.k_minus) - d.minus_count() + gs - 1;

  if (rep.bg_plus < 0 || rep.bg_minus < 0) {
    rep.verdict = Verdict::Invalid;
    rep.invalid_reason = "negative boundary genus";
  } else if (rep.bg_plus == 0 && rep.bg_minus == 0) {
    rep.verdict = Verdict::Closed;
  } else if ((rep.bg_plus == 0 && rep.bg_minus == 1) || (rep.bg_plus == 1 && rep.bg_minus == 0)) {
    rep.verdict = Verdict::KnotComplement;
  } else {
    rep.verdict = Verdict::CompressionBodies;
  }
  return rep;
}

bool diagram_connected(const GaussDiagram& d) {
  std::size_t n = d.plus_count() + d.minus_count();
  if (n == 0) return true;
  UnionFind uf(n);
  auto ends = chord_ends(d);
  for (const auto& [h, e] : ends)
    uf.unite(e.plus_circle.index, d.plus_count() + e.minus_circle.index);
  return uf.components() == 1;
}

bool r_connected(const GaussDiagram& d, const Decoration& deco) {
  require_current(d, deco);
  std::size_t n = d.plus_count() + d.minus_count();
  if (n == 0) return true;
  UnionFind uf(n);
  auto ends = chord_ends(d);
  for (const auto& [h, e] : ends)
    uf.unite(e.plus_circle.index, d.plus_count() + e.minus_circle.index);

  auto circle_node = [&](CircleId c) {
    return (c.family == Family::Plus ? 0u : d.plus_count()) + c.index;
  };
  // components sharing a color are joined
  std::map<ColorId, std::uint32_t> rep_of_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    std::uint32_t node = circle_node(deco.cycles[i].front().arc.circle);
    auto it = rep_of_color.find(deco.colors[i]);
    if (it == rep_of_color.end())
      rep_of_color.emplace(deco.colors[i], node);
    else
      uf.unite(it->second, node);
  }
  return uf.components() == 1;
}

Reducibility reducibility_hint(const GaussDiagram& d) {
  if (d.plus_count() != d.minus_count())
    throw DomainError("reducibility hint requires equal family sizes");
  if (!diagram_connected(d)) throw DomainError("reducibility hint requires a connected diagram");
  Decoration fresh = fresh_decoration(d);
  long long gs = genus(d, fresh);
  return gs == static_cast<long long>(d.plus_count()) ? Reducibility::FillsDiscs
                                                     : Reducibility::Reducible;
}

}  // namespace gd3
