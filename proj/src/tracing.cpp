#include "gd3/tracing.hpp"

#include <algorithm>
#include <sstream>

namespace gd3 {

std::map<ChordId, CrossingFrame> crossing_frames(const GaussDiagram& d) {
  std::map<ChordId, CrossingFrame> out;
  auto ends = chord_ends(d);
  for (const auto& [h, e] : ends) {
    CrossingFrame f;
    f.chord = h;
    f.sign = d.sign_of(h);
    std::uint32_t np = static_cast<std::uint32_t>(d.circle(e.plus_circle).size());
    std::uint32_t nm = static_cast<std::uint32_t>(d.circle(e.minus_circle).size());
    f.a = ArcId{e.plus_circle, (e.plus_pos + np - 1) % np};
    f.b = ArcId{e.plus_circle, e.plus_pos};
    f.c = ArcId{e.minus_circle, (e.minus_pos + nm - 1) % nm};
    f.d = ArcId{e.minus_circle, e.minus_pos};
    out[h] = f;
  }
  return out;
}

std::vector<std::uint32_t> transition_permutation(const GaussDiagram& d, const ArcTable& table) {
  std::vector<std::uint32_t> perm(table.side_count());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;  // chordless fixed points

  std::vector<bool> assigned(perm.size(), false);
  auto set = [&](ArcSide from, ArcSide to) {
    std::uint32_t fi = table.index_of(from);
    if (assigned[fi]) throw DomainError("transition source assigned twice (invalid diagram)");
    assigned[fi] = true;
    perm[fi] = table.index_of(to);
  };

  for (const auto& [h, f] : crossing_frames(d)) {
    ArcSide aCo{f.a, Side::Co}, aCt{f.a, Side::Counter};
    ArcSide bCo{f.b, Side::Co}, bCt{f.b, Side::Counter};
    ArcSide cCo{f.c, Side::Co}, cCt{f.c, Side::Counter};
    ArcSide dCo{f.d, Side::Co}, dCt{f.d, Side::Counter};
    if (f.sign > 0) {
      set(aCo, cCt);
      set(cCo, bCo);
      set(bCt, dCo);
      set(dCt, aCt);
    } else {
      set(aCo, dCo);
      set(cCo, aCt);
      set(dCt, bCo);
      set(bCt, cCt);
    }
  }
  return perm;
}

namespace {

std::vector<std::vector<std::uint32_t>> orbits_of(const std::vector<std::uint32_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> orbit;
    std::uint32_t x = s;
    do {
      seen[x] = true;
      orbit.push_back(x);
      x = perm[x];
    } while (x != s);
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

CycleSet trace_cycles(const GaussDiagram& d) {
  ArcTable table(d);
  auto perm = transition_permutation(d, table);
  CycleSet cs;
  for (const auto& orbit : orbits_of(perm)) {
    std::vector<ArcSide> cyc;
    cyc.reserve(orbit.size());
    for (std::uint32_t i : orbit) cyc.push_back(table.side_at(i));
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
    cs.orbits.push_back(std::move(cyc));
  }
  std::sort(cs.orbits.begin(), cs.orbits.end());
  return cs;
}

Decoration fresh_decoration(const GaussDiagram& d) {
  Decoration deco;
  deco.cycles = trace_cycles(d).orbits;
  deco.colors.resize(deco.cycles.size());
  for (std::size_t i = 0; i < deco.colors.size(); ++i)
    deco.colors[i] = static_cast<ColorId>(i);
  deco.next_color = static_cast<ColorId>(deco.cycles.size());
  return deco;
}

bool decoration_is_current(const GaussDiagram& d, const Decoration& deco) {
  return trace_cycles(d).orbits == deco.cycles;
}

std::map<ArcId, ColorPair> infer_edge_colorings(const GaussDiagram& d, const Decoration& deco) {
  if (!decoration_is_current(d, deco)) throw DomainError("stale decoration");
  std::map<ArcSide, ColorId> side_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i)
    for (const ArcSide& s : deco.cycles[i]) side_color[s] = deco.colors[i];

  std::map<ArcId, ColorPair> out;
  for (const ArcId& a : all_arcs(d))
    out[a] = ColorPair{side_color.at(ArcSide{a, Side::Co}), side_color.at(ArcSide{a, Side::Counter})};
  return out;
}

ChordColorReport check_chord_color_equalities(const GaussDiagram& d, const Decoration& deco) {
  ChordColorReport rep;
  // read colors off the stored cycles: this must work on suspect decorations
  std::map<ArcSide, ColorId> side_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i)
    for (const ArcSide& s : deco.cycles[i]) side_color[s] = deco.colors[i];
  std::map<ArcId, ColorPair> pairs;
  for (const ArcId& a : all_arcs(d)) {
    auto co = side_color.find(ArcSide{a, Side::Co});
    auto ct = side_color.find(ArcSide{a, Side::Counter});
    if (co == side_color.end() || ct == side_color.end()) {
      rep.violations.push_back("an arc side is missing from the decoration");
      return rep;
    }
    pairs[a] = ColorPair{co->second, ct->second};
  }
  for (const auto& [h, f] : crossing_frames(d)) {
    ColorPair A = pairs.at(f.a), B = pairs.at(f.b), C = pairs.at(f.c), D = pairs.at(f.d);
    bool ok;
    if (f.sign > 0) {
      // (a1,a2,b1,b2) = (c2,d2,c1,d1)
      ok = A.co == C.counter && A.counter == D.counter && B.co == C.co && B.counter == D.co;
    } else {
      // (a1,a2,b1,b2) = (d1,c1,d2,c2)
      ok = A.co == D.co && A.counter == C.co && B.co == D.counter && B.counter == C.counter;
    }
    if (!ok) {
      std::ostringstream os;
      os << "chord " << h << " (" << (f.sign > 0 ? "+" : "-")
         << ") violates the right-turn color equalities";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

RibbonMap build_ribbon_map(const GaussDiagram& d) {
  RibbonMap m;
  // darts: arc-sides of chord-bearing circles only
  std::map<ArcSide, std::uint32_t> dart_index;
  for (Family f : {Family::Plus, Family::Minus}) {
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci) {
      const Circle& circ = d.family(f)[ci];
      if (circ.chordless()) {
        m.annulus_count++;
        continue;
      }
      for (std::uint32_t p = 0; p < circ.size(); ++p) {
        for (Side s : {Side::Co, Side::Counter}) {
          ArcSide as{ArcId{CircleId{f, ci}, p}, s};
          dart_index[as] = static_cast<std::uint32_t>(m.darts.size());
          m.darts.push_back(as);
        }
      }
      m.edge_count += circ.size();
    }
  }
  m.vertex_count = d.chord_count();

  m.sigma.resize(m.darts.size());
  m.alpha.resize(m.darts.size());
  for (std::uint32_t i = 0; i < m.darts.size(); ++i) {
    ArcSide s = m.darts[i];
    m.alpha[i] = dart_index.at(ArcSide{s.arc, flip(s.side)});
  }

  // Vertex rotations from the crossing geometry: counterclockwise around a
  // positive chord the arc ends read (a head, c head, b tail, d tail); around
  // a negative one (a head, d tail, b tail, c head). Heads carry the Co dart,
  // tails the Counter dart.
  for (const auto& [h, f] : crossing_frames(d)) {
    std::vector<ArcSide> ring;
    if (f.sign > 0)
      ring = {ArcSide{f.a, Side::Co}, ArcSide{f.c, Side::Co}, ArcSide{f.b, Side::Counter},
              ArcSide{f.d, Side::Counter}};
    else
      ring = {ArcSide{f.a, Side::Co}, ArcSide{f.d, Side::Counter}, ArcSide{f.b, Side::Counter},
              ArcSide{f.c, Side::Co}};
    for (std::size_t i = 0; i < 4; ++i)
      m.sigma[dart_index.at(ring[i])] = dart_index.at(ring[(i + 1) % 4]);
  }
  return m;
}

std::size_t RibbonMap::boundary_components() const {
  std::vector<std::uint32_t> beta(darts.size());
  for (std::uint32_t i = 0; i < darts.size(); ++i) beta[i] = sigma[alpha[i]];
  std::vector<bool> seen(darts.size(), false);
  std::size_t n = 0;
  for (std::uint32_t s = 0; s < darts.size(); ++s) {
    if (seen[s]) continue;
    ++n;
    std::uint32_t x = s;
    do {
      seen[x] = true;
      x = beta[x];
    } while (x != s);
  }
  return n + 2 * annulus_count;
}

}  // namespace gd3
