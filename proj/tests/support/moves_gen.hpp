#pragma once

// Enumerates applicable move instances on a decorated diagram, for the
// invariance suites.

#include <optional>
#include <vector>

#include "gd3/moves.hpp"
#include "gd3/tracing.hpp"

namespace gd3::testsupport {

struct MoveSites {
  std::vector<MoveSpec> forward;            // eps, R, H, S, B
  std::vector<MoveSpec> r_inverse_sites;    // detected on the diagram itself
  std::vector<MoveSpec> s_inverse_sites;
  std::vector<MoveSpec> b_inverse_sites;
};

inline std::vector<RMove> r_sites(const GaussDiagram& d, const Decoration& deco,
                                  std::size_t limit) {
  std::vector<RMove> out;
  std::map<ArcSide, std::size_t> cyc;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i)
    for (const ArcSide& s : deco.cycles[i]) cyc[s] = i;
  for (const ArcId& pa : all_arcs(d)) {
    if (pa.circle.family != Family::Plus) continue;
    for (const ArcId& ma : all_arcs(d)) {
      if (ma.circle.family != Family::Minus) continue;
      for (Side sp : {Side::Co, Side::Counter}) {
        for (Side sm : {Side::Co, Side::Counter}) {
          if (deco.colors[cyc.at(ArcSide{pa, sp})] != deco.colors[cyc.at(ArcSide{ma, sm})])
            continue;
          RCase rc = sp == Side::Co ? (sm == Side::Co ? RCase::A1B1 : RCase::A1B2)
                                    : (sm == Side::Co ? RCase::A2B1 : RCase::A2B2);
          out.push_back(RMove{pa, ma, rc});
          if (out.size() >= limit) return out;
        }
      }
    }
  }
  return out;
}

inline std::vector<SlideMove> h_sites(const GaussDiagram& d, const Decoration& deco,
                                      std::size_t limit) {
  std::vector<SlideMove> out;
  std::map<ArcSide, std::size_t> cyc;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i)
    for (const ArcSide& s : deco.cycles[i]) cyc[s] = i;
  for (Family f : {Family::Plus, Family::Minus}) {
    const auto& fam = d.family(f);
    for (std::uint32_t si = 0; si < fam.size(); ++si) {
      for (std::uint32_t ai = 0; ai < fam.size(); ++ai) {
        if (si == ai || fam[ai].chordless()) continue;
        for (const ArcId& sa : arcs_of(d, CircleId{f, si})) {
          for (const ArcId& aa : arcs_of(d, CircleId{f, ai})) {
            for (bool rev : {false, true}) {
              bool shares = false;
              for (Side ss : {Side::Co, Side::Counter})
                for (Side as : {Side::Co, Side::Counter})
                  if (((ss == as) == !rev) &&
                      deco.colors[cyc.at(ArcSide{sa, ss})] == deco.colors[cyc.at(ArcSide{aa, as})])
                    shares = true;
              if (!shares) continue;
              out.push_back(SlideMove{CircleId{f, si}, CircleId{f, ai}, sa, aa, rev});
              if (out.size() >= limit) return out;
            }
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<RInverseMove> r_inverse_sites(const GaussDiagram& d, const Decoration& deco,
                                                 std::size_t limit) {
  std::vector<RInverseMove> out;
  auto ends = chord_ends(d);
  for (const auto& [p, pe] : ends) {
    if (d.sign_of(p) != +1) continue;
    for (const auto& [m, me] : ends) {
      if (d.sign_of(m) != -1) continue;
      if (pe.plus_circle != me.plus_circle || pe.minus_circle != me.minus_circle) continue;
      // cheap adjacency prefilter; r_inverse rechecks everything
      auto adjacent = [&](std::uint32_t a, std::uint32_t b, std::size_t n) {
        return (a + 1) % n == b || (b + 1) % n == a;
      };
      if (!adjacent(pe.plus_pos, me.plus_pos, d.circle(pe.plus_circle).size())) continue;
      if (!adjacent(pe.minus_pos, me.minus_pos, d.circle(pe.minus_circle).size())) continue;
      try {
        r_inverse(d, deco, p, m);
        out.push_back(RInverseMove{p, m});
        if (out.size() >= limit) return out;
      } catch (const DomainError&) {
      }
    }
  }
  return out;
}

inline std::vector<StabInverseMove> s_inverse_sites(const GaussDiagram& d,
                                                    const Decoration& deco) {
  std::vector<StabInverseMove> out;
  auto ends = chord_ends(d);
  for (std::uint32_t pi = 0; pi < d.plus_count(); ++pi) {
    if (d.plus_circles[pi].size() != 1) continue;
    ChordId h = d.plus_circles[pi].endpoints[0];
    CircleId mc = ends.at(h).minus_circle;
    if (d.circle(mc).size() != 1) continue;
    try {
      s_inverse(d, deco, CircleId{Family::Plus, pi}, mc);
      out.push_back(StabInverseMove{CircleId{Family::Plus, pi}, mc});
    } catch (const DomainError&) {
    }
  }
  return out;
}

inline std::vector<BubbleInverseMove> b_inverse_sites(const GaussDiagram& d,
                                                      const Decoration& deco) {
  std::vector<BubbleInverseMove> out;
  for (Family f : {Family::Plus, Family::Minus}) {
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci) {
      if (!d.family(f)[ci].chordless()) continue;
      try {
        b_inverse(d, deco, CircleId{f, ci});
        out.push_back(BubbleInverseMove{CircleId{f, ci}});
      } catch (const DomainError&) {
      }
    }
  }
  return out;
}

}  // namespace gd3::testsupport
