#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gd3/diagram.hpp"

namespace gd3 {

// The four arcs meeting at a chord, read off the circle cyclic orders:
// a/b incoming/outgoing on the plus circle, c/d on the minus circle.
// a == b iff the plus circle has a single endpoint (likewise c == d).
struct CrossingFrame {
  ChordId chord = 0;
  int sign = +1;
  ArcId a, b, c, d;
};

std::map<ChordId, CrossingFrame> crossing_frames(const GaussDiagram& d);

// Orbits of the right-turn transition permutation on arc-sides.
struct CycleSet {
  std::vector<std::vector<ArcSide>> orbits;  // canonical order

  std::size_t size() const { return orbits.size(); }
};

// The transition permutation itself, as dense side indices (see ArcTable).
// Each chordless circle contributes two fixed points (its whole-circle sides).
std::vector<std::uint32_t> transition_permutation(const GaussDiagram& d, const ArcTable& table);

CycleSet trace_cycles(const GaussDiagram& d);

// Traced cycles with fresh all-distinct colors.
Decoration fresh_decoration(const GaussDiagram& d);

// True iff deco.cycles equals the orbits of trace_cycles(d).
bool decoration_is_current(const GaussDiagram& d, const Decoration& deco);

struct ColorPair {
  ColorId co = 0;       // color of the cycle through (arc, Co)
  ColorId counter = 0;  // ... through (arc, Counter)

  friend auto operator<=>(const ColorPair&, const ColorPair&) = default;
};

// Arc -> (color of co-directed side, color of counter-directed side).
std::map<ArcId, ColorPair> infer_edge_colorings(const GaussDiagram& d, const Decoration& deco);

// Checks the per-chord color equalities of the right-turn rule:
//   positive: (a1,a2,b1,b2) = (c2,d2,c1,d1)
//   negative: (a1,a2,b1,b2) = (d1,c1,d2,c2)
// Empty on every decoration produced by trace_cycles; a self-test hook.
struct ChordColorReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ChordColorReport check_chord_color_equalities(const GaussDiagram& d, const Decoration& deco);

// Combinatorial-map encoding of the ribbon graph: darts are the arc-sides of
// chord-bearing circles, sigma the vertex rotation read from the crossing
// geometry, alpha the arc pairing. Chordless circles are excluded from the
// map (they are annuli) but counted in boundary_components.
struct RibbonMap {
  std::vector<ArcSide> darts;
  std::vector<std::uint32_t> sigma;  // rotation, dart index -> dart index
  std::vector<std::uint32_t> alpha;  // pairing involution
  std::size_t vertex_count = 0;      // chords
  std::size_t edge_count = 0;        // arcs of chord-bearing circles
  std::size_t annulus_count = 0;     // chordless circles

  long long euler_characteristic() const {
    return static_cast<long long>(vertex_count) - static_cast<long long>(edge_count);
  }
  // Orbits of sigma∘alpha plus two per annulus.
  std::size_t boundary_components() const;
};

RibbonMap build_ribbon_map(const GaussDiagram& d);

}  // namespace gd3
