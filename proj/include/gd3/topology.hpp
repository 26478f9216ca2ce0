#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gd3/diagram.hpp"

namespace gd3 {

// Color graph C+ or C-: vertices are the decoration's colors, one edge per
// arc (or chordless circle) of the *other* family, joining the two colors of
// its sides. Component count = pieces of the surface cut along that family.
struct BoundaryGraph {
  Family which = Family::Plus;
  std::vector<ColorId> vertices;                       // sorted color set
  std::vector<std::pair<ColorId, ColorId>> edges;      // unordered pairs

  std::size_t component_count() const;
};

enum class Verdict { Closed, KnotComplement, CompressionBodies, Invalid };

std::string to_string(Verdict v);

struct BoundaryReport {
  long long genus_s = 0;       // genus of S(G^d)
  std::uint32_t excess = 0;    // Delta_c
  std::size_t chord_count = 0;
  std::size_t cycle_count = 0;
  std::size_t k_plus = 0;
  std::size_t k_minus = 0;
  long long bg_plus = 0;       // boundary genus of H+ side
  long long bg_minus = 0;
  Verdict verdict = Verdict::Invalid;
  std::string invalid_reason;
};

// Delta_c = number of cycles minus number of distinct colors.
std::uint32_t color_excess(const Decoration& deco);

// g = 1 + Delta_c + (|h| - |c|)/2; throws on parity violation. Negative
// exactly when the associated surface is disconnected (a union of closed
// surfaces has chi > 2), which only arises for non-R-connected decorations.
long long genus(const GaussDiagram& d, const Decoration& deco);

// Same quantity through the Euler characteristic of the ribbon map plus the
// disc-with-holes gluing; kept as an independent route for cross-checks.
long long genus_from_euler(const GaussDiagram& d, const Decoration& deco);

std::pair<BoundaryGraph, BoundaryGraph> boundary_graphs(const GaussDiagram& d,
                                                        const Decoration& deco);

BoundaryReport boundary_genera(const GaussDiagram& d, const Decoration& deco);

// True iff the graph over connected components of the diagram, with edges
// between components sharing a color, is connected.
bool r_connected(const GaussDiagram& d, const Decoration& deco);

// Whether the diagram's circles-and-chords graph is connected (chordless
// circles count as isolated components).
bool diagram_connected(const GaussDiagram& d);

enum class Reducibility { FillsDiscs, Reducible };

// For a connected diagram with g+ = g- = g: FillsDiscs iff the non-decorated
// genus equals g. Only a hint for abstract diagrams.
Reducibility reducibility_hint(const GaussDiagram& d);

}  // namespace gd3
