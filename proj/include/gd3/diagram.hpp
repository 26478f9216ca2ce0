#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gd3 {

// Thrown when an operation's preconditions are violated (unknown circle,
// invalid move site, ...). Validation itself is report-valued, not throwing.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

enum class Family : std::uint8_t { Plus, Minus };

inline Family opposite(Family f) { return f == Family::Plus ? Family::Minus : Family::Plus; }

using ChordId = std::uint32_t;
using ColorId = std::uint32_t;

struct CircleId {
  Family family = Family::Plus;
  std::uint32_t index = 0;

  friend auto operator<=>(const CircleId&, const CircleId&) = default;
};

// Position of the whole-circle arc of a chordless circle.
inline constexpr std::uint32_t kWholeCircle = 0xffffffffu;

// Identifies the arc immediately following the endpoint at `position` in the
// circle's cyclic order; a chordless circle has the single arc kWholeCircle.
struct ArcId {
  CircleId circle;
  std::uint32_t position = 0;

  bool is_whole() const { return position == kWholeCircle; }
  friend auto operator<=>(const ArcId&, const ArcId&) = default;
};

enum class Side : std::uint8_t { Co, Counter };

inline Side flip(Side s) { return s == Side::Co ? Side::Counter : Side::Co; }

// One of the two boundary arcs of an arc: Co is the side directed with the
// arc, Counter against it. These are the atoms of cycle tracing.
struct ArcSide {
  ArcId arc;
  Side side = Side::Co;

  friend auto operator<=>(const ArcSide&, const ArcSide&) = default;
};

struct Circle {
  std::vector<ChordId> endpoints;  // cyclic order as stored

  bool chordless() const { return endpoints.empty(); }
  std::size_t size() const { return endpoints.size(); }
  friend bool operator==(const Circle&, const Circle&) = default;
};

// Two families of oriented circles joined by signed chords. Every chord has
// exactly one endpoint in each family; circles may be chordless.
struct GaussDiagram {
  std::vector<Circle> plus_circles;
  std::vector<Circle> minus_circles;
  std::map<ChordId, int> chord_signs;  // +1 / -1; ids are stable across moves
  ChordId next_chord = 0;

  const std::vector<Circle>& family(Family f) const {
    return f == Family::Plus ? plus_circles : minus_circles;
  }
  std::vector<Circle>& family(Family f) {
    return f == Family::Plus ? plus_circles : minus_circles;
  }
  const Circle& circle(CircleId c) const;
  Circle& circle(CircleId c);
  bool has_circle(CircleId c) const;

  std::size_t chord_count() const { return chord_signs.size(); }
  int sign_of(ChordId h) const;
  ChordId fresh_chord(int sign);

  std::uint32_t plus_count() const { return static_cast<std::uint32_t>(plus_circles.size()); }
  std::uint32_t minus_count() const { return static_cast<std::uint32_t>(minus_circles.size()); }
};

// Arcs of one circle: n arcs for n >= 1 endpoints, one whole-circle arc for a
// chordless circle.
std::vector<ArcId> arcs_of(const GaussDiagram& d, CircleId c);

// All arcs of the diagram in canonical order (plus circles by index, then
// minus circles).
std::vector<ArcId> all_arcs(const GaussDiagram& d);

// Dense indexing of arcs and arc-sides, rebuilt per diagram.
struct ArcTable {
  std::vector<ArcId> arcs;                 // canonical order
  std::map<ArcId, std::uint32_t> arc_index;

  explicit ArcTable(const GaussDiagram& d);

  std::size_t arc_count() const { return arcs.size(); }
  std::size_t side_count() const { return arcs.size() * 2; }
  std::uint32_t index_of(const ArcSide& s) const;
  ArcSide side_at(std::uint32_t idx) const;
};

// Where the two endpoints of a chord sit.
struct ChordEnds {
  CircleId plus_circle;
  std::uint32_t plus_pos = 0;
  CircleId minus_circle;
  std::uint32_t minus_pos = 0;
};

// Endpoint locations for every chord; error if a chord is missing or
// duplicated within a family (use validate() first on untrusted data).
std::map<ChordId, ChordEnds> chord_ends(const GaussDiagram& d);

// The traced cycle partition plus a color per cycle. Cycles are stored in
// canonical order (sorted by minimal ArcSide, each orbit starting at its
// minimal element); stale cycles are a validation error, never recomputed
// silently.
struct Decoration {
  std::vector<std::vector<ArcSide>> cycles;
  std::vector<ColorId> colors;  // parallel to cycles
  ColorId next_color = 0;

  std::size_t cycle_count() const { return cycles.size(); }
  ColorId fresh_color() { return next_color++; }
  std::vector<ColorId> used_colors() const;  // sorted, distinct
};

struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

ValidationReport validate(const GaussDiagram& d);
ValidationReport validate(const GaussDiagram& d, const Decoration& deco);

// Mapping produced by canonicalize: how old labels read in the new diagram.
struct CanonicalMap {
  std::map<ChordId, ChordId> chord_map;
  std::vector<std::uint32_t> plus_perm;   // old index -> new index
  std::vector<std::uint32_t> minus_perm;
  std::vector<std::uint32_t> plus_rot;    // rotation applied per old circle
  std::vector<std::uint32_t> minus_rot;

  ArcId map_arc(const GaussDiagram& old_d, ArcId a) const;
  ArcSide map_side(const GaussDiagram& old_d, ArcSide s) const;
};

struct CanonicalResult {
  GaussDiagram diagram;
  CanonicalMap map;
};

// Deterministic relabeling: lexicographically minimal over circle orderings,
// rotations and chord renamings. Two diagrams equal up to relabeling and
// rotation canonicalize identically.
CanonicalResult canonicalize_full(const GaussDiagram& d);
GaussDiagram canonicalize(const GaussDiagram& d);

// Canonical diagram plus the decoration transported through the relabeling.
struct CanonicalDecorated {
  GaussDiagram diagram;
  Decoration deco;
  CanonicalMap map;
};
CanonicalDecorated canonicalize_decorated(const GaussDiagram& d, const Decoration& deco);

// Encoded canonical form; equal strings iff diagrams are equal up to
// relabeling and rotation.
std::string canonical_key(const GaussDiagram& d);

// Canonical key extended with the color partition pattern (color names
// abstracted away), for "equal up to color renaming" comparisons.
std::string canonical_key(const GaussDiagram& d, const Decoration& deco);

}  // namespace gd3
