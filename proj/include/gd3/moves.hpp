#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gd3/diagram.hpp"

namespace gd3 {

// Which coloring-pair entries of the two arcs share the color that enables
// an R-move: A1/A2 = first/second entry of the plus arc's pair, B1/B2 of the
// minus arc's. The entry fixes the side (1 = Co, 2 = Counter) and the
// endpoint order of the inserted chords.
enum class RCase { A1B1, A1B2, A2B1, A2B2 };

std::string to_string(RCase c);

struct EpsMove {
  CircleId circle;
};

struct RMove {
  ArcId plus_arc;
  ArcId minus_arc;
  RCase rcase = RCase::A1B1;
};

struct RInverseMove {
  ChordId positive_chord = 0;
  ChordId negative_chord = 0;
};

struct SlideMove {
  CircleId slider;
  CircleId along;
  ArcId slider_arc;
  ArcId along_arc;
  bool reversed = false;
};

struct SlideInverseMove {
  CircleId slider;
  CircleId along;
  ArcId along_arc;               // the arc of `along` the copy omits
  bool reversed = false;
  std::vector<ChordId> copied;   // chords of `slider` forming the copy
};

struct StabMove {
  ColorId color = 0;   // ignored when the diagram is empty
  int sign = +1;
};

struct StabInverseMove {
  CircleId plus_circle;
  CircleId minus_circle;
};

struct BubbleMove {
  Family family = Family::Plus;
  ColorId existing_color = 0;
  std::optional<ColorId> new_color;  // fresh id when absent
  Side new_side = Side::Co;          // which whole-circle side is new
};

struct BubbleInverseMove {
  CircleId circle;
};

using MoveSpec = std::variant<EpsMove, RMove, RInverseMove, SlideMove, SlideInverseMove,
                              StabMove, StabInverseMove, BubbleMove, BubbleInverseMove>;

using Script = std::vector<MoveSpec>;

struct MoveResult {
  GaussDiagram diagram;
  Decoration deco;
  std::vector<ChordId> new_chords;   // chords created by the move, if any
};

MoveResult eps_move(const GaussDiagram& d, const Decoration& deco, CircleId circle);

MoveResult r_move(const GaussDiagram& d, const Decoration& deco, ArcId plus_arc,
                  ArcId minus_arc, RCase rcase);

MoveResult r_inverse(const GaussDiagram& d, const Decoration& deco, ChordId positive_chord,
                     ChordId negative_chord);

MoveResult h_move(const GaussDiagram& d, const Decoration& deco, const SlideMove& spec);

MoveResult h_inverse(const GaussDiagram& d, const Decoration& deco,
                     const SlideInverseMove& spec);

MoveResult s_move(const GaussDiagram& d, const Decoration& deco, ColorId color, int sign);

MoveResult s_inverse(const GaussDiagram& d, const Decoration& deco, CircleId plus_circle,
                     CircleId minus_circle);

MoveResult b_move(const GaussDiagram& d, const Decoration& deco, const BubbleMove& spec);

MoveResult b_inverse(const GaussDiagram& d, const Decoration& deco, CircleId circle);

MoveResult apply_move(const GaussDiagram& d, const Decoration& deco, const MoveSpec& spec);

struct ScriptResult {
  GaussDiagram diagram;
  Decoration deco;
  Script script;
};

ScriptResult apply_script(const GaussDiagram& d, const Decoration& deco, const Script& script);

// The 4-move sequence (B, H, H^-1, B^-1) whose net effect equals eps_move on
// the circle; empty script for a chordless circle. The executed result is
// returned along with the script.
ScriptResult eps_via_hb(const GaussDiagram& d, const Decoration& deco, CircleId circle);

// Applies R-moves between same-colored cycles until every color covers
// exactly one cycle. Errors when a multi-cycle color offers no plus-side /
// minus-side cycle pair to merge.
ScriptResult normalize_colors(const GaussDiagram& d, const Decoration& deco);

}  // namespace gd3
