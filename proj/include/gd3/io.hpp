#pragma once

#include <map>
#include <string>
#include <vector>

#include "gd3/diagram.hpp"
#include "gd3/moves.hpp"

namespace gd3 {

struct ParseError : DomainError {
  int line = 0;
  int column = 0;
  ParseError(const std::string& what, int line, int column);
};

// Names as written in the file, for resolving CLI arguments.
struct NameTable {
  std::map<std::string, ChordId> chords;
  std::map<std::string, CircleId> circles;
  std::map<std::string, ColorId> colors;

  std::map<ChordId, std::string> chord_names;  // inverse view

  void add_chord(const std::string& name, ChordId id);
  void add_circle(const std::string& name, CircleId id);
  void add_color(const std::string& name, ColorId id);
};

struct ParseResult {
  GaussDiagram diagram;
  Decoration deco;
  NameTable names;
};

// Text format:
//   gd v1
//   chord <id> <+|->
//   plus <name> = <id>*
//   minus <name> = <id>*
//   colors = <color-id per cycle in canonical cycle order>
// '#' starts a comment. Missing colors line means all-distinct fresh colors.
ParseResult parse(const std::string& text);

// Canonical text; parse(serialize(x)) == canonicalize(x). The colors line is
// omitted when all cycles have distinct colors.
std::string serialize(const GaussDiagram& d, const Decoration& deco);

// Text preserving the stored labeling and circle order (no canonicalization);
// used where the construction order is meaningful, e.g. the example command.
std::string serialize_raw(const GaussDiagram& d, const Decoration& deco);

// Script text format ("gdscript v1", one move per line). Names resolve
// against the running diagram state: circles p<i>/m<i> by current index,
// chords by the name table. Chords and colors created mid-script are named
// n1, n2, ... and t1, t2, ... in creation order on both emit and replay.
std::string serialize_script(const Script& script, const GaussDiagram& initial,
                             const Decoration& initial_deco, const NameTable& names);
Script parse_script(const std::string& text, const GaussDiagram& initial,
                    const Decoration& initial_deco, const NameTable& names);

std::vector<std::string> builtin_names();

// s3 | lens:p:q | poincare-relators | hempel-relators | solid-torus.
// The relator examples carry reconstructed plus-circle orders (the paper's
// figures fix them pictorially); their algebraic outputs are faithful.
ParseResult builtin_example(const std::string& name);

// DOT of the chord-contracted graph: vertices = chords with signs, edges =
// arcs tagged by family; chordless circles listed as comments.
std::string export_dot(const GaussDiagram& d);

// Two-row picture of the diagram itself.
std::string export_svg(const GaussDiagram& d);

// Combinatorial reconstruction of the Heegaard picture: hole pairing,
// attachment points per plus-circle copy, strand routing. Requires a
// connected diagram with g+ = g- = g = g_S.
std::string export_heegaard(const GaussDiagram& d);

}  // namespace gd3
