#pragma once

#include <string>
#include <vector>

#include "gd3/bigint.hpp"
#include "gd3/diagram.hpp"

namespace gd3 {

// Group presentation: words are signed 1-based generator references
// (+i / -i for generator i-1). Only free cancellation is ever applied.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;

  std::string to_text() const;  // < g1, g2 | g1^-4 g2 g1 g2, ... >
};

// Integer matrix; for intersection matrices rows index plus circles
// (generators) and columns index minus circles (relators).
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> entries;  // row-major

  BigInt& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  static IntMatrix zero(std::size_t r, std::size_t c);
  std::string to_text() const;
};

// Determinant via fraction-free elimination; square input only.
BigInt determinant(const IntMatrix& m);

struct SmithResult {
  IntMatrix diagonal;
  std::vector<BigInt> factors;  // nonzero diagonal entries, d1 | d2 | ...
};

// Diagonal form under unimodular row/column transformations, d_i >= 0 with
// the divisibility chain; product of factors preserves |det| for square
// nonsingular input.
SmithResult smith_normal_form(const IntMatrix& m);

// Presentation of pi1 for a closed-looking diagram: one generator per plus
// circle, relator j reads minus circle j's chord sequence. Requires a
// connected diagram with g+ = g- = g and non-decorated genus equal to g.
Presentation pi1_closed(const GaussDiagram& d);

// True iff pi1_closed's preconditions hold; reason set otherwise.
bool pi1_closed_applicable(const GaussDiagram& d, std::string* reason = nullptr);

// Presentation from the spanning-tree reading of the diagram's graph
// (vertices = chords plus one synthetic vertex per chordless circle, edges =
// arcs). Requires all cycles distinctly colored and the graph connected.
Presentation pi1_general(const GaussDiagram& d, const Decoration& deco);

// a_ij = signed chord count between plus circle i and minus circle j.
IntMatrix intersection_matrix(const GaussDiagram& d);

struct H1Result {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_text() const;  // "trivial", "Z/5", "Z + Z/2", ...
};

// First homology of the associated manifold, valid for any decoration whose
// associated manifold is connected (extended graph with one tube edge per
// extra same-colored cycle; relations from per-color cycle sums and from the
// circles). Coincides with the abelianized pi1_general when all cycles are
// distinctly colored, and with the intersection-matrix cokernel in the
// closed case.
H1Result h1(const GaussDiagram& d, const Decoration& deco);

// |det| of the intersection matrix equal to 1; cross-checked against h1
// triviality (the two must agree). pi1_closed preconditions required.
bool is_homology_sphere(const GaussDiagram& d);

}  // namespace gd3
