#include <random>
#include <set>

#include "doctest.h"
#include "gd3/io.hpp"
#include "gd3/tracing.hpp"
#include "support/corpus.hpp"

using namespace gd3;

namespace {

GaussDiagram s3() { return builtin_example("s3").diagram; }
GaussDiagram lens51() { return builtin_example("lens:5:1").diagram; }

GaussDiagram one_bubble() {
  GaussDiagram d;
  d.plus_circles.push_back(Circle{});
  return d;
}

}  // namespace

TEST_CASE("trace_cycles on the sphere diagram: one orbit of all four sides") {
  CycleSet cs = trace_cycles(s3());
  REQUIRE(cs.size() == 1);
  CHECK(cs.orbits[0].size() == 4);
}

TEST_CASE("trace_cycles on lens(5,1): five orbits of four sides") {
  CycleSet cs = trace_cycles(lens51());
  REQUIRE(cs.size() == 5);
  for (const auto& orbit : cs.orbits) CHECK(orbit.size() == 4);
}

TEST_CASE("a chordless circle contributes two singleton orbits") {
  CycleSet cs = trace_cycles(one_bubble());
  REQUIRE(cs.size() == 2);
  CHECK(cs.orbits[0].size() == 1);
  CHECK(cs.orbits[1].size() == 1);
}

TEST_CASE("the transition permutation is a bijection") {
  std::mt19937 rng(11);
  for (int i = 0; i < 150; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    ArcTable table(d);
    auto perm = transition_permutation(d, table);
    std::set<std::uint32_t> targets(perm.begin(), perm.end());
    CHECK(targets.size() == perm.size());
  }
}

TEST_CASE("edge colorings") {
  GaussDiagram d = s3();
  Decoration deco = fresh_decoration(d);
  auto pairs = infer_edge_colorings(d, deco);
  for (auto& [arc, cp] : pairs) CHECK(cp.co == cp.counter);  // single cycle

  // bubble: whole-circle arc colored by its two singleton cycles, by side
  GaussDiagram b = one_bubble();
  Decoration bd = fresh_decoration(b);
  auto bp = infer_edge_colorings(b, bd);
  ArcId whole{CircleId{Family::Plus, 0}, kWholeCircle};
  CHECK(bp.at(whole).co != bp.at(whole).counter);

  GaussDiagram l = lens51();
  Decoration ld = fresh_decoration(l);
  for (auto& [arc, cp] : infer_edge_colorings(l, ld)) CHECK(cp.co != cp.counter);
}

TEST_CASE("chord color equalities hold on traced decorations") {
  std::mt19937 rng(12);
  for (int i = 0; i < 150; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    Decoration deco = testsupport::random_decoration(rng, d);
    CHECK(check_chord_color_equalities(d, deco).ok());
  }
}

TEST_CASE("chord color equalities flag a perturbed decoration") {
  GaussDiagram d = lens51();
  Decoration deco = fresh_decoration(d);
  // move one side between differently colored cycles
  std::swap(deco.cycles[0].front(), deco.cycles[1].front());
  ChordColorReport rep = check_chord_color_equalities(d, deco);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("ribbon map Euler characteristic and boundary counts") {
  RibbonMap m = build_ribbon_map(s3());
  CHECK(m.vertex_count == 1);
  CHECK(m.edge_count == 2);
  CHECK(m.euler_characteristic() == -1);
  CHECK(m.boundary_components() == 1);

  CHECK(build_ribbon_map(lens51()).euler_characteristic() == -5);

  GaussDiagram empty;
  RibbonMap em = build_ribbon_map(empty);
  CHECK(em.euler_characteristic() == 0);
  CHECK(em.boundary_components() == 0);
}

TEST_CASE("ribbon map boundary orbits coincide with traced cycles") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    CHECK(build_ribbon_map(d).boundary_components() == trace_cycles(d).size());
  }
}
