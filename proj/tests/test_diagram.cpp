#include <algorithm>
#include <random>

#include "doctest.h"
#include "gd3/diagram.hpp"
#include "gd3/io.hpp"
#include "gd3/tracing.hpp"
#include "support/corpus.hpp"

using namespace gd3;

namespace {

GaussDiagram s3() { return builtin_example("s3").diagram; }
GaussDiagram lens(long p, long q) {
  return builtin_example("lens:" + std::to_string(p) + ":" + std::to_string(q)).diagram;
}

}  // namespace

TEST_CASE("validate accepts the one-chord sphere diagram") {
  CHECK(validate(s3()).ok());
}

TEST_CASE("validate flags a chord listed twice on one circle") {
  GaussDiagram d = s3();
  d.plus_circles[0].endpoints.push_back(0);  // duplicate endpoint
  ValidationReport rep = validate(d);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("validate flags a decoration whose cycles disagree with tracing") {
  GaussDiagram d = lens(5, 1);
  Decoration deco = fresh_decoration(d);
  REQUIRE(deco.cycle_count() == 5);
  std::swap(deco.cycles[0], deco.cycles[1]);  // break canonical cycle order
  CHECK_FALSE(validate(d, deco).ok());

  Decoration perturbed = fresh_decoration(d);
  std::swap(perturbed.cycles[0].front(), perturbed.cycles[1].front());
  CHECK_FALSE(validate(d, perturbed).ok());
}

TEST_CASE("arcs_of") {
  CHECK(arcs_of(s3(), CircleId{Family::Plus, 0}).size() == 1);
  CHECK(arcs_of(lens(5, 1), CircleId{Family::Minus, 0}).size() == 5);

  GaussDiagram bubble;
  bubble.plus_circles.push_back(Circle{});
  auto arcs = arcs_of(bubble, CircleId{Family::Plus, 0});
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].is_whole());

  CHECK_THROWS_AS(arcs_of(bubble, CircleId{Family::Minus, 0}), DomainError);
}

TEST_CASE("canonicalize is stable under chord renaming and rotation") {
  GaussDiagram a = lens(5, 1);

  GaussDiagram b;  // same diagram, renamed chords, rotated circles
  std::vector<ChordId> rename = {7, 3, 9, 0, 5};
  b.plus_circles.resize(1);
  b.minus_circles.resize(1);
  for (std::size_t i = 0; i < 5; ++i) {
    std::size_t ri = (i + 2) % 5;
    b.plus_circles[0].endpoints.push_back(rename[ri]);
    b.minus_circles[0].endpoints.push_back(rename[(i + 4) % 5]);
  }
  for (ChordId h : rename) b.chord_signs[h] = +1;
  b.next_chord = 10;

  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(lens(5, 2)));

  GaussDiagram c1 = canonicalize(a);
  CHECK(canonical_key(c1) == canonical_key(a));
  CHECK(canonicalize(c1).plus_circles == c1.plus_circles);
}

namespace {

// Brute-force equivalence: try every chord bijection and circle
// rotation/permutation. Oracle for canonical_key on small diagrams.
bool equivalent_by_search(const GaussDiagram& a, const GaussDiagram& b) {
  if (a.chord_count() != b.chord_count()) return false;
  if (a.plus_count() != b.plus_count() || a.minus_count() != b.minus_count()) return false;
  std::vector<ChordId> av, bv;
  for (auto& [h, s] : a.chord_signs) av.push_back(h);
  for (auto& [h, s] : b.chord_signs) bv.push_back(h);
  std::sort(bv.begin(), bv.end());
  auto circles_match = [](const std::vector<Circle>& xs, const std::vector<Circle>& ys,
                          const std::map<ChordId, ChordId>& f) {
    std::vector<bool> used(ys.size(), false);
    for (const Circle& x : xs) {
      bool placed = false;
      for (std::size_t j = 0; j < ys.size() && !placed; ++j) {
        if (used[j] || ys[j].size() != x.size()) continue;
        std::size_t n = x.size();
        if (n == 0) {
          used[j] = placed = true;
          break;
        }
        for (std::size_t r = 0; r < n && !placed; ++r) {
          bool ok = true;
          for (std::size_t i = 0; i < n && ok; ++i)
            ok = f.at(x.endpoints[i]) == ys[j].endpoints[(i + r) % n];
          if (ok) used[j] = placed = true;
        }
      }
      if (!placed) return false;
    }
    return true;
  };
  do {
    std::map<ChordId, ChordId> f;
    bool signs_ok = true;
    for (std::size_t i = 0; i < av.size(); ++i) {
      f[av[i]] = bv[i];
      if (a.sign_of(av[i]) != b.sign_of(bv[i])) signs_ok = false;
    }
    if (signs_ok && circles_match(a.plus_circles, b.plus_circles, f) &&
        circles_match(a.minus_circles, b.minus_circles, f))
      return true;
  } while (std::next_permutation(bv.begin(), bv.end()));
  return false;
}

GaussDiagram scrambled_copy(std::mt19937& rng, const GaussDiagram& d) {
  std::vector<ChordId> ids;
  for (auto& [h, s] : d.chord_signs) ids.push_back(h);
  std::vector<ChordId> renamed = ids;
  std::shuffle(renamed.begin(), renamed.end(), rng);
  std::map<ChordId, ChordId> f;
  for (std::size_t i = 0; i < ids.size(); ++i) f[ids[i]] = renamed[i];
  GaussDiagram out;
  for (auto& [h, s] : d.chord_signs) out.chord_signs[f[h]] = s;
  out.next_chord = d.next_chord;
  auto rot = [&](const Circle& c) {
    Circle r;
    if (c.size() == 0) return r;
    std::size_t k = rng() % c.size();
    for (std::size_t i = 0; i < c.size(); ++i)
      r.endpoints.push_back(f.at(c.endpoints[(i + k) % c.size()]));
    return r;
  };
  for (const Circle& c : d.plus_circles) out.plus_circles.push_back(rot(c));
  for (const Circle& c : d.minus_circles) out.minus_circles.push_back(rot(c));
  std::shuffle(out.plus_circles.begin(), out.plus_circles.end(), rng);
  std::shuffle(out.minus_circles.begin(), out.minus_circles.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("canonical_key agrees with brute-force equivalence search") {
  std::mt19937 rng(20240501);
  testsupport::CorpusParams small{5, 2};
  for (int i = 0; i < 60; ++i) {
    GaussDiagram a = testsupport::random_diagram(rng, small);
    GaussDiagram b = scrambled_copy(rng, a);
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK(equivalent_by_search(a, b));

    GaussDiagram c = testsupport::random_diagram(rng, small);
    bool keys_equal = canonical_key(a) == canonical_key(c);
    CHECK(keys_equal == equivalent_by_search(a, c));
  }
}

TEST_CASE("endpoint counts per family both equal the chord count") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    std::size_t p = 0, m = 0;
    for (const Circle& c : d.plus_circles) p += c.size();
    for (const Circle& c : d.minus_circles) m += c.size();
    CHECK(p == d.chord_count());
    CHECK(m == d.chord_count());
    CHECK(validate(d).ok());
  }
}

TEST_CASE("|h| - |c| is even on every valid diagram") {
  std::mt19937 rng(8);
  for (int i = 0; i < 200; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    CycleSet cs = trace_cycles(d);
    CHECK((d.chord_count() + cs.size()) % 2 == 0);
  }
}
