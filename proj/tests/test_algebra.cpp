#include <random>

#include "doctest.h"
#include "gd3/algebra.hpp"
#include "gd3/io.hpp"
#include "gd3/moves.hpp"
#include "gd3/topology.hpp"
#include "gd3/tracing.hpp"
#include "support/corpus.hpp"

using namespace gd3;

namespace {

IntMatrix make(std::size_t r, std::size_t c, std::vector<long long> vals) {
  IntMatrix m = IntMatrix::zero(r, c);
  for (std::size_t i = 0; i < vals.size(); ++i) m.entries[i] = BigInt(vals[i]);
  return m;
}

}  // namespace

TEST_CASE("bigint arithmetic matches long long on small values") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  for (int i = 0; i < 500; ++i) {
    long long a = dist(rng), b = dist(rng);
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
    CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    if (b != 0) {
      auto dm = BigInt(a).divmod(BigInt(b));
      CHECK(dm.quot == BigInt(a / b));
      CHECK(dm.rem == BigInt(a % b));
    }
    CHECK((BigInt(a) < BigInt(b)) == (a < b));
    CHECK(BigInt(a).to_string() == std::to_string(a));
  }
  // multiplication far past 64 bits survives a round trip through strings
  BigInt big = BigInt::from_string("123456789012345678901234567890");
  CHECK((big * big).to_string() == "15241578753238836750495351562536198787501905199875019052100");
}

TEST_CASE("smith normal form on the spec examples") {
  SmithResult r1 = smith_normal_form(make(1, 1, {5}));
  REQUIRE(r1.factors.size() == 1);
  CHECK(r1.factors[0] == BigInt(5));

  SmithResult r2 = smith_normal_form(make(2, 2, {-1, 1, 0, -1}));
  REQUIRE(r2.factors.size() == 2);
  CHECK(r2.factors[0] == BigInt(1));
  CHECK(r2.factors[1] == BigInt(1));

  SmithResult r3 = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
  REQUIRE(r3.factors.size() == 2);
  CHECK(r3.factors[0] == BigInt(1));
  CHECK(r3.factors[1] == BigInt(6));
}

TEST_CASE("smith normal form properties") {
  std::mt19937 rng(32);
  std::uniform_int_distribution<long long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int iter = 0; iter < 150; ++iter) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m = IntMatrix::zero(r, c);
    for (auto& e : m.entries) e = BigInt(entry(rng));
    SmithResult s = smith_normal_form(m);
    // divisibility chain, nonnegative factors
    for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) {
      CHECK(s.factors[i] >= BigInt(0));
      CHECK((s.factors[i + 1] % s.factors[i]).is_zero());
    }
    if (r == c) {
      BigInt det = determinant(m);
      BigInt prod(1);
      bool full_rank = s.factors.size() == r;
      for (const BigInt& f : s.factors) prod = prod * f;
      if (full_rank)
        CHECK(prod == det.abs());
      else
        CHECK(det.is_zero());
    }
    // invariance under row/column permutation
    IntMatrix p = IntMatrix::zero(r, c);
    std::vector<std::size_t> rp(r), cp(c);
    for (std::size_t i = 0; i < r; ++i) rp[i] = i;
    for (std::size_t j = 0; j < c; ++j) cp[j] = j;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p.at(i, j) = m.at(rp[i], cp[j]);
    SmithResult sp = smith_normal_form(p);
    CHECK(sp.factors == s.factors);
  }
}

TEST_CASE("pi1 of the closed examples") {
  Presentation lens = pi1_closed(builtin_example("lens:5:1").diagram);
  CHECK(lens.to_text() == "< g1 | g1^5 >");

  Presentation s3 = pi1_closed(builtin_example("s3").diagram);
  CHECK(s3.to_text() == "< g1 | g1 >");

  Presentation poin = pi1_closed(builtin_example("poincare-relators").diagram);
  CHECK(poin.to_text() == "< g1, g2 | g1^-4 g2 g1 g2, g1 g2^-2 g1 g2 >");

  Presentation hem = pi1_closed(builtin_example("hempel-relators").diagram);
  CHECK(hem.to_text() == "< g1, g2 | g1 g2^-1 g1^-1 g2^2 g1^-1 g2^-1, g1 g2 g1 g2^-1 g1^-1 g2^-1 >");
}

TEST_CASE("pi1_closed preconditions") {
  CHECK_THROWS_AS(pi1_closed(builtin_example("solid-torus").diagram), DomainError);
  GaussDiagram empty;
  CHECK_THROWS_AS(pi1_closed(empty), DomainError);
}

TEST_CASE("pi1 general form on the sphere diagram") {
  GaussDiagram d = builtin_example("s3").diagram;
  Decoration deco = fresh_decoration(d);
  Presentation p = pi1_general(d, deco);
  CHECK(p.generators.size() == 2);  // both arcs are loops off the one-vertex tree
  CHECK(p.relators.size() == 3);    // one cycle + two circles
  CHECK(h1(d, deco).trivial());
}

TEST_CASE("pi1 general form requires distinct colors") {
  auto st = builtin_example("solid-torus");
  CHECK_THROWS_AS(pi1_general(st.diagram, st.deco), DomainError);
}

TEST_CASE("normalized solid torus has H1 = Z") {
  auto st = builtin_example("solid-torus");
  ScriptResult res = normalize_colors(st.diagram, st.deco);
  H1Result h = h1(res.diagram, res.deco);
  CHECK(h.free_rank == 1);
  CHECK(h.torsion.empty());
  Presentation p = pi1_general(res.diagram, res.deco);
  CHECK(p.generators.size() > 0);
}

TEST_CASE("a single chordless circle with distinct colors is a degenerate general case") {
  GaussDiagram d;
  d.plus_circles.push_back(Circle{});
  Decoration deco = fresh_decoration(d);
  Presentation p = pi1_general(d, deco);
  CHECK(p.generators.size() == 1);
  CHECK(p.relators.size() == 3);  // two singleton cycles + the circle itself
  CHECK(h1(d, deco).trivial());
}

TEST_CASE("intersection matrices of the examples") {
  IntMatrix lens = intersection_matrix(builtin_example("lens:5:1").diagram);
  CHECK(lens.to_text() == "5\n");

  IntMatrix hem = intersection_matrix(builtin_example("hempel-relators").diagram);
  CHECK(hem.to_text() == "-1 1\n0 -1\n");
  CHECK(determinant(hem).abs() == BigInt(1));

  IntMatrix poin = intersection_matrix(builtin_example("poincare-relators").diagram);
  CHECK(poin.to_text() == "-3 2\n2 -1\n");
  CHECK(determinant(poin) == BigInt(-1));
}

TEST_CASE("h1 of the examples") {
  for (const char* name : {"lens:5:1", "lens:5:2"}) {
    auto pr = builtin_example(name);
    H1Result h = h1(pr.diagram, pr.deco);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == BigInt(5));
    CHECK(h.to_text() == "Z/5");
  }
  auto poin = builtin_example("poincare-relators");
  CHECK(h1(poin.diagram, poin.deco).trivial());
}

TEST_CASE("homology sphere detection") {
  CHECK(is_homology_sphere(builtin_example("hempel-relators").diagram));
  CHECK(is_homology_sphere(builtin_example("poincare-relators").diagram));
  CHECK(is_homology_sphere(builtin_example("s3").diagram));
  CHECK_FALSE(is_homology_sphere(builtin_example("lens:5:1").diagram));
}

TEST_CASE("abelianized closed presentation is the intersection matrix") {
  std::mt19937 rng(34);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 40; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    if (!pi1_closed_applicable(d)) continue;
    ++tested;
    Presentation p = pi1_closed(d);
    IntMatrix a = intersection_matrix(d);
    REQUIRE(a.rows == p.generators.size());
    REQUIRE(a.cols == p.relators.size());
    for (std::size_t j = 0; j < p.relators.size(); ++j) {
      std::vector<long long> sums(p.generators.size(), 0);
      for (int letter : p.relators[j]) sums[std::abs(letter) - 1] += letter > 0 ? 1 : -1;
      for (std::size_t i2 = 0; i2 < sums.size(); ++i2) CHECK(a.at(i2, j) == BigInt(sums[i2]));
    }
  }
  CHECK(tested > 5);
}

TEST_CASE("closed-case h1 equals the intersection-matrix cokernel") {
  std::mt19937 rng(33);
  int tested = 0;
  for (int i = 0; i < 600 && tested < 60; ++i) {
    GaussDiagram d = testsupport::random_diagram(rng);
    if (!pi1_closed_applicable(d)) continue;
    ++tested;
    H1Result via_tree = h1(d, fresh_decoration(d));
    SmithResult snf = smith_normal_form(intersection_matrix(d));
    std::size_t rank = d.plus_count() - snf.factors.size();
    std::vector<BigInt> torsion;
    for (const BigInt& f : snf.factors)
      if (f > BigInt(1)) torsion.push_back(f);
    CHECK(via_tree.free_rank == rank);
    CHECK(via_tree.torsion == torsion);
  }
  CHECK(tested > 10);
}
