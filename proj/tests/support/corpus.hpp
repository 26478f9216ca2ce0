#pragma once

// Deterministic random diagrams for the property and acceptance suites.

#include <random>
#include <vector>

#include "gd3/diagram.hpp"
#include "gd3/tracing.hpp"

namespace gd3::testsupport {

struct CorpusParams {
  std::size_t max_chords = 12;
  std::size_t max_circles = 4;  // per family
};

inline GaussDiagram random_diagram(std::mt19937& rng, const CorpusParams& p = {}) {
  std::uniform_int_distribution<std::size_t> nchords(0, p.max_chords);
  std::uniform_int_distribution<std::size_t> ncircles(1, p.max_circles);
  GaussDiagram d;
  d.plus_circles.resize(ncircles(rng));
  d.minus_circles.resize(ncircles(rng));
  std::size_t n = nchords(rng);
  for (std::size_t i = 0; i < n; ++i) {
    ChordId h = d.fresh_chord(rng() % 2 ? +1 : -1);
    d.plus_circles[rng() % d.plus_circles.size()].endpoints.push_back(h);
    d.minus_circles[rng() % d.minus_circles.size()].endpoints.push_back(h);
  }
  for (auto* fam : {&d.plus_circles, &d.minus_circles})
    for (Circle& c : *fam) std::shuffle(c.endpoints.begin(), c.endpoints.end(), rng);
  return d;
}

// Fresh decoration with a few random color merges mixed in.
inline Decoration random_decoration(std::mt19937& rng, const GaussDiagram& d,
                                    double merge_prob = 0.5) {
  Decoration deco = fresh_decoration(d);
  std::bernoulli_distribution merge(merge_prob);
  while (deco.used_colors().size() >= 2 && merge(rng)) {
    auto used = deco.used_colors();
    ColorId a = used[rng() % used.size()];
    ColorId b = used[rng() % used.size()];
    if (a == b) continue;
    for (ColorId& c : deco.colors)
      if (c == a) c = b;
  }
  return deco;
}

}  // namespace gd3::testsupport
