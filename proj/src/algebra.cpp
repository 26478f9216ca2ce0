#include "gd3/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gd3/topology.hpp"
#include "gd3/tracing.hpp"

namespace gd3 {

std::string Presentation::to_text() const {
  std::ostringstream os;
  os << "< ";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) os << ", ";
    os << generators[i];
  }
  os << " | ";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    if (r) os << ", ";
    const auto& w = relators[r];
    if (w.empty()) os << "1";
    std::size_t i = 0;
    bool first = true;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      int gen = std::abs(w[i]) - 1;
      long long power = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
      if (!first) os << " ";
      os << generators[gen];
      if (power != 1) os << "^" << power;
      first = false;
      i = j;
    }
  }
  os << " >";
  return os.str();
}

IntMatrix IntMatrix::zero(std::size_t r, std::size_t c) {
  IntMatrix m;
  m.rows = r;
  m.cols = c;
  m.entries.assign(r * c, BigInt(0));
  return m;
}

std::string IntMatrix::to_text() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) os << " ";
      os << at(r, c).to_string();
    }
    os << "\n";
  }
  return os.str();
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw DomainError("determinant of a non-square matrix");
  std::size_t n = m.rows;
  if (n == 0) return BigInt(1);
  IntMatrix a = m;
  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a.at(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return BigInt(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = num / prev;  // Bareiss: division is exact
      }
      a.at(i, k) = BigInt(0);
    }
    prev = a.at(k, k);
  }
  BigInt det = a.at(n - 1, n - 1);
  return sign > 0 ? det : -det;
}

SmithResult smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t R = a.rows, C = a.cols;
  std::size_t t = 0;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < C; ++c) std::swap(a.at(i, c), a.at(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < R; ++r) std::swap(a.at(r, i), a.at(r, j));
  };
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t c = 0; c < C; ++c) a.at(dst, c) = a.at(dst, c) - q * a.at(src, c);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t r = 0; r < R; ++r) a.at(r, dst) = a.at(r, dst) - q * a.at(r, src);
  };

  while (t < std::min(R, C)) {
    // smallest nonzero entry of the working submatrix to the pivot slot
    std::size_t bi = t, bj = t;
    bool found = false;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (!a.at(i, j).is_zero() &&
            (!found || a.at(i, j).abs() < a.at(bi, bj).abs())) {
          bi = i;
          bj = j;
          found = true;
        }
    if (!found) break;
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a.at(i, t).is_zero()) continue;
        BigInt q = a.at(i, t) / a.at(t, t);
        row_op(i, t, q);
        if (!a.at(i, t).is_zero()) {
          swap_rows(i, t);  // strictly smaller remainder becomes the pivot
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a.at(t, j).is_zero()) continue;
        BigInt q = a.at(t, j) / a.at(t, t);
        col_op(j, t, q);
        if (!a.at(t, j).is_zero()) {
          swap_cols(j, t);
          clean = false;
        }
      }
      if (!clean) continue;

      // divisibility: pivot must divide the rest of the submatrix
      for (std::size_t i = t + 1; i < R && clean; ++i)
        for (std::size_t j = t + 1; j < C && clean; ++j)
          if (!(a.at(i, j) % a.at(t, t)).is_zero()) {
            // fold row i into row t and restart the cleaning loop
            BigInt minus_one(-1);
            row_op(t, i, minus_one);  // row t += row i
            clean = false;
          }
    }
    if (a.at(t, t) < BigInt(0))
      for (std::size_t c = 0; c < C; ++c) a.at(t, c) = -a.at(t, c);
    ++t;
  }

  SmithResult res;
  res.diagonal = IntMatrix::zero(R, C);
  res.factors.clear();
  for (std::size_t i = 0; i < t; ++i) {
    res.diagonal.at(i, i) = a.at(i, i);
    res.factors.push_back(a.at(i, i));
  }
  return res;
}

bool pi1_closed_applicable(const GaussDiagram& d, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (!validate(d).ok()) return fail("invalid diagram");
  if (d.plus_count() != d.minus_count()) return fail("family sizes differ");
  if (d.plus_count() == 0) return fail("empty diagram");
  if (!diagram_connected(d)) return fail("diagram is disconnected");
  Decoration fresh = fresh_decoration(d);
  long long gs = genus(d, fresh);
  if (gs != static_cast<long long>(d.plus_count()))
    return fail("genus " + std::to_string(gs) + " does not match family size " +
                std::to_string(d.plus_count()));
  return true;
}

Presentation pi1_closed(const GaussDiagram& d) {
  std::string why;
  if (!pi1_closed_applicable(d, &why)) throw DomainError("pi1 (closed form): " + why);

  auto ends = chord_ends(d);
  Presentation p;
  for (std::uint32_t i = 0; i < d.plus_count(); ++i)
    p.generators.push_back("g" + std::to_string(i + 1));
  for (std::uint32_t j = 0; j < d.minus_count(); ++j) {
    std::vector<int> word;
    for (ChordId h : d.minus_circles[j].endpoints) {
      int k = static_cast<int>(ends.at(h).plus_circle.index) + 1;
      word.push_back(d.sign_of(h) > 0 ? k : -k);
    }
    p.relators.push_back(std::move(word));
  }
  return p;
}

namespace {

// Graph underlying the general pi1/H1 computations: vertices are chords plus
// one synthetic vertex per chordless circle; arcs are the edges.
struct DiagramGraph {
  std::map<ChordId, std::uint32_t> chord_vertex;
  std::map<CircleId, std::uint32_t> synthetic_vertex;  // chordless circles
  std::size_t vertex_count = 0;

  struct Edge {
    std::uint32_t u = 0, v = 0;
    ArcId arc;          // meaningful when is_arc
    bool is_arc = true; // false: tube edge added for repeated colors
  };
  std::vector<Edge> edges;
  std::map<ArcId, std::uint32_t> arc_edge;  // arc -> edge index

  std::uint32_t vertex_of_arc_tail(const GaussDiagram& d, const ArcId& a) const {
    if (a.is_whole()) return synthetic_vertex.at(a.circle);
    return chord_vertex.at(d.circle(a.circle).endpoints[a.position]);
  }
};

DiagramGraph build_graph(const GaussDiagram& d) {
  DiagramGraph g;
  for (const auto& [h, sg] : d.chord_signs)
    g.chord_vertex.emplace(h, static_cast<std::uint32_t>(g.chord_vertex.size()));
  g.vertex_count = g.chord_vertex.size();
  for (Family f : {Family::Plus, Family::Minus})
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci)
      if (d.family(f)[ci].chordless())
        g.synthetic_vertex.emplace(CircleId{f, ci},
                                   static_cast<std::uint32_t>(g.vertex_count++));

  for (const ArcId& a : all_arcs(d)) {
    DiagramGraph::Edge e;
    e.arc = a;
    e.is_arc = true;
    if (a.is_whole()) {
      e.u = e.v = g.synthetic_vertex.at(a.circle);
    } else {
      const auto& eps = d.circle(a.circle).endpoints;
      e.u = g.chord_vertex.at(eps[a.position]);
      e.v = g.chord_vertex.at(eps[(a.position + 1) % eps.size()]);
    }
    g.arc_edge[a] = static_cast<std::uint32_t>(g.edges.size());
    g.edges.push_back(e);
  }
  return g;
}

// Spanning forest over the listed edges; returns per-edge tree flags and the
// number of connected components.
std::pair<std::vector<bool>, std::size_t> spanning_forest(std::size_t vertices,
                                                          const std::vector<DiagramGraph::Edge>& edges) {
  std::vector<std::uint32_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> in_tree(edges.size(), false);
  std::size_t components = vertices;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::uint32_t ru = find(edges[i].u), rv = find(edges[i].v);
    if (ru != rv) {
      parent[ru] = rv;
      in_tree[i] = true;
      --components;
    }
  }
  return {in_tree, components};
}

}  // namespace

Presentation pi1_general(const GaussDiagram& d, const Decoration& deco) {
  ValidationReport rep = validate(d, deco);
  if (!rep.ok()) throw DomainError("pi1 (general form): " + rep.problems[0]);
  if (color_excess(deco) != 0)
    throw DomainError("pi1 (general form): cycles share colors; normalize first");

  DiagramGraph g = build_graph(d);
  auto [in_tree, components] = spanning_forest(g.vertex_count, g.edges);
  if (g.vertex_count > 0 && components != 1)
    throw DomainError("pi1 (general form): underlying graph is disconnected");

  // generators = non-tree arcs
  std::map<ArcId, int> gen_of_arc;  // 1-based
  Presentation p;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (in_tree[i]) continue;
    gen_of_arc[g.edges[i].arc] = static_cast<int>(p.generators.size()) + 1;
    p.generators.push_back("e" + std::to_string(p.generators.size() + 1));
  }

  auto reduce = [](std::vector<int> w) {
    std::vector<int> out;
    for (int x : w) {
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
    return out;
  };

  // one relator per cycle
  for (const auto& cyc : deco.cycles) {
    std::vector<int> w;
    for (const ArcSide& s : cyc) {
      auto it = gen_of_arc.find(s.arc);
      if (it == gen_of_arc.end()) continue;
      w.push_back(s.side == Side::Co ? it->second : -it->second);
    }
    p.relators.push_back(reduce(w));
  }
  // one relator per circle of either family
  for (Family f : {Family::Plus, Family::Minus}) {
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci) {
      std::vector<int> w;
      for (const ArcId& a : arcs_of(d, CircleId{f, ci})) {
        auto it = gen_of_arc.find(a);
        if (it != gen_of_arc.end()) w.push_back(it->second);
      }
      p.relators.push_back(reduce(w));
    }
  }
  return p;
}

IntMatrix intersection_matrix(const GaussDiagram& d) {
  ValidationReport rep = validate(d);
  if (!rep.ok()) throw DomainError("intersection matrix: " + rep.problems[0]);
  IntMatrix m = IntMatrix::zero(d.plus_count(), d.minus_count());
  auto ends = chord_ends(d);
  for (const auto& [h, e] : ends) {
    m.at(e.plus_circle.index, e.minus_circle.index) =
        m.at(e.plus_circle.index, e.minus_circle.index) + BigInt(d.sign_of(h));
  }
  return m;
}

std::string H1Result::to_text() const {
  if (trivial()) return "trivial";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank > 1) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const BigInt& f : torsion) {
    if (!first) os << " + ";
    os << "Z/" << f.to_string();
    first = false;
  }
  return os.str();
}

H1Result h1(const GaussDiagram& d, const Decoration& deco) {
  ValidationReport rep = validate(d, deco);
  if (!rep.ok()) throw DomainError("h1: " + rep.problems[0]);

  DiagramGraph g = build_graph(d);

  // one tube edge per extra cycle of a repeated color (the cut arcs of the
  // disc-with-holes glued to those cycles)
  std::map<ColorId, std::vector<std::size_t>> by_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) by_color[deco.colors[i]].push_back(i);
  std::vector<DiagramGraph::Edge> edges = g.edges;
  for (const auto& [col, cycs] : by_color) {
    std::uint32_t anchor = g.vertex_of_arc_tail(d, deco.cycles[cycs[0]].front().arc);
    for (std::size_t k = 1; k < cycs.size(); ++k) {
      DiagramGraph::Edge tube;
      tube.u = anchor;
      tube.v = g.vertex_of_arc_tail(d, deco.cycles[cycs[k]].front().arc);
      tube.is_arc = false;
      edges.push_back(tube);
    }
  }

  auto [in_tree, components] = spanning_forest(g.vertex_count, edges);
  if (g.vertex_count > 0 && components != 1)
    throw DomainError("h1: associated manifold is disconnected (diagram is not R-connected)");

  // generators = non-tree edges (arcs and tubes)
  std::map<ArcId, std::size_t> gen_of_arc;
  std::size_t gen_count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (in_tree[i]) continue;
    if (edges[i].is_arc) gen_of_arc[edges[i].arc] = gen_count;
    ++gen_count;  // non-tree tubes are generators appearing in no relation
  }

  // relations: one per color (sum of its cycle words) and one per circle
  std::vector<std::vector<BigInt>> relations;
  for (const auto& [col, cycs] : by_color) {
    std::vector<BigInt> v(gen_count, BigInt(0));
    for (std::size_t ci : cycs) {
      for (const ArcSide& s : deco.cycles[ci]) {
        auto it = gen_of_arc.find(s.arc);
        if (it == gen_of_arc.end()) continue;
        v[it->second] = v[it->second] + BigInt(s.side == Side::Co ? 1 : -1);
      }
    }
    relations.push_back(std::move(v));
  }
  for (Family f : {Family::Plus, Family::Minus}) {
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci) {
      std::vector<BigInt> v(gen_count, BigInt(0));
      for (const ArcId& a : arcs_of(d, CircleId{f, ci})) {
        auto it = gen_of_arc.find(a);
        if (it != gen_of_arc.end()) v[it->second] = v[it->second] + BigInt(1);
      }
      relations.push_back(std::move(v));
    }
  }

  IntMatrix m = IntMatrix::zero(gen_count, relations.size());
  for (std::size_t c = 0; c < relations.size(); ++c)
    for (std::size_t r = 0; r < gen_count; ++r) m.at(r, c) = relations[c][r];

  SmithResult snf = smith_normal_form(m);
  H1Result res;
  res.free_rank = gen_count - snf.factors.size();
  for (const BigInt& f : snf.factors)
    if (f > BigInt(1)) res.torsion.push_back(f);
  return res;
}

bool is_homology_sphere(const GaussDiagram& d) {
  std::string why;
  if (!pi1_closed_applicable(d, &why)) throw DomainError("homology-sphere test: " + why);
  IntMatrix a = intersection_matrix(d);
  BigInt det = determinant(a);
  bool by_det = det.abs() == BigInt(1);
  bool by_h1 = h1(d, fresh_decoration(d)).trivial();
  if (by_det != by_h1)
    throw DomainError("internal: determinant and homology routes disagree");
  return by_det;
}

}  // namespace gd3
