#include "gd3/diagram.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "gd3/tracing.hpp"

namespace gd3 {

const Circle& GaussDiagram::circle(CircleId c) const {
  const auto& fam = family(c.family);
  if (c.index >= fam.size()) throw DomainError("unknown circle");
  return fam[c.index];
}

Circle& GaussDiagram::circle(CircleId c) {
  auto& fam = family(c.family);
  if (c.index >= fam.size()) throw DomainError("unknown circle");
  return fam[c.index];
}

bool GaussDiagram::has_circle(CircleId c) const {
  return c.index < family(c.family).size();
}

int GaussDiagram::sign_of(ChordId h) const {
  auto it = chord_signs.find(h);
  if (it == chord_signs.end()) throw DomainError("unknown chord");
  return it->second;
}

ChordId GaussDiagram::fresh_chord(int sign) {
  ChordId id = next_chord++;
  chord_signs[id] = sign;
  return id;
}

std::vector<ArcId> arcs_of(const GaussDiagram& d, CircleId c) {
  const Circle& circ = d.circle(c);
  std::vector<ArcId> out;
  if (circ.chordless()) {
    out.push_back(ArcId{c, kWholeCircle});
    return out;
  }
  for (std::uint32_t p = 0; p < circ.size(); ++p) out.push_back(ArcId{c, p});
  return out;
}

std::vector<ArcId> all_arcs(const GaussDiagram& d) {
  std::vector<ArcId> out;
  for (Family f : {Family::Plus, Family::Minus}) {
    for (std::uint32_t i = 0; i < d.family(f).size(); ++i) {
      auto arcs = arcs_of(d, CircleId{f, i});
      out.insert(out.end(), arcs.begin(), arcs.end());
    }
  }
  return out;
}

ArcTable::ArcTable(const GaussDiagram& d) : arcs(all_arcs(d)) {
  for (std::uint32_t i = 0; i < arcs.size(); ++i) arc_index[arcs[i]] = i;
}

std::uint32_t ArcTable::index_of(const ArcSide& s) const {
  auto it = arc_index.find(s.arc);
  if (it == arc_index.end()) throw DomainError("unknown arc");
  return it->second * 2 + (s.side == Side::Co ? 0 : 1);
}

ArcSide ArcTable::side_at(std::uint32_t idx) const {
  return ArcSide{arcs[idx / 2], (idx % 2 == 0) ? Side::Co : Side::Counter};
}

std::map<ChordId, ChordEnds> chord_ends(const GaussDiagram& d) {
  std::map<ChordId, ChordEnds> out;
  for (Family f : {Family::Plus, Family::Minus}) {
    const auto& circles = d.family(f);
    for (std::uint32_t ci = 0; ci < circles.size(); ++ci) {
      const auto& eps = circles[ci].endpoints;
      for (std::uint32_t p = 0; p < eps.size(); ++p) {
        ChordEnds& e = out[eps[p]];
        if (f == Family::Plus) {
          e.plus_circle = CircleId{f, ci};
          e.plus_pos = p;
        } else {
          e.minus_circle = CircleId{f, ci};
          e.minus_pos = p;
        }
      }
    }
  }
  return out;
}

std::vector<ColorId> Decoration::used_colors() const {
  std::vector<ColorId> out(colors.begin(), colors.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ValidationReport validate(const GaussDiagram& d) {
  ValidationReport rep;
  std::map<ChordId, int> plus_seen, minus_seen;
  for (Family f : {Family::Plus, Family::Minus}) {
    auto& seen = (f == Family::Plus) ? plus_seen : minus_seen;
    const char* fname = (f == Family::Plus) ? "plus" : "minus";
    for (std::uint32_t ci = 0; ci < d.family(f).size(); ++ci) {
      for (ChordId h : d.family(f)[ci].endpoints) {
        if (!d.chord_signs.count(h)) {
          rep.problems.push_back("circle " + std::string(fname) + std::to_string(ci + 1) +
                                 " references undeclared chord " + std::to_string(h + 1));
        }
        seen[h]++;
      }
    }
  }
  for (const auto& [h, sign] : d.chord_signs) {
    if (sign != 1 && sign != -1)
      rep.problems.push_back("chord " + std::to_string(h + 1) + " has sign " + std::to_string(sign));
    int p = plus_seen.count(h) ? plus_seen[h] : 0;
    int m = minus_seen.count(h) ? minus_seen[h] : 0;
    if (p != 1)
      rep.problems.push_back("chord " + std::to_string(h + 1) + " appears " + std::to_string(p) +
                             " times in the plus family (expected 1)");
    if (m != 1)
      rep.problems.push_back("chord " + std::to_string(h + 1) + " appears " + std::to_string(m) +
                             " times in the minus family (expected 1)");
  }
  for (const auto& [h, n] : plus_seen)
    if (!d.chord_signs.count(h) && n > 0)
      rep.problems.push_back("dangling plus endpoint for chord " + std::to_string(h + 1));
  for (const auto& [h, n] : minus_seen)
    if (!d.chord_signs.count(h) && n > 0)
      rep.problems.push_back("dangling minus endpoint for chord " + std::to_string(h + 1));
  return rep;
}

ValidationReport validate(const GaussDiagram& d, const Decoration& deco) {
  ValidationReport rep = validate(d);
  if (!rep.ok()) return rep;

  CycleSet traced = trace_cycles(d);
  if (traced.orbits != deco.cycles) {
    rep.problems.push_back("stale decoration: stored cycles disagree with tracing");
    return rep;
  }
  if (deco.colors.size() != deco.cycles.size())
    rep.problems.push_back("decoration has " + std::to_string(deco.colors.size()) +
                           " colors for " + std::to_string(deco.cycles.size()) + " cycles");
  for (ColorId c : deco.colors)
    if (c >= deco.next_color)
      rep.problems.push_back("color id " + std::to_string(c) + " outside the color namespace");

  // chi of a closed orientable surface is even, so |h| - |c| must be even.
  if ((d.chord_count() + deco.cycle_count()) % 2 != 0)
    rep.problems.push_back("|h| - |c| is odd: not a surface");
  return rep;
}

namespace {

// Encoding of one candidate relabeling, comparable lexicographically.
struct Encoding {
  std::vector<std::vector<std::uint32_t>> plus_seqs;   // chord labels per circle
  std::vector<std::vector<std::uint32_t>> minus_seqs;
  std::vector<int> signs;  // by chord label

  friend auto operator<=>(const Encoding&, const Encoding&) = default;
};

std::vector<std::uint32_t> rotate_seq(const std::vector<std::uint32_t>& v, std::uint32_t r) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[(i + r) % v.size()]);
  return out;
}

std::uint32_t min_rotation(const std::vector<std::uint32_t>& v) {
  std::uint32_t best = 0;
  for (std::uint32_t r = 1; r < v.size(); ++r)
    if (rotate_seq(v, r) < rotate_seq(v, best)) best = r;
  return best;
}

}  // namespace

namespace {

// One connected piece of the diagram: circles linked through chords. Every
// chorded component is free of chordless circles and vice versa.
struct Component {
  std::vector<std::uint32_t> plus_idx;
  std::vector<std::uint32_t> minus_idx;
};

struct ComponentForm {
  Encoding enc;
  std::map<ChordId, std::uint32_t> chord_label;     // global chord -> local label
  std::vector<std::uint32_t> plus_order;            // local rank -> original index
  std::map<std::uint32_t, std::uint32_t> plus_rot;  // original index -> rotation
  std::vector<std::uint32_t> minus_order;
  std::map<std::uint32_t, std::uint32_t> minus_rot;
};

// Minimal relabeling of a single component. Plus circles are placed rank by
// rank, always choosing a (circle, rotation) whose label sequence is
// lexicographically minimal under the running first-encounter labeling;
// ties branch, so the result is the exact minimum. Connected components
// keep ties rare because chords entangle the labels.
struct PlacementState {
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> rots;
  std::map<ChordId, std::uint32_t> label;
  std::vector<std::vector<std::uint32_t>> seqs;
};

void finish_component(const GaussDiagram& d, const Component& comp, const PlacementState& st,
                      ComponentForm& best, bool& have_best) {
  Encoding enc;
  enc.plus_seqs = st.seqs;

  struct MinusEntry {
    std::vector<std::uint32_t> seq;
    std::uint32_t orig;
    std::uint32_t rot;
  };
  std::vector<MinusEntry> minus_entries;
  for (std::uint32_t mi : comp.minus_idx) {
    std::vector<std::uint32_t> seq;
    for (ChordId h : d.minus_circles[mi].endpoints) seq.push_back(st.label.at(h));
    std::uint32_t r = min_rotation(seq);
    minus_entries.push_back({rotate_seq(seq, r), mi, r});
  }
  std::stable_sort(minus_entries.begin(), minus_entries.end(),
                   [](const MinusEntry& a, const MinusEntry& b) { return a.seq < b.seq; });
  for (auto& m : minus_entries) enc.minus_seqs.push_back(m.seq);
  enc.signs.resize(st.label.size());
  for (const auto& [h, l] : st.label) enc.signs[l] = d.sign_of(h);

  if (!have_best || enc < best.enc) {
    have_best = true;
    best.enc = std::move(enc);
    best.chord_label.clear();
    for (const auto& [h, l] : st.label) best.chord_label[h] = l;
    best.plus_order = st.perm;
    best.plus_rot.clear();
    for (std::size_t k = 0; k < st.perm.size(); ++k) best.plus_rot[st.perm[k]] = st.rots[k];
    best.minus_order.clear();
    best.minus_rot.clear();
    for (auto& m : minus_entries) {
      best.minus_order.push_back(m.orig);
      best.minus_rot[m.orig] = m.rot;
    }
  }
}

void place_rank(const GaussDiagram& d, const Component& comp, std::vector<bool>& used,
                PlacementState& st, ComponentForm& best, bool& have_best, long& budget) {
  if (st.perm.size() == comp.plus_idx.size()) {
    finish_component(d, comp, st, best, have_best);
    return;
  }
  if (--budget < 0)
    throw DomainError("canonicalization exceeded its search budget (highly symmetric diagram)");

  struct Cand {
    std::size_t which = 0;
    std::uint32_t rot = 0;
    std::vector<std::uint32_t> seq;
    std::map<ChordId, std::uint32_t> label;
  };
  std::vector<Cand> ties;
  for (std::size_t w = 0; w < comp.plus_idx.size(); ++w) {
    if (used[w]) continue;
    const auto& eps = d.plus_circles[comp.plus_idx[w]].endpoints;
    for (std::uint32_t r = 0; r < eps.size(); ++r) {
      Cand cand;
      cand.which = w;
      cand.rot = r;
      cand.label = st.label;
      for (std::size_t i = 0; i < eps.size(); ++i) {
        ChordId h = eps[(i + r) % eps.size()];
        auto it = cand.label.find(h);
        if (it == cand.label.end())
          it = cand.label.emplace(h, static_cast<std::uint32_t>(cand.label.size())).first;
        cand.seq.push_back(it->second);
      }
      if (ties.empty() || cand.seq < ties.front().seq) {
        ties.clear();
        ties.push_back(std::move(cand));
      } else if (cand.seq == ties.front().seq) {
        ties.push_back(std::move(cand));
      }
    }
  }
  for (Cand& cand : ties) {
    used[cand.which] = true;
    st.perm.push_back(comp.plus_idx[cand.which]);
    st.rots.push_back(cand.rot);
    st.seqs.push_back(cand.seq);
    std::map<ChordId, std::uint32_t> saved = std::move(st.label);
    st.label = std::move(cand.label);
    place_rank(d, comp, used, st, best, have_best, budget);
    st.label = std::move(saved);
    st.seqs.pop_back();
    st.rots.pop_back();
    st.perm.pop_back();
    used[cand.which] = false;
  }
}

ComponentForm canonicalize_component(const GaussDiagram& d, const Component& comp) {
  ComponentForm best;
  if (comp.plus_idx.empty() || d.plus_circles[comp.plus_idx.front()].chordless()) {
    // a chordless circle (or a bare minus circle) needs no search
    for (std::uint32_t i : comp.plus_idx) {
      best.enc.plus_seqs.push_back({});
      best.plus_order.push_back(i);
      best.plus_rot[i] = 0;
    }
    for (std::uint32_t i : comp.minus_idx) {
      best.enc.minus_seqs.push_back({});
      best.minus_order.push_back(i);
      best.minus_rot[i] = 0;
    }
    return best;
  }
  bool have_best = false;
  std::vector<bool> used(comp.plus_idx.size(), false);
  PlacementState st;
  long budget = 500000;
  place_rank(d, comp, used, st, best, have_best, budget);
  if (!have_best) throw DomainError("internal: component canonicalization found nothing");
  return best;
}

}  // namespace

CanonicalResult canonicalize_full(const GaussDiagram& d) {
  ValidationReport rep = validate(d);
  if (!rep.ok()) throw DomainError("cannot canonicalize an invalid diagram: " + rep.problems[0]);

  // connected components over circles
  const std::uint32_t np = d.plus_count(), nm = d.minus_count();
  std::vector<std::uint32_t> parent(np + nm);
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [h, e] : chord_ends(d))
    parent[find(e.plus_circle.index)] = find(np + e.minus_circle.index);

  std::map<std::uint32_t, Component> comps;
  for (std::uint32_t i = 0; i < np; ++i) comps[find(i)].plus_idx.push_back(i);
  for (std::uint32_t j = 0; j < nm; ++j) comps[find(np + j)].minus_idx.push_back(j);

  // canonicalize each component, then order components by their encodings
  std::vector<ComponentForm> forms;
  for (const auto& [root, comp] : comps) forms.push_back(canonicalize_component(d, comp));
  std::stable_sort(forms.begin(), forms.end(),
                   [](const ComponentForm& a, const ComponentForm& b) { return a.enc < b.enc; });

  GaussDiagram canon;
  CanonicalMap map;
  map.plus_perm.assign(np, 0);
  map.plus_rot.assign(np, 0);
  map.minus_perm.assign(nm, 0);
  map.minus_rot.assign(nm, 0);

  ChordId chord_offset = 0;
  for (const ComponentForm& f : forms) {
    for (std::size_t k = 0; k < f.plus_order.size(); ++k) {
      map.plus_perm[f.plus_order[k]] = static_cast<std::uint32_t>(canon.plus_circles.size());
      map.plus_rot[f.plus_order[k]] = f.plus_rot.at(f.plus_order[k]);
      Circle c;
      for (std::uint32_t l : f.enc.plus_seqs[k]) c.endpoints.push_back(chord_offset + l);
      canon.plus_circles.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < f.minus_order.size(); ++k) {
      map.minus_perm[f.minus_order[k]] = static_cast<std::uint32_t>(canon.minus_circles.size());
      map.minus_rot[f.minus_order[k]] = f.minus_rot.at(f.minus_order[k]);
      Circle c;
      for (std::uint32_t l : f.enc.minus_seqs[k]) c.endpoints.push_back(chord_offset + l);
      canon.minus_circles.push_back(std::move(c));
    }
    for (const auto& [h, l] : f.chord_label) map.chord_map[h] = chord_offset + l;
    for (std::uint32_t l = 0; l < f.enc.signs.size(); ++l)
      canon.chord_signs[chord_offset + l] = f.enc.signs[l];
    chord_offset += static_cast<ChordId>(f.enc.signs.size());
  }
  canon.next_chord = chord_offset;
  return CanonicalResult{std::move(canon), std::move(map)};
}

GaussDiagram canonicalize(const GaussDiagram& d) { return canonicalize_full(d).diagram; }

ArcId CanonicalMap::map_arc(const GaussDiagram& old_d, ArcId a) const {
  const auto& fam = old_d.family(a.circle.family);
  const auto& perm = (a.circle.family == Family::Plus) ? plus_perm : minus_perm;
  const auto& rot = (a.circle.family == Family::Plus) ? plus_rot : minus_rot;
  CircleId nc{a.circle.family, perm[a.circle.index]};
  if (a.is_whole()) return ArcId{nc, kWholeCircle};
  std::uint32_t n = static_cast<std::uint32_t>(fam[a.circle.index].size());
  std::uint32_t np = (a.position + n - rot[a.circle.index] % n) % n;
  return ArcId{nc, np};
}

ArcSide CanonicalMap::map_side(const GaussDiagram& old_d, ArcSide s) const {
  return ArcSide{map_arc(old_d, s.arc), s.side};
}

CanonicalDecorated canonicalize_decorated(const GaussDiagram& d, const Decoration& deco) {
  CanonicalResult cr = canonicalize_full(d);
  Decoration nd;
  nd.next_color = deco.next_color;
  std::vector<std::pair<std::vector<ArcSide>, ColorId>> mapped;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    std::vector<ArcSide> cyc;
    for (const ArcSide& s : deco.cycles[i]) cyc.push_back(cr.map.map_side(d, s));
    // canonical orbit presentation: start from minimal element
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
    mapped.emplace_back(std::move(cyc), deco.colors[i]);
  }
  std::sort(mapped.begin(), mapped.end());
  for (auto& [cyc, col] : mapped) {
    nd.cycles.push_back(std::move(cyc));
    nd.colors.push_back(col);
  }
  return CanonicalDecorated{std::move(cr.diagram), std::move(nd), std::move(cr.map)};
}

std::string canonical_key(const GaussDiagram& d) {
  GaussDiagram c = canonicalize(d);
  std::ostringstream os;
  for (const auto& circ : c.plus_circles) {
    os << "p:";
    for (ChordId h : circ.endpoints) os << h << ",";
    os << ";";
  }
  for (const auto& circ : c.minus_circles) {
    os << "m:";
    for (ChordId h : circ.endpoints) os << h << ",";
    os << ";";
  }
  os << "s:";
  for (const auto& [h, sg] : c.chord_signs) os << (sg > 0 ? '+' : '-');
  return os.str();
}

std::string canonical_key(const GaussDiagram& d, const Decoration& deco) {
  CanonicalDecorated cd = canonicalize_decorated(d, deco);
  std::ostringstream os;
  os << canonical_key(cd.diagram);
  // color pattern: first-use numbering abstracts the color names away
  std::map<ColorId, std::uint32_t> pat;
  os << "|c:";
  for (ColorId c : cd.deco.colors) {
    auto it = pat.find(c);
    if (it == pat.end()) it = pat.emplace(c, static_cast<std::uint32_t>(pat.size())).first;
    os << it->second << ",";
  }
  return os.str();
}

}  // namespace gd3
