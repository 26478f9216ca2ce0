#include "gd3/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gd3/tracing.hpp"

namespace gd3 {

std::string to_string(RCase c) {
  switch (c) {
    case RCase::A1B1: return "A1B1";
    case RCase::A1B2: return "A1B2";
    case RCase::A2B1: return "A2B1";
    case RCase::A2B2: return "A2B2";
  }
  return "A1B1";
}

namespace {

void require_current_deco(const GaussDiagram& d, const Decoration& deco, const char* op) {
  ValidationReport rep = validate(d, deco);
  if (!rep.ok()) throw DomainError(std::string(op) + ": " + rep.problems[0]);
}

// Cycle lookup over a traced cycle list.
struct TraceIndex {
  std::vector<std::vector<ArcSide>> cycles;
  std::map<ArcSide, std::size_t> of;

  explicit TraceIndex(std::vector<std::vector<ArcSide>> cs) : cycles(std::move(cs)) {
    for (std::size_t i = 0; i < cycles.size(); ++i)
      for (const ArcSide& s : cycles[i]) of[s] = i;
  }
  std::size_t at(const ArcSide& s) const {
    auto it = of.find(s);
    if (it == of.end()) throw DomainError("internal: arc-side missing from trace");
    return it->second;
  }
};

Decoration assemble_deco(std::vector<std::vector<ArcSide>> cycles, std::vector<ColorId> colors,
                         ColorId next_color) {
  Decoration deco;
  deco.cycles = std::move(cycles);
  deco.colors = std::move(colors);
  deco.next_color = next_color;
  return deco;
}

// --- circle surgery utilities ------------------------------------------

// Inserts `ids` as a contiguous block inside arc `arc_pos` (kWholeCircle for
// a chordless circle). Returns old endpoint position -> new position.
std::vector<std::uint32_t> insert_block(Circle& circ, std::uint32_t arc_pos,
                                        const std::vector<ChordId>& ids) {
  std::vector<std::uint32_t> old_to_new;
  if (circ.chordless()) {
    if (arc_pos != kWholeCircle) throw DomainError("arc position out of range");
    circ.endpoints = ids;
    return old_to_new;
  }
  if (arc_pos >= circ.size()) throw DomainError("arc position out of range");
  std::vector<ChordId> out;
  old_to_new.resize(circ.size());
  for (std::uint32_t p = 0; p < circ.size(); ++p) {
    old_to_new[p] = static_cast<std::uint32_t>(out.size());
    out.push_back(circ.endpoints[p]);
    if (p == arc_pos) out.insert(out.end(), ids.begin(), ids.end());
  }
  circ.endpoints = std::move(out);
  return old_to_new;
}

struct AdjacentInsertion {
  std::uint32_t anchor_pos = 0;  // old endpoint position
  bool before = false;
  ChordId id = 0;
};

// Applies per-endpoint adjacent insertions; at most one per anchor.
std::vector<std::uint32_t> insert_adjacent(Circle& circ, std::vector<AdjacentInsertion> ins) {
  std::vector<std::uint32_t> old_to_new(circ.size());
  std::map<std::uint32_t, AdjacentInsertion> by_anchor;
  for (const auto& a : ins) {
    if (!by_anchor.emplace(a.anchor_pos, a).second)
      throw DomainError("internal: two insertions at one endpoint");
  }
  std::vector<ChordId> out;
  for (std::uint32_t p = 0; p < circ.size(); ++p) {
    auto it = by_anchor.find(p);
    if (it != by_anchor.end() && it->second.before) out.push_back(it->second.id);
    old_to_new[p] = static_cast<std::uint32_t>(out.size());
    out.push_back(circ.endpoints[p]);
    if (it != by_anchor.end() && !it->second.before) out.push_back(it->second.id);
  }
  circ.endpoints = std::move(out);
  return old_to_new;
}

// Removes the endpoints at `positions`; returns old->new for survivors
// (dropped positions map to kWholeCircle as a sentinel).
std::vector<std::uint32_t> remove_positions(Circle& circ, std::vector<std::uint32_t> positions) {
  std::sort(positions.begin(), positions.end());
  std::vector<std::uint32_t> old_to_new(circ.size(), kWholeCircle);
  std::vector<ChordId> out;
  std::size_t k = 0;
  for (std::uint32_t p = 0; p < circ.size(); ++p) {
    if (k < positions.size() && positions[k] == p) {
      ++k;
      continue;
    }
    old_to_new[p] = static_cast<std::uint32_t>(out.size());
    out.push_back(circ.endpoints[p]);
  }
  circ.endpoints = std::move(out);
  return old_to_new;
}

// Per-circle record of how arcs split or merge across a move.
struct ArcRemap {
  // old arc -> (first piece, last piece); identity when untouched.
  std::map<ArcId, std::pair<ArcId, ArcId>> pieces;

  ArcId first_piece(const ArcId& a) const {
    auto it = pieces.find(a);
    return it == pieces.end() ? a : it->second.first;
  }
  ArcId last_piece(const ArcId& a) const {
    auto it = pieces.find(a);
    return it == pieces.end() ? a : it->second.second;
  }
  // The piece that receives the old side's incoming transition: co-directed
  // sides are entered at the arc tail, counter-directed at the head.
  ArcSide entry_rep(const ArcSide& s) const {
    return ArcSide{s.side == Side::Co ? first_piece(s.arc) : last_piece(s.arc), s.side};
  }
  ArcSide exit_rep(const ArcSide& s) const {
    return ArcSide{s.side == Side::Co ? last_piece(s.arc) : first_piece(s.arc), s.side};
  }
};

// Registers the split of every arc of a circle that had endpoints inserted.
void record_insertions(ArcRemap& remap, CircleId cid, std::size_t old_n,
                       const std::vector<std::uint32_t>& old_to_new, std::size_t new_n) {
  if (old_n == 0) {
    // chordless circle filled with new_n endpoints: the wrap arc is the
    // remainder of the old whole-circle arc
    ArcId wrap{cid, static_cast<std::uint32_t>(new_n - 1)};
    remap.pieces[ArcId{cid, kWholeCircle}] = {wrap, wrap};
    return;
  }
  for (std::uint32_t p = 0; p < old_n; ++p) {
    std::uint32_t first = old_to_new[p];
    std::uint32_t next = old_to_new[(p + 1) % old_n];
    std::uint32_t last = static_cast<std::uint32_t>((next + new_n - 1) % new_n);
    if (first == last && new_n == old_n) continue;  // untouched circle
    remap.pieces[ArcId{cid, p}] = {ArcId{cid, first}, ArcId{cid, last}};
  }
}

// Registers the merge of arcs after endpoint removal: every old arc maps to
// the surviving arc that contains it.
void record_removals(ArcRemap& remap, CircleId cid, std::size_t old_n,
                     const std::vector<std::uint32_t>& old_to_new, std::size_t new_n) {
  for (std::uint32_t p = 0; p < old_n; ++p) {
    ArcId target;
    if (new_n == 0) {
      target = ArcId{cid, kWholeCircle};
    } else {
      std::uint32_t q = p;
      while (old_to_new[q] == kWholeCircle) q = (q + old_n - 1) % old_n;
      target = ArcId{cid, old_to_new[q]};
    }
    remap.pieces[ArcId{cid, p}] = {target, target};
  }
}

ColorId color_of_cycle(const Decoration& deco, std::size_t idx) { return deco.colors[idx]; }

}  // namespace

// --- eps ----------------------------------------------------------------

MoveResult eps_move(const GaussDiagram& d, const Decoration& deco, CircleId circle) {
  require_current_deco(d, deco, "eps move");
  if (!d.has_circle(circle)) throw DomainError("eps move: unknown circle");

  GaussDiagram nd = d;
  Circle& circ = nd.circle(circle);
  std::reverse(circ.endpoints.begin(), circ.endpoints.end());
  for (ChordId h : circ.endpoints) nd.chord_signs[h] = -nd.chord_signs[h];

  // old side -> new side: arcs of the reversed circle relabel and swap sides
  std::uint32_t n = static_cast<std::uint32_t>(circ.size());
  auto map_side = [&](const ArcSide& s) -> ArcSide {
    if (s.arc.circle != circle) return s;
    if (s.arc.is_whole()) return ArcSide{s.arc, flip(s.side)};
    std::uint32_t q = (2 * n - 2 - s.arc.position) % n;
    return ArcSide{ArcId{circle, q}, flip(s.side)};
  };

  TraceIndex t(trace_cycles(nd).orbits);
  std::map<ArcSide, std::size_t> old_cycle_of;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i)
    for (const ArcSide& s : deco.cycles[i]) old_cycle_of[map_side(s)] = i;

  std::vector<ColorId> colors(t.cycles.size(), 0);
  for (std::size_t i = 0; i < t.cycles.size(); ++i) {
    std::set<std::size_t> sources;
    for (const ArcSide& s : t.cycles[i]) sources.insert(old_cycle_of.at(s));
    if (sources.size() != 1)
      throw DomainError("eps move: internal: cycles are not preserved");
    colors[i] = deco.colors[*sources.begin()];
  }
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), deco.next_color), {}};
}

// --- R ------------------------------------------------------------------

namespace {

Side plus_side_of(RCase c) {
  return (c == RCase::A1B1 || c == RCase::A1B2) ? Side::Co : Side::Counter;
}
Side minus_side_of(RCase c) {
  return (c == RCase::A1B1 || c == RCase::A2B1) ? Side::Co : Side::Counter;
}

struct SplitArcs {
  ArcId before, mid, after;
};

// Sub-arcs of an arc that had two endpoints inserted into it.
SplitArcs split_arcs_of(CircleId cid, std::uint32_t arc_pos, std::size_t old_n) {
  if (old_n == 0) {
    // circle was chordless; after inserting two endpoints the wrap arc (1)
    // doubles as both outer sub-arcs and the mid arc is 0
    return SplitArcs{ArcId{cid, 1}, ArcId{cid, 0}, ArcId{cid, 1}};
  }
  return SplitArcs{ArcId{cid, arc_pos}, ArcId{cid, arc_pos + 1}, ArcId{cid, arc_pos + 2}};
}

ArcId entry_sub(const SplitArcs& s, Side side) { return side == Side::Co ? s.before : s.after; }
ArcId exit_sub(const SplitArcs& s, Side side) { return side == Side::Co ? s.after : s.before; }

}  // namespace

MoveResult r_move(const GaussDiagram& d, const Decoration& deco, ArcId plus_arc, ArcId minus_arc,
                  RCase rcase) {
  require_current_deco(d, deco, "R move");
  if (plus_arc.circle.family != Family::Plus || minus_arc.circle.family != Family::Minus)
    throw DomainError("R move: arcs must come from the plus and minus families");
  if (!d.has_circle(plus_arc.circle) || !d.has_circle(minus_arc.circle))
    throw DomainError("R move: unknown circle");

  TraceIndex old_t(deco.cycles);
  Side sp = plus_side_of(rcase), sm = minus_side_of(rcase);
  std::size_t gp = old_t.at(ArcSide{plus_arc, sp});
  std::size_t gm = old_t.at(ArcSide{minus_arc, sm});
  ColorId shared = color_of_cycle(deco, gp);
  if (shared != color_of_cycle(deco, gm))
    throw DomainError("R move: the chosen sides do not share a color (case " + to_string(rcase) +
                      ")");

  GaussDiagram nd = d;
  ChordId pc = nd.fresh_chord(+1);
  ChordId mc = nd.fresh_chord(-1);

  // endpoint order from the case: m first on the plus arc iff the minus side
  // is Co; p first on the minus arc iff the plus side is Co
  std::vector<ChordId> plus_block =
      (sm == Side::Co) ? std::vector<ChordId>{mc, pc} : std::vector<ChordId>{pc, mc};
  std::vector<ChordId> minus_block =
      (sp == Side::Co) ? std::vector<ChordId>{pc, mc} : std::vector<ChordId>{mc, pc};

  std::size_t old_np = d.circle(plus_arc.circle).size();
  std::size_t old_nm = d.circle(minus_arc.circle).size();
  insert_block(nd.circle(plus_arc.circle), plus_arc.position, plus_block);
  insert_block(nd.circle(minus_arc.circle), minus_arc.position, minus_block);

  SplitArcs sa_p = split_arcs_of(plus_arc.circle, plus_arc.position, old_np);
  SplitArcs sa_m = split_arcs_of(minus_arc.circle, minus_arc.position, old_nm);

  ArcRemap remap;
  {
    // positions after a block insert shift by 2 past the insertion point
    auto shift = [&](CircleId cid, std::uint32_t arc_pos, std::size_t old_n, const SplitArcs& sub) {
      for (std::uint32_t p = 0; p < old_n; ++p) {
        if (p == arc_pos) {
          remap.pieces[ArcId{cid, p}] = {sub.before, sub.after};
        } else if (p > arc_pos) {
          remap.pieces[ArcId{cid, p}] = {ArcId{cid, p + 2}, ArcId{cid, p + 2}};
        }
      }
      if (old_n == 0) remap.pieces[ArcId{cid, kWholeCircle}] = {sub.before, sub.after};
    };
    shift(plus_arc.circle, plus_arc.position, old_np, sa_p);
    shift(minus_arc.circle, minus_arc.position, old_nm, sa_m);
  }

  TraceIndex t(trace_cycles(nd).orbits);
  std::vector<std::optional<ColorId>> colors(t.cycles.size());
  ColorId next = deco.next_color;

  auto assign = [&](std::size_t cyc, ColorId col, const char* what) {
    if (colors[cyc] && *colors[cyc] != col)
      throw DomainError(std::string("R move: unsupported configuration (") + what + ")");
    colors[cyc] = col;
  };

  const bool same_cycle = (gp == gm);
  ColorId col_a = 0, col_b = 0;
  if (same_cycle) {
    if (plus_arc.is_whole() || minus_arc.is_whole())
      throw DomainError("R move: internal: same-cycle case on a whole-circle arc");
    col_a = next++;
    col_b = next++;
  }
  ColorId bigon_color = next++;

  // the bigon lies on the far side of the shared-color sides
  std::size_t bigon = t.at(ArcSide{sa_p.mid, flip(sp)});
  if (t.cycles[bigon].size() != 2 || t.at(ArcSide{sa_m.mid, flip(sm)}) != bigon)
    throw DomainError("R move: internal: bigon cycle not found");
  assign(bigon, bigon_color, "bigon");

  if (same_cycle) {
    std::size_t piece_a = t.at(ArcSide{entry_sub(sa_p, sp), sp});
    std::size_t piece_b = t.at(ArcSide{exit_sub(sa_p, sp), sp});
    if (piece_a == piece_b) throw DomainError("R move: internal: split produced one cycle");
    if (t.at(ArcSide{exit_sub(sa_m, sm), sm}) != piece_a ||
        t.at(ArcSide{entry_sub(sa_m, sm), sm}) != piece_b)
      throw DomainError("R move: internal: split pieces misidentified");
    assign(piece_a, col_a, "split piece");
    assign(piece_b, col_b, "split piece");
  } else {
    std::size_t merged = t.at(ArcSide{entry_sub(sa_p, sp), sp});
    if (t.at(ArcSide{entry_sub(sa_m, sm), sm}) != merged)
      throw DomainError("R move: internal: merge produced two cycles");
    assign(merged, shared, "merged cycle");
  }

  // survivors: anchor each remaining old cycle through an untouched side or
  // the entry piece of a split side
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    if (i == gp || i == gm) continue;
    const ArcSide& s = deco.cycles[i].front();
    std::size_t cyc = t.at(remap.entry_rep(s));
    ColorId col = deco.colors[i];
    if (same_cycle && col == shared) col = col_a;  // repartition of the old color
    assign(cyc, col, "survivor");
  }

  for (std::size_t i = 0; i < t.cycles.size(); ++i)
    if (!colors[i]) throw DomainError("R move: unsupported configuration (uncolored cycle)");

  std::size_t expected = deco.cycle_count() + (same_cycle ? 2 : 0);
  if (t.cycles.size() != expected)
    throw DomainError("R move: internal: unexpected cycle count");

  std::vector<ColorId> final_colors;
  for (auto& c : colors) final_colors.push_back(*c);
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(final_colors), next),
                    {pc, mc}};
}

MoveResult r_inverse(const GaussDiagram& d, const Decoration& deco, ChordId positive_chord,
                     ChordId negative_chord) {
  require_current_deco(d, deco, "R inverse");
  if (!d.chord_signs.count(positive_chord) || !d.chord_signs.count(negative_chord))
    throw DomainError("R inverse: unknown chord");
  if (d.sign_of(positive_chord) != +1 || d.sign_of(negative_chord) != -1)
    throw DomainError("R inverse: chords must be a positive/negative pair");

  auto ends = chord_ends(d);
  const ChordEnds& pe = ends.at(positive_chord);
  const ChordEnds& me = ends.at(negative_chord);
  if (pe.plus_circle != me.plus_circle || pe.minus_circle != me.minus_circle)
    throw DomainError("R inverse: chords do not join the same pair of circles");

  auto between_arcs = [&](std::uint32_t a, std::uint32_t b, std::size_t n) {
    std::vector<std::uint32_t> out;
    if ((a + 1) % n == b) out.push_back(a);
    if ((b + 1) % n == a) out.push_back(b);
    return out;  // empty: not adjacent
  };
  std::size_t np = d.circle(pe.plus_circle).size();
  std::size_t nm = d.circle(pe.minus_circle).size();
  auto plus_mids = between_arcs(pe.plus_pos, me.plus_pos, np);
  auto minus_mids = between_arcs(pe.minus_pos, me.minus_pos, nm);
  if (plus_mids.empty() || minus_mids.empty())
    throw DomainError("R inverse: chords are not adjacent on both circles");

  // locate the bigon: the 2-cycle on the far sides of the two middle arcs,
  // where the far side is dictated by the endpoint order exactly as in the
  // four forward cases (m first on the plus arc iff the minus side is Co,
  // p first on the minus arc iff the plus side is Co). The flanking cycles
  // through the outer arcs must also look like a forward result: one cycle
  // holding all four outer sides (undoing a merge), or two cross-paired
  // cycles of different colors (undoing a split).
  TraceIndex old_t(deco.cycles);
  std::optional<std::size_t> bigon;
  std::string flank_problem = "chords do not bound a bigon cycle";
  for (std::uint32_t pm : plus_mids) {
    Side sm = d.circle(pe.plus_circle).endpoints[pm] == negative_chord ? Side::Co : Side::Counter;
    for (std::uint32_t mm : minus_mids) {
      Side sp =
          d.circle(pe.minus_circle).endpoints[mm] == positive_chord ? Side::Co : Side::Counter;
      ArcSide plus_far{ArcId{pe.plus_circle, pm}, flip(sp)};
      ArcSide minus_far{ArcId{pe.minus_circle, mm}, flip(sm)};
      std::size_t cyc = old_t.at(plus_far);
      if (deco.cycles[cyc].size() != 2) continue;
      if (old_t.at(minus_far) != cyc) continue;

      auto outer = [&](CircleId circle, std::uint32_t mid, std::size_t n) {
        // arcs flanking the pair: the one ending at the first endpoint and
        // the one starting at the second
        std::uint32_t before = static_cast<std::uint32_t>((mid + n - 1) % n);
        std::uint32_t after = static_cast<std::uint32_t>((mid + 1) % n);
        return std::pair<ArcId, ArcId>{ArcId{circle, before}, ArcId{circle, after}};
      };
      auto [pb, pa] = outer(pe.plus_circle, pm, np);
      auto [mb, ma] = outer(pe.minus_circle, mm, nm);
      // descendants of the shared-color sides of the split arcs
      std::size_t a_cyc = old_t.at(ArcSide{sp == Side::Co ? pb : pa, sp});
      std::size_t b_cyc = old_t.at(ArcSide{sp == Side::Co ? pa : pb, sp});
      std::size_t a_cyc_m = old_t.at(ArcSide{sm == Side::Co ? ma : mb, sm});
      std::size_t b_cyc_m = old_t.at(ArcSide{sm == Side::Co ? mb : ma, sm});
      if (a_cyc != a_cyc_m || b_cyc != b_cyc_m) {
        flank_problem = "the flanking cycles are not paired as a cancelling pair requires";
        continue;
      }
      if (a_cyc != b_cyc && deco.colors[a_cyc] == deco.colors[b_cyc]) {
        flank_problem = "the flanking cycles share a color; the pair is not cancelling";
        continue;
      }
      bool unique_color = true;
      for (std::size_t i = 0; i < deco.colors.size(); ++i)
        if (i != cyc && deco.colors[i] == deco.colors[cyc]) unique_color = false;
      if (!unique_color) {
        flank_problem = "the bigon color is used elsewhere";
        continue;
      }
      // two chords can bound two valid bigons (both circles crossed twice);
      // prefer the youngest color so undoing a fresh move picks its bigon
      if (!bigon || deco.colors[cyc] > deco.colors[*bigon]) bigon = cyc;
    }
  }
  if (!bigon) throw DomainError("R inverse: " + flank_problem);

  // Sides of the two middle arcs are no color evidence: the far sides form
  // the bigon and the near sides are detours through neighbouring cycles;
  // both merge into the rejoined arcs and would glue unrelated colors.
  std::set<ArcId> mid_arcs;
  for (const ArcSide& s : deco.cycles[*bigon]) mid_arcs.insert(s.arc);

  GaussDiagram nd = d;
  nd.chord_signs.erase(positive_chord);
  nd.chord_signs.erase(negative_chord);
  ArcRemap remap;
  {
    auto o2n = remove_positions(nd.circle(pe.plus_circle), {pe.plus_pos, me.plus_pos});
    record_removals(remap, pe.plus_circle, np, o2n, nd.circle(pe.plus_circle).size());
  }
  {
    auto o2n = remove_positions(nd.circle(pe.minus_circle), {pe.minus_pos, me.minus_pos});
    record_removals(remap, pe.minus_circle, nm, o2n, nd.circle(pe.minus_circle).size());
  }

  TraceIndex t(trace_cycles(nd).orbits);

  // colors by unification: old cycles whose sides land in one new cycle
  // share a color class (the bigon is retired, never unified)
  std::map<ColorId, ColorId> cls;  // union-find over colors
  std::function<ColorId(ColorId)> find = [&](ColorId c) {
    auto it = cls.find(c);
    if (it == cls.end() || it->second == c) return c;
    return cls[c] = find(it->second);
  };
  auto unite = [&](ColorId a, ColorId b) {
    a = find(a);
    b = find(b);
    if (a != b) cls[std::max(a, b)] = std::min(a, b);
  };

  std::vector<std::set<ColorId>> pulled(t.cycles.size());
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    if (i == *bigon) continue;
    for (const ArcSide& s : deco.cycles[i]) {
      if (mid_arcs.count(s.arc)) continue;
      ArcId target = remap.first_piece(s.arc);  // removals: first == last
      pulled[t.at(ArcSide{target, s.side})].insert(deco.colors[i]);
    }
  }
  for (const auto& set : pulled) {
    if (set.empty()) throw DomainError("R inverse: internal: orphan cycle");
    ColorId first = *set.begin();
    for (ColorId c : set) unite(first, c);
  }
  std::vector<ColorId> colors;
  for (const auto& set : pulled) colors.push_back(find(*set.begin()));

  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), deco.next_color), {}};
}

// --- S ------------------------------------------------------------------

MoveResult s_move(const GaussDiagram& d, const Decoration& deco, ColorId color, int sign) {
  require_current_deco(d, deco, "S move");
  if (sign != 1 && sign != -1) throw DomainError("S move: sign must be +1 or -1");
  bool empty = deco.cycle_count() == 0;
  if (!empty) {
    auto used = deco.used_colors();
    if (!std::binary_search(used.begin(), used.end(), color))
      throw DomainError("S move: unknown color on a nonempty diagram");
  }

  GaussDiagram nd = d;
  ChordId h = nd.fresh_chord(sign);
  nd.plus_circles.push_back(Circle{{h}});
  nd.minus_circles.push_back(Circle{{h}});
  CircleId np{Family::Plus, nd.plus_count() - 1};
  CircleId nm{Family::Minus, nd.minus_count() - 1};

  TraceIndex t(trace_cycles(nd).orbits);
  TraceIndex old_t(deco.cycles);
  std::vector<ColorId> colors(t.cycles.size());
  for (std::size_t i = 0; i < t.cycles.size(); ++i) {
    const ArcSide& s = t.cycles[i].front();
    if (s.arc.circle == np || s.arc.circle == nm) {
      if (t.cycles[i].size() != 4)
        throw DomainError("S move: internal: stabilization cycle not found");
      colors[i] = color;
    } else {
      colors[i] = deco.colors[old_t.at(s)];
    }
  }
  ColorId next = std::max(deco.next_color, color + 1);
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), next), {h}};
}

MoveResult s_inverse(const GaussDiagram& d, const Decoration& deco, CircleId plus_circle,
                     CircleId minus_circle) {
  require_current_deco(d, deco, "S inverse");
  if (plus_circle.family != Family::Plus || minus_circle.family != Family::Minus)
    throw DomainError("S inverse: need one circle per family");
  if (!d.has_circle(plus_circle) || !d.has_circle(minus_circle))
    throw DomainError("S inverse: unknown circle");
  const Circle& pc = d.circle(plus_circle);
  const Circle& mc = d.circle(minus_circle);
  if (pc.size() != 1 || mc.size() != 1 || pc.endpoints[0] != mc.endpoints[0])
    throw DomainError("S inverse: circles must be joined by a single shared chord");

  // a stabilization's cycle carries one of the surrounding colors; a pair
  // whose color appears nowhere else is a separate component, not a handle
  // (except when the pair is the entire diagram)
  if (d.plus_count() + d.minus_count() > 2) {
    TraceIndex old_t(deco.cycles);
    std::size_t pair_cycle = old_t.at(ArcSide{ArcId{plus_circle, 0}, Side::Co});
    bool shared = false;
    for (std::size_t i = 0; i < deco.colors.size(); ++i)
      if (i != pair_cycle && deco.colors[i] == deco.colors[pair_cycle]) shared = true;
    if (!shared)
      throw DomainError("S inverse: the pair's cycle color is used nowhere else");
  }

  GaussDiagram nd = d;
  nd.chord_signs.erase(pc.endpoints[0]);
  nd.plus_circles.erase(nd.plus_circles.begin() + plus_circle.index);
  nd.minus_circles.erase(nd.minus_circles.begin() + minus_circle.index);

  auto map_circle = [&](CircleId c) -> CircleId {
    std::uint32_t removed =
        (c.family == Family::Plus) ? plus_circle.index : minus_circle.index;
    return CircleId{c.family, c.index > removed ? c.index - 1 : c.index};
  };

  TraceIndex t(trace_cycles(nd).orbits);
  std::vector<ColorId> colors(t.cycles.size());
  std::map<ArcSide, ColorId> old_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    for (const ArcSide& s : deco.cycles[i]) {
      if (s.arc.circle == plus_circle || s.arc.circle == minus_circle) continue;
      ArcSide mapped{ArcId{map_circle(s.arc.circle), s.arc.position}, s.side};
      old_color[mapped] = deco.colors[i];
    }
  }
  for (std::size_t i = 0; i < t.cycles.size(); ++i) colors[i] = old_color.at(t.cycles[i].front());
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), deco.next_color), {}};
}

// --- B ------------------------------------------------------------------

MoveResult b_move(const GaussDiagram& d, const Decoration& deco, const BubbleMove& spec) {
  require_current_deco(d, deco, "B move");
  auto used = deco.used_colors();
  if (!std::binary_search(used.begin(), used.end(), spec.existing_color))
    throw DomainError("B move: existing color not present");
  ColorId next = deco.next_color;
  ColorId fresh = spec.new_color.value_or(next);
  if (std::binary_search(used.begin(), used.end(), fresh))
    throw DomainError("B move: new color is already in use");
  next = std::max(next, fresh + 1);

  GaussDiagram nd = d;
  nd.family(spec.family).push_back(Circle{});
  CircleId bubble{spec.family, static_cast<std::uint32_t>(nd.family(spec.family).size() - 1)};

  TraceIndex t(trace_cycles(nd).orbits);
  TraceIndex old_t(deco.cycles);
  std::vector<ColorId> colors(t.cycles.size());
  for (std::size_t i = 0; i < t.cycles.size(); ++i) {
    const ArcSide& s = t.cycles[i].front();
    if (s.arc.circle == bubble)
      colors[i] = (s.side == spec.new_side) ? fresh : spec.existing_color;
    else
      colors[i] = deco.colors[old_t.at(s)];
  }
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), next), {}};
}

MoveResult b_inverse(const GaussDiagram& d, const Decoration& deco, CircleId circle) {
  require_current_deco(d, deco, "B inverse");
  if (!d.has_circle(circle)) throw DomainError("B inverse: unknown circle");
  if (!d.circle(circle).chordless()) throw DomainError("B inverse: circle has chords");

  TraceIndex old_t(deco.cycles);
  ArcId whole{circle, kWholeCircle};
  std::size_t cyc_co = old_t.at(ArcSide{whole, Side::Co});
  std::size_t cyc_ct = old_t.at(ArcSide{whole, Side::Counter});
  auto uses = [&](ColorId c, std::size_t skip1, std::size_t skip2) {
    for (std::size_t i = 0; i < deco.colors.size(); ++i)
      if (i != skip1 && i != skip2 && deco.colors[i] == c) return true;
    return false;
  };
  bool co_shared = uses(deco.colors[cyc_co], cyc_co, cyc_ct);
  bool ct_shared = uses(deco.colors[cyc_ct], cyc_co, cyc_ct);
  if (co_shared && ct_shared)
    throw DomainError("B inverse: both side colors are shared; not a bubble");
  if (!co_shared && !ct_shared)
    throw DomainError("B inverse: neither side color is used elsewhere; removing would drop a component");

  GaussDiagram nd = d;
  nd.family(circle.family).erase(nd.family(circle.family).begin() + circle.index);
  auto map_circle = [&](CircleId c) -> CircleId {
    if (c.family != circle.family || c.index < circle.index) return c;
    return CircleId{c.family, c.index - 1};
  };

  TraceIndex t(trace_cycles(nd).orbits);
  std::map<ArcSide, ColorId> old_color;
  for (std::size_t i = 0; i < deco.cycles.size(); ++i) {
    if (i == cyc_co || i == cyc_ct) continue;
    for (const ArcSide& s : deco.cycles[i])
      old_color[ArcSide{ArcId{map_circle(s.arc.circle), s.arc.position}, s.side}] = deco.colors[i];
  }
  std::vector<ColorId> colors(t.cycles.size());
  for (std::size_t i = 0; i < t.cycles.size(); ++i) colors[i] = old_color.at(t.cycles[i].front());
  return MoveResult{std::move(nd), assemble_deco(t.cycles, std::move(colors), deco.next_color), {}};
}

// --- H ------------------------------------------------------------------

namespace {

struct HStructure {
  GaussDiagram result;
  ArcRemap remap;
  ArcId first_sub, last_sub;              // extremal slider sub-arcs
  std::vector<ArcId> rect_arcs;           // along arcs other than along_arc
  std::vector<ChordId> new_chords;        // in slider-run order
};

// Builds the slid diagram: copies of all of `along`'s chords inserted into
// slider_arc, each opposite endpoint placed next to its original. Pure
// structure; no decoration.
HStructure h_structural(const GaussDiagram& d, const SlideMove& spec, Side sigma_a,
                        const std::vector<ChordId>* prescribed_ids) {
  Family fam = spec.slider.family;
  const Circle& along_circ = d.circle(spec.along);
  std::size_t k = along_circ.size();
  if (k == 0) throw DomainError("slide: cannot slide along a chordless circle");

  // copy order: the along sequence starting after along_arc; reversed slides
  // run it backwards with flipped signs
  std::uint32_t q = spec.along_arc.position;
  std::vector<ChordId> originals;
  for (std::size_t i = 1; i <= k; ++i)
    originals.push_back(along_circ.endpoints[(q + i) % k]);
  if (spec.reversed) std::reverse(originals.begin(), originals.end());

  HStructure hs;
  hs.result = d;
  std::vector<ChordId> copies;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    int sign = d.sign_of(originals[i]);
    if (spec.reversed) sign = -sign;
    ChordId id;
    if (prescribed_ids) {
      id = (*prescribed_ids)[i];
      if (hs.result.chord_signs.count(id)) throw DomainError("slide: chord id collision");
      hs.result.chord_signs[id] = sign;
      hs.result.next_chord = std::max(hs.result.next_chord, id + 1);
    } else {
      id = hs.result.fresh_chord(sign);
    }
    copies.push_back(id);
  }
  hs.new_chords = copies;

  // insert the run into the slider
  std::size_t old_ns = d.circle(spec.slider).size();
  insert_block(hs.result.circle(spec.slider), spec.slider_arc.position, copies);
  if (old_ns == 0) {
    ArcId wrap{spec.slider, static_cast<std::uint32_t>(k - 1)};
    hs.remap.pieces[ArcId{spec.slider, kWholeCircle}] = {wrap, wrap};
    hs.first_sub = wrap;
    hs.last_sub = wrap;
  } else {
    std::uint32_t sp = spec.slider_arc.position;
    for (std::uint32_t p = 0; p < old_ns; ++p) {
      if (p == sp)
        hs.remap.pieces[ArcId{spec.slider, p}] = {ArcId{spec.slider, sp},
                                                  ArcId{spec.slider, sp + static_cast<std::uint32_t>(k)}};
      else if (p > sp)
        hs.remap.pieces[ArcId{spec.slider, p}] = {ArcId{spec.slider, p + static_cast<std::uint32_t>(k)},
                                                  ArcId{spec.slider, p + static_cast<std::uint32_t>(k)}};
    }
    hs.first_sub = ArcId{spec.slider, sp};
    hs.last_sub = ArcId{spec.slider, sp + static_cast<std::uint32_t>(k)};
  }

  // opposite-family placements, one new endpoint beside each original
  auto ends = chord_ends(d);
  std::map<CircleId, std::vector<AdjacentInsertion>> per_circle;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    const ChordEnds& e = ends.at(originals[i]);
    CircleId oc = (fam == Family::Plus) ? e.minus_circle : e.plus_circle;
    std::uint32_t op = (fam == Family::Plus) ? e.minus_pos : e.plus_pos;
    int orig_sign = d.sign_of(originals[i]);
    bool before;
    if (fam == Family::Plus)
      before = (sigma_a == Side::Co) == (orig_sign == +1);
    else
      before = (sigma_a == Side::Co) == (orig_sign == -1);
    per_circle[oc].push_back(AdjacentInsertion{op, before, copies[i]});
  }
  for (auto& [cid, ins] : per_circle) {
    std::size_t old_n = hs.result.circle(cid).size();
    auto o2n = insert_adjacent(hs.result.circle(cid), ins);
    record_insertions(hs.remap, cid, old_n, o2n, hs.result.circle(cid).size());
  }

  // the along circle itself is untouched; remember its non-band arcs
  for (std::uint32_t p = 0; p < k; ++p)
    if (p != q) hs.rect_arcs.push_back(ArcId{spec.along, p});
  return hs;
}

void h_move_preflight(const GaussDiagram& d, const SlideMove& spec) {
  if (spec.slider.family != spec.along.family)
    throw DomainError("slide: slider and along must share a family");
  if (spec.slider == spec.along) throw DomainError("slide: slider equals along");
  if (!d.has_circle(spec.slider) || !d.has_circle(spec.along))
    throw DomainError("slide: unknown circle");
  if (spec.slider_arc.circle != spec.slider || spec.along_arc.circle != spec.along)
    throw DomainError("slide: arcs must lie on the named circles");
  auto check_arc = [&](const ArcId& a) {
    const Circle& c = d.circle(a.circle);
    if (a.is_whole() ? !c.chordless() : a.position >= c.size())
      throw DomainError("slide: arc position out of range");
  };
  check_arc(spec.slider_arc);
  check_arc(spec.along_arc);
}

// Decoration transfer for a slide, shared by h_move and h_inverse (the
// latter runs it on the reconstructed pre-image to learn the correspondence).
// The surgery tears exactly three kinds of old cycles: the band cycles
// through (slider_arc, sigma_s) and (along_arc, sigma_a), and the
// rectangle precursors through the other (E_j, sigma_a) sides, which each
// split into a 4-sided rectangle plus a rest cycle.
struct HTransfer {
  std::vector<std::optional<std::size_t>> old_to_new;  // old cycle -> new cycle (survivors)
  std::vector<std::size_t> rect_cycles;                // new cycle per rect arc
  std::vector<std::size_t> rest_cycles;                // new cycle per rect arc
  std::vector<std::size_t> gamma_cycles;               // old precursor per rect arc
  std::vector<std::set<std::size_t>> gamma_pieces;     // old precursor -> its new pieces
  bool same_cycle = false;
  std::size_t gs = 0, ga = 0;                          // old band cycles
  std::optional<std::size_t> piece_a, piece_b, merged; // new band cycles
  TraceIndex new_trace{std::vector<std::vector<ArcSide>>{}};
};

HTransfer h_correspondence(const std::vector<std::vector<ArcSide>>& old_cycles,
                           const HStructure& hs, Side sigma_s, Side sigma_a,
                           const SlideMove& spec) {
  HTransfer ht;
  ht.new_trace = TraceIndex(trace_cycles(hs.result).orbits);
  TraceIndex old_t(old_cycles);

  ht.gs = old_t.at(ArcSide{spec.slider_arc, sigma_s});
  ht.ga = old_t.at(ArcSide{spec.along_arc, sigma_a});
  ht.same_cycle = (ht.gs == ht.ga);

  std::set<std::size_t> torn{ht.gs, ht.ga};
  for (const ArcId& e : hs.rect_arcs) {
    std::size_t rect = ht.new_trace.at(ArcSide{e, sigma_a});
    std::size_t gamma = old_t.at(ArcSide{e, sigma_a});
    // the rest cycle sits on the far side of the strand piece inside the rect
    std::optional<ArcSide> strand;
    for (const ArcSide& s : ht.new_trace.cycles[rect])
      if (s.arc.circle == spec.slider) {
        if (strand) throw DomainError("slide: unsupported configuration (rectangle shape)");
        strand = s;
      }
    if (!strand || ht.new_trace.cycles[rect].size() != 4)
      throw DomainError("slide: unsupported configuration (rectangle shape)");
    ht.rect_cycles.push_back(rect);
    ht.rest_cycles.push_back(ht.new_trace.at(ArcSide{strand->arc, flip(strand->side)}));
    ht.gamma_cycles.push_back(gamma);
    torn.insert(gamma);
  }

  std::size_t via_first = ht.new_trace.at(ArcSide{hs.first_sub, sigma_s});
  std::size_t via_last = ht.new_trace.at(ArcSide{hs.last_sub, sigma_s});
  if (ht.same_cycle) {
    if (via_first == via_last)
      throw DomainError("slide: unsupported configuration (band split not found)");
    ht.piece_a = via_first;
    ht.piece_b = via_last;
  } else {
    if (via_first != via_last)
      throw DomainError("slide: unsupported configuration (band merge not found)");
    ht.merged = via_first;
  }

  ht.old_to_new.resize(old_cycles.size());
  for (std::size_t i = 0; i < old_cycles.size(); ++i) {
    if (torn.count(i)) continue;
    // anchor through any side not consumed by a rectangle; the entry-end
    // piece of a split arc continues the old cycle
    std::optional<ArcSide> rep;
    for (const ArcSide& s : old_cycles[i]) {
      if (s.arc.circle == spec.along && s.side == sigma_a) continue;
      rep = hs.remap.entry_rep(s);
      break;
    }
    if (!rep)
      throw DomainError("slide: unsupported configuration (cycle without an anchor)");
    ht.old_to_new[i] = ht.new_trace.at(*rep);
  }

  // every non-rectangle piece of a torn rectangle-precursor keeps its color;
  // each such piece borders some strand cut on the side away from the
  // rectangle, so the far-side anchors cover them all
  ht.gamma_pieces.resize(old_cycles.size());
  for (std::size_t j = 0; j < ht.gamma_cycles.size(); ++j) {
    std::size_t g = ht.gamma_cycles[j];
    if (g == ht.gs || g == ht.ga) continue;
    ht.gamma_pieces[g].insert(ht.rest_cycles[j]);
  }
  return ht;
}

// Derives the slider-side / along-side pair: the removed segments of both
// curves face the region the band runs through, and the slide direction
// matches when both face the same way.
std::pair<Side, Side> pick_slide_sides(const Decoration& deco, const SlideMove& spec) {
  TraceIndex t(deco.cycles);
  for (Side ss : {Side::Co, Side::Counter}) {
    for (Side sa : {Side::Co, Side::Counter}) {
      if ((ss == sa) != !spec.reversed) continue;
      if (deco.colors[t.at(ArcSide{spec.slider_arc, ss})] ==
          deco.colors[t.at(ArcSide{spec.along_arc, sa})])
        return {ss, sa};
    }
  }
  throw DomainError("slide: the arcs share no color compatible with the requested direction");
}

}  // namespace

MoveResult h_move(const GaussDiagram& d, const Decoration& deco, const SlideMove& spec) {
  require_current_deco(d, deco, "slide");
  h_move_preflight(d, spec);
  auto [sigma_s, sigma_a] = pick_slide_sides(deco, spec);

  HStructure hs = h_structural(d, spec, sigma_a, nullptr);
  HTransfer ht = h_correspondence(deco.cycles, hs, sigma_s, sigma_a, spec);

  ColorId shared = deco.colors[ht.gs];
  ColorId next = deco.next_color;
  std::vector<std::optional<ColorId>> colors(ht.new_trace.cycles.size());
  auto assign = [&](std::size_t cyc, ColorId col) {
    if (colors[cyc] && *colors[cyc] != col)
      throw DomainError("slide: unsupported configuration (conflicting colors)");
    colors[cyc] = col;
  };

  ColorId col_a = 0;
  if (ht.same_cycle) {
    col_a = next++;
    ColorId col_b = next++;
    assign(*ht.piece_a, col_a);
    assign(*ht.piece_b, col_b);
  } else {
    assign(*ht.merged, shared);
  }
  auto adjusted = [&](ColorId col) {
    return (ht.same_cycle && col == shared) ? col_a : col;
  };
  for (std::size_t j = 0; j < ht.rect_cycles.size(); ++j) assign(ht.rect_cycles[j], next++);
  // non-rectangle pieces of a torn precursor keep the precursor's color;
  // precursors equal to a band cycle are covered by the band assignment
  for (std::size_t g = 0; g < ht.gamma_pieces.size(); ++g)
    for (std::size_t piece : ht.gamma_pieces[g]) assign(piece, adjusted(deco.colors[g]));
  for (std::size_t i = 0; i < deco.cycle_count(); ++i) {
    if (!ht.old_to_new[i]) continue;
    assign(*ht.old_to_new[i], adjusted(deco.colors[i]));
  }
  for (std::size_t i = 0; i < colors.size(); ++i)
    if (!colors[i]) throw DomainError("slide: unsupported configuration (uncolored cycle)");

  // Cycle-count bookkeeping for the slide of |h_j| chords: one split per
  // copied-strand cut plus the band merge or split.
  std::size_t k = hs.new_chords.size();
  std::size_t expected = deco.cycle_count() + (ht.same_cycle ? k : k - 2);
  if (ht.new_trace.cycles.size() != expected)
    throw DomainError("slide: unsupported configuration (cycle count)");

  std::vector<ColorId> final_colors;
  for (auto& c : colors) final_colors.push_back(*c);
  return MoveResult{hs.result,
                    assemble_deco(ht.new_trace.cycles, std::move(final_colors), next),
                    hs.new_chords};
}

MoveResult h_inverse(const GaussDiagram& d, const Decoration& deco,
                     const SlideInverseMove& spec) {
  require_current_deco(d, deco, "slide inverse");
  if (spec.slider.family != spec.along.family)
    throw DomainError("slide inverse: slider and along must share a family");
  if (!d.has_circle(spec.slider) || !d.has_circle(spec.along))
    throw DomainError("slide inverse: unknown circle");
  const Circle& along_circ = d.circle(spec.along);
  if (spec.copied.size() != along_circ.size() || spec.copied.empty())
    throw DomainError("slide inverse: copied run must match the along circle's chords");
  for (ChordId h : spec.copied)
    if (!d.chord_signs.count(h)) throw DomainError("slide inverse: unknown chord in copied run");

  // remove the copied chords to reconstruct the pre-image
  auto ends = chord_ends(d);
  GaussDiagram d0 = d;
  std::map<CircleId, std::vector<std::uint32_t>> removals;
  for (ChordId h : spec.copied) {
    const ChordEnds& e = ends.at(h);
    removals[e.plus_circle].push_back(e.plus_pos);
    removals[e.minus_circle].push_back(e.minus_pos);
    d0.chord_signs.erase(h);
  }
  // all copied endpoints on the slider side must lie on the slider circle
  Family fam = spec.slider.family;
  for (ChordId h : spec.copied) {
    const ChordEnds& e = ends.at(h);
    CircleId host = (fam == Family::Plus) ? e.plus_circle : e.minus_circle;
    if (host != spec.slider)
      throw DomainError("slide inverse: copied chords must sit on the slider");
  }
  std::map<CircleId, std::vector<std::uint32_t>> o2n_map;
  for (auto& [cid, pos] : removals) {
    o2n_map[cid] = remove_positions(d0.circle(cid), pos);
  }

  // the restored slider arc: where the run used to sit
  const ChordEnds& first_end = ends.at(spec.copied.front());
  std::uint32_t run_start = (fam == Family::Plus) ? first_end.plus_pos : first_end.minus_pos;
  ArcId slider_arc0;
  if (d0.circle(spec.slider).chordless()) {
    slider_arc0 = ArcId{spec.slider, kWholeCircle};
  } else {
    const auto& o2n = o2n_map.at(spec.slider);
    std::size_t n_old = d.circle(spec.slider).size();
    std::uint32_t p = (run_start + static_cast<std::uint32_t>(n_old) - 1) % n_old;
    while (o2n[p] == kWholeCircle) p = (p + static_cast<std::uint32_t>(n_old) - 1) % n_old;
    slider_arc0 = ArcId{spec.slider, o2n[p]};
  }

  SlideMove fwd{spec.slider, spec.along, slider_arc0, spec.along_arc, spec.reversed};

  // replay the forward structure with both side choices; the one that
  // reproduces the input verifies that the run really is a parallel copy
  std::optional<Side> sigma_a;
  std::optional<HStructure> hs;
  for (Side sa : {Side::Co, Side::Counter}) {
    try {
      HStructure cand = h_structural(d0, fwd, sa, &spec.copied);
      if (cand.result.plus_circles == d.plus_circles &&
          cand.result.minus_circles == d.minus_circles &&
          cand.result.chord_signs == d.chord_signs) {
        sigma_a = sa;
        hs = std::move(cand);
        break;
      }
    } catch (const DomainError&) {
    }
  }
  if (!hs)
    throw DomainError("slide inverse: the copied run is not a parallel copy of the along circle");
  Side sigma_s = spec.reversed ? flip(*sigma_a) : *sigma_a;

  // learn the forward correspondence on the pre-image, then read colors back
  std::vector<std::vector<ArcSide>> cycles0 = trace_cycles(d0).orbits;
  HTransfer ht = h_correspondence(cycles0, *hs, sigma_s, *sigma_a, fwd);
  if (ht.new_trace.cycles != deco.cycles)
    throw DomainError("slide inverse: internal: trace mismatch");

  std::map<ColorId, ColorId> cls;
  std::function<ColorId(ColorId)> find = [&](ColorId c) {
    auto it = cls.find(c);
    if (it == cls.end() || it->second == c) return c;
    return cls[c] = find(it->second);
  };
  auto unite = [&](ColorId a, ColorId b) {
    a = find(a);
    b = find(b);
    if (a != b) cls[std::max(a, b)] = std::min(a, b);
  };

  std::vector<std::set<ColorId>> cands(cycles0.size());
  if (ht.same_cycle) {
    cands[ht.gs].insert(deco.colors[*ht.piece_a]);
    cands[ht.gs].insert(deco.colors[*ht.piece_b]);
  } else {
    cands[ht.gs].insert(deco.colors[*ht.merged]);
    cands[ht.ga].insert(deco.colors[*ht.merged]);
  }
  for (std::size_t j = 0; j < ht.gamma_cycles.size(); ++j)
    cands[ht.gamma_cycles[j]].insert(deco.colors[ht.rest_cycles[j]]);
  for (std::size_t i = 0; i < cycles0.size(); ++i)
    if (ht.old_to_new[i]) cands[i].insert(deco.colors[*ht.old_to_new[i]]);

  std::vector<ColorId> final_colors(cycles0.size());
  for (std::size_t i = 0; i < cycles0.size(); ++i) {
    if (cands[i].empty())
      throw DomainError("slide inverse: internal: unanchored cycle");
    ColorId first = *cands[i].begin();
    for (ColorId c : cands[i]) unite(first, c);
  }
  for (std::size_t i = 0; i < cycles0.size(); ++i) final_colors[i] = find(*cands[i].begin());

  return MoveResult{std::move(d0),
                    assemble_deco(std::move(cycles0), std::move(final_colors), deco.next_color),
                    {}};
}

// --- dispatch, scripts, derived moves ------------------------------------

MoveResult apply_move(const GaussDiagram& d, const Decoration& deco, const MoveSpec& spec) {
  return std::visit(
      [&](const auto& m) -> MoveResult {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EpsMove>) return eps_move(d, deco, m.circle);
        if constexpr (std::is_same_v<T, RMove>)
          return r_move(d, deco, m.plus_arc, m.minus_arc, m.rcase);
        if constexpr (std::is_same_v<T, RInverseMove>)
          return r_inverse(d, deco, m.positive_chord, m.negative_chord);
        if constexpr (std::is_same_v<T, SlideMove>) return h_move(d, deco, m);
        if constexpr (std::is_same_v<T, SlideInverseMove>) return h_inverse(d, deco, m);
        if constexpr (std::is_same_v<T, StabMove>) return s_move(d, deco, m.color, m.sign);
        if constexpr (std::is_same_v<T, StabInverseMove>)
          return s_inverse(d, deco, m.plus_circle, m.minus_circle);
        if constexpr (std::is_same_v<T, BubbleMove>) return b_move(d, deco, m);
        if constexpr (std::is_same_v<T, BubbleInverseMove>) return b_inverse(d, deco, m.circle);
      },
      spec);
}

ScriptResult apply_script(const GaussDiagram& d, const Decoration& deco, const Script& script) {
  ScriptResult out{d, deco, script};
  for (const MoveSpec& m : script) {
    MoveResult r = apply_move(out.diagram, out.deco, m);
    out.diagram = std::move(r.diagram);
    out.deco = std::move(r.deco);
  }
  return out;
}

ScriptResult eps_via_hb(const GaussDiagram& d, const Decoration& deco, CircleId circle) {
  require_current_deco(d, deco, "eps via handle slides");
  if (!d.has_circle(circle)) throw DomainError("eps via handle slides: unknown circle");
  if (d.circle(circle).chordless()) return ScriptResult{d, deco, {}};

  Family fam = circle.family;
  ArcId edge{circle, 0};
  TraceIndex t(deco.cycles);
  ColorId c = deco.colors[t.at(ArcSide{edge, Side::Co})];

  Script script;
  // bubble with the existing color on its counter side, so that the slide
  // along the edge's co side runs reversed
  BubbleMove bub{fam, c, std::nullopt, Side::Co};
  script.push_back(bub);
  ScriptResult st = apply_script(d, deco, {bub});
  CircleId beta{fam, static_cast<std::uint32_t>(st.diagram.family(fam).size() - 1)};

  SlideMove slide{beta, circle, ArcId{beta, kWholeCircle}, edge, true};
  script.push_back(slide);
  MoveResult slid = h_move(st.diagram, st.deco, slide);

  // undo the original chords: they are a reversed parallel copy of beta
  const std::vector<ChordId> originals_any_rotation = d.circle(circle).endpoints;
  std::size_t k = originals_any_rotation.size();
  std::optional<MoveResult> undone;
  SlideInverseMove chosen{};
  for (std::uint32_t arc = 0; arc < slid.diagram.circle(beta).size() && !undone; ++arc) {
    for (std::size_t rot = 0; rot < k && !undone; ++rot) {
      SlideInverseMove inv;
      inv.slider = circle;
      inv.along = beta;
      inv.along_arc = ArcId{beta, arc};
      inv.reversed = true;
      for (std::size_t i = 0; i < k; ++i)
        inv.copied.push_back(originals_any_rotation[(rot + i) % k]);
      try {
        MoveResult r = h_inverse(slid.diagram, slid.deco, inv);
        undone = std::move(r);
        chosen = inv;
      } catch (const DomainError&) {
      }
    }
  }
  if (!undone)
    throw DomainError("eps via handle slides: could not undo the original chords");
  script.push_back(chosen);

  BubbleInverseMove binv{circle};
  script.push_back(binv);
  MoveResult final = b_inverse(undone->diagram, undone->deco, circle);

  return ScriptResult{std::move(final.diagram), std::move(final.deco), std::move(script)};
}

ScriptResult normalize_colors(const GaussDiagram& d, const Decoration& deco) {
  require_current_deco(d, deco, "normalize");
  ScriptResult out{d, deco, {}};
  while (true) {
    std::map<ColorId, std::vector<std::size_t>> by_color;
    for (std::size_t i = 0; i < out.deco.cycle_count(); ++i)
      by_color[out.deco.colors[i]].push_back(i);

    std::optional<RMove> todo;
    bool any_excess = false;
    for (const auto& [col, cycs] : by_color) {
      if (cycs.size() < 2) continue;
      any_excess = true;
      // need one cycle offering a plus-family side and a different one
      // offering a minus-family side
      for (std::size_t i = 0; i < cycs.size() && !todo; ++i) {
        for (std::size_t j = 0; j < cycs.size() && !todo; ++j) {
          if (i == j) continue;
          std::optional<ArcSide> plus_side, minus_side;
          for (const ArcSide& s : out.deco.cycles[cycs[i]])
            if (s.arc.circle.family == Family::Plus) {
              plus_side = s;
              break;
            }
          for (const ArcSide& s : out.deco.cycles[cycs[j]])
            if (s.arc.circle.family == Family::Minus) {
              minus_side = s;
              break;
            }
          if (plus_side && minus_side) {
            RCase rc;
            if (plus_side->side == Side::Co)
              rc = (minus_side->side == Side::Co) ? RCase::A1B1 : RCase::A1B2;
            else
              rc = (minus_side->side == Side::Co) ? RCase::A2B1 : RCase::A2B2;
            todo = RMove{plus_side->arc, minus_side->arc, rc};
          }
        }
      }
      if (todo) break;
    }
    if (!any_excess) break;
    if (!todo)
      throw DomainError(
          "normalize: a repeated color offers no plus/minus cycle pair to merge");
    MoveResult r = r_move(out.diagram, out.deco, todo->plus_arc, todo->minus_arc, todo->rcase);
    out.diagram = std::move(r.diagram);
    out.deco = std::move(r.deco);
    out.script.push_back(*todo);
  }
  return out;
}

}  // namespace gd3
