#pragma once

// Half-edge model of framed 4-valent graphs.
//
// Vertex v owns half-edges 4v+0 .. 4v+3. Slots s and s+2 (mod 4) are
// opposite; every other pair of slots at a vertex is adjacent. Edges are a
// perfect matching on half-edges (loops and parallel edges allowed); circular
// components carry no structure and are kept as a counter.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gknot/error.hpp"

namespace gknot {

inline constexpr int opposite_slot(int slot) { return (slot + 2) & 3; }
inline constexpr bool adjacent_slots(int a, int b) { return ((a - b) & 1) != 0; }
inline constexpr int opposite_half_edge(int h) { return (h & ~3) | opposite_slot(h & 3); }

struct HalfEdgeRef {
  int vertex = 0;
  int slot = 0;

  constexpr int index() const { return 4 * vertex + slot; }
  static constexpr HalfEdgeRef from_index(int h) { return {h / 4, h % 4}; }
  auto operator<=>(const HalfEdgeRef&) const = default;
};

inline std::string to_string(HalfEdgeRef ref) {
  return std::to_string(ref.vertex) + "." + std::to_string(ref.slot);
}

// Unchecked pairing as it comes from user input.
struct RawGraph {
  int vertex_count = 0;
  std::vector<std::pair<HalfEdgeRef, HalfEdgeRef>> pairs;
  int free_circles = 0;
};

struct Violation {
  std::string what;
  std::vector<HalfEdgeRef> where;
};

inline std::vector<Violation> validate(const RawGraph& raw) {
  std::vector<Violation> out;
  if (raw.vertex_count < 0) out.push_back({"negative vertex count", {}});
  if (raw.free_circles < 0) out.push_back({"negative circle count", {}});
  if (raw.vertex_count < 0) return out;

  std::vector<int> uses(4 * static_cast<std::size_t>(raw.vertex_count), 0);
  for (const auto& [a, b] : raw.pairs) {
    bool in_range = true;
    for (const HalfEdgeRef& r : {a, b}) {
      if (r.vertex < 0 || r.vertex >= raw.vertex_count || r.slot < 0 || r.slot > 3) {
        out.push_back({"half-edge out of range", {r}});
        in_range = false;
      }
    }
    if (!in_range) continue;
    if (a == b) {
      out.push_back({"half-edge paired with itself", {a}});
      continue;
    }
    ++uses[a.index()];
    ++uses[b.index()];
  }
  for (int h = 0; h < static_cast<int>(uses.size()); ++h) {
    if (uses[h] > 1) out.push_back({"duplicate half-edge", {HalfEdgeRef::from_index(h)}});
    if (uses[h] == 0) out.push_back({"unmatched half-edge", {HalfEdgeRef::from_index(h)}});
  }
  return out;
}

class FramedGraph {
 public:
  FramedGraph() = default;

  // partner[h] is the other end of the edge through h; must be a fixed-point
  // free involution.
  static FramedGraph from_partners(std::vector<int> partner, int circles) {
    if (partner.size() % 4 != 0) throw MalformedInput("half-edge count is not a multiple of 4");
    if (circles < 0) throw MalformedInput("negative circle count");
    const int n = static_cast<int>(partner.size());
    for (int h = 0; h < n; ++h) {
      const int p = partner[h];
      if (p < 0 || p >= n || p == h || partner[p] != h) {
        throw MalformedInput("pairing is not a perfect matching at " +
                             to_string(HalfEdgeRef::from_index(h)));
      }
    }
    FramedGraph g;
    g.partner_ = std::move(partner);
    g.circles_ = circles;
    return g;
  }

  static FramedGraph from_raw(const RawGraph& raw) {
    auto violations = validate(raw);
    if (!violations.empty()) {
      std::string msg = "invalid framed graph:";
      for (const auto& v : violations) {
        msg += " " + v.what;
        for (auto r : v.where) msg += " " + to_string(r);
        msg += ";";
      }
      throw MalformedInput(msg);
    }
    std::vector<int> partner(4 * static_cast<std::size_t>(raw.vertex_count), -1);
    for (const auto& [a, b] : raw.pairs) {
      partner[a.index()] = b.index();
      partner[b.index()] = a.index();
    }
    return from_partners(std::move(partner), raw.free_circles);
  }

  static FramedGraph circles(int count) { return from_partners({}, count); }

  int vertex_count() const { return static_cast<int>(partner_.size() / 4); }
  int half_edge_count() const { return static_cast<int>(partner_.size()); }
  int edge_count() const { return half_edge_count() / 2; }
  int partner(int h) const { return partner_[h]; }
  int free_circles() const { return circles_; }
  const std::vector<int>& partners() const { return partner_; }

  RawGraph to_raw() const {
    RawGraph raw;
    raw.vertex_count = vertex_count();
    raw.free_circles = circles_;
    for (int h = 0; h < half_edge_count(); ++h) {
      if (h < partner_[h]) {
        raw.pairs.emplace_back(HalfEdgeRef::from_index(h), HalfEdgeRef::from_index(partner_[h]));
      }
    }
    return raw;
  }

  bool operator==(const FramedGraph&) const = default;

 private:
  std::vector<int> partner_;
  int circles_ = 0;
};

inline std::vector<Violation> validate(const FramedGraph& g) { return validate(g.to_raw()); }

// Vertex relabeling combined with a framing-preserving slot permutation at
// every vertex. vertex_perm[old] = new; slot_maps[old][s] = new slot.
inline FramedGraph relabel(const FramedGraph& g, std::span<const int> vertex_perm,
                           std::span<const std::array<int, 4>> slot_maps = {}) {
  const int n = g.vertex_count();
  auto image = [&](int h) {
    const int v = h / 4;
    const int s = slot_maps.empty() ? h % 4 : slot_maps[v][h % 4];
    return 4 * vertex_perm[v] + s;
  };
  std::vector<int> partner(g.half_edge_count());
  for (int h = 0; h < 4 * n; ++h) partner[image(h)] = image(g.partner(h));
  return FramedGraph::from_partners(std::move(partner), g.free_circles());
}

// ---------------------------------------------------------------------------
// Strands (unicursal components)

// One pass of a strand through a vertex: enters at entry_slot, leaves at the
// opposite slot. pair() identifies the opposite pair {0,2} (0) or {1,3} (1).
struct Passage {
  int vertex = 0;
  int entry_slot = 0;

  int exit_slot() const { return opposite_slot(entry_slot); }
  int pair() const { return entry_slot & 1; }
  bool operator==(const Passage&) const = default;
};

using Strand = std::vector<Passage>;

// Strands in a deterministic order: each starts at the lowest unvisited
// half-edge, entered there.
inline std::vector<Strand> strands(const FramedGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint8_t> seen(2 * static_cast<std::size_t>(n), 0);
  std::vector<Strand> out;
  for (int h = 0; h < 4 * n; ++h) {
    const Passage start{h / 4, h % 4};
    if (seen[2 * start.vertex + start.pair()]) continue;
    Strand s;
    Passage cur = start;
    do {
      seen[2 * cur.vertex + cur.pair()] = 1;
      s.push_back(cur);
      const int next = g.partner(4 * cur.vertex + cur.exit_slot());
      cur = Passage{next / 4, next % 4};
    } while (!(cur == start));
    out.push_back(std::move(s));
  }
  return out;
}

// A chosen direction of travel along every strand: exits[h] is 1 when the
// traversal leaves its vertex through half-edge h.
struct TraversalOrientation {
  std::vector<std::uint8_t> exits;
  bool operator==(const TraversalOrientation&) const = default;
};

inline TraversalOrientation traversal_from(const FramedGraph& g, std::span<const Strand> ss) {
  TraversalOrientation t;
  t.exits.assign(g.half_edge_count(), 0);
  for (const auto& s : ss)
    for (const auto& p : s) t.exits[4 * p.vertex + p.exit_slot()] = 1;
  return t;
}

inline TraversalOrientation default_traversal(const FramedGraph& g) {
  const auto ss = strands(g);
  return traversal_from(g, ss);
}

inline bool is_consistent(const FramedGraph& g, const TraversalOrientation& t) {
  if (static_cast<int>(t.exits.size()) != g.half_edge_count()) return false;
  for (int h = 0; h < g.half_edge_count(); ++h) {
    if (t.exits[h] == t.exits[opposite_half_edge(h)]) return false;
    if (t.exits[h] == t.exits[g.partner(h)]) return false;
  }
  return true;
}

struct UnicursalComponents {
  std::vector<int> of_half_edge;  // strand index owning each half-edge
  int unicursal = 0;
  int circular = 0;
  int total() const { return unicursal + circular; }
};

inline UnicursalComponents unicursal_components(const FramedGraph& g) {
  UnicursalComponents c;
  c.of_half_edge.assign(g.half_edge_count(), -1);
  const auto ss = strands(g);
  for (int i = 0; i < static_cast<int>(ss.size()); ++i) {
    for (const auto& p : ss[i]) {
      c.of_half_edge[4 * p.vertex + p.entry_slot] = i;
      c.of_half_edge[4 * p.vertex + p.exit_slot()] = i;
    }
  }
  c.unicursal = static_cast<int>(ss.size());
  c.circular = g.free_circles();
  return c;
}

inline int component_count(const FramedGraph& g) {
  return static_cast<int>(strands(g).size()) + g.free_circles();
}

// Connected components of the underlying graph (vertices only).
inline std::vector<int> vertex_components(const FramedGraph& g, int* count = nullptr) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < 4; ++s) {
        const int w = g.partner(4 * v + s) / 4;
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

// ---------------------------------------------------------------------------
// Source-sink structures

// polarity[v] = which opposite pair emanates from v: 0 -> {0,2}, 1 -> {1,3}.
struct SourceSinkStructure {
  std::vector<std::uint8_t> polarity;
  std::vector<std::uint8_t> circle_orientations;
  auto operator<=>(const SourceSinkStructure&) const = default;
};

inline bool emanates(std::span<const std::uint8_t> polarity, int h) {
  return ((h & 3) & 1) == polarity[h / 4];
}

inline bool is_source_sink(const FramedGraph& g, std::span<const std::uint8_t> polarity) {
  if (static_cast<int>(polarity.size()) != g.vertex_count()) return false;
  for (int h = 0; h < g.half_edge_count(); ++h)
    if (emanates(polarity, h) == emanates(polarity, g.partner(h))) return false;
  return true;
}

// Polarity forced by the pairing, with polarity 0 at the smallest vertex of
// every connected component; nullopt when the graph is not good.
inline std::optional<std::vector<std::uint8_t>> base_polarity(const FramedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> p(n, -1);
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (p[root] >= 0) continue;
    p[root] = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < 4; ++s) {
        const int q = g.partner(4 * v + s);
        const int w = q / 4;
        // the two ends of an edge must differ in emanation
        const int want = p[v] ^ 1 ^ (s & 1) ^ (q & 1);
        if (p[w] < 0) {
          p[w] = want;
          stack.push_back(w);
        } else if (p[w] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return std::vector<std::uint8_t>(p.begin(), p.end());
}

inline bool is_good(const FramedGraph& g) { return base_polarity(g).has_value(); }

// Every source-sink structure, lexicographically ordered. A connected good
// graph has exactly two; each free circle doubles the count.
inline std::vector<SourceSinkStructure> source_sink_structures(const FramedGraph& g) {
  auto base = base_polarity(g);
  if (!base) return {};
  int comps = 0;
  const auto comp = vertex_components(g, &comps);
  const int bits = comps + g.free_circles();
  if (bits > 20) throw ScaleLimit("too many components to list source-sink structures");
  std::vector<SourceSinkStructure> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    SourceSinkStructure s;
    s.polarity = *base;
    for (int v = 0; v < g.vertex_count(); ++v) s.polarity[v] ^= (mask >> comp[v]) & 1u;
    for (int c = 0; c < g.free_circles(); ++c)
      s.circle_orientations.push_back(static_cast<std::uint8_t>((mask >> (comps + c)) & 1u));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Vertex deletion with rejoining

// How the four half-edges at a deleted vertex are rejoined.
enum class Joining {
  Opposite,   // {0,2} {1,3}: vertex removal
  ParallelA,  // {0,1} {2,3}
  ParallelB,  // {0,3} {1,2}
};

inline constexpr int mate(Joining j, int slot) {
  switch (j) {
    case Joining::Opposite: return slot ^ 2;
    case Joining::ParallelA: return slot ^ 1;
    case Joining::ParallelB: return 3 - slot;
  }
  return slot;
}

enum class Smoothing { ParallelA, ParallelB };

inline constexpr Joining joining_of(Smoothing s) {
  return s == Smoothing::ParallelA ? Joining::ParallelA : Joining::ParallelB;
}

struct Junction {
  int vertex = 0;
  Joining joining = Joining::Opposite;
};

struct Resolution {
  FramedGraph graph;
  std::vector<int> vertex_map;  // old vertex -> new vertex, -1 if deleted
};

// Deletes every listed vertex at once, rejoining its half-edges as requested.
// Chains that close up without meeting a surviving vertex become circles.
inline Resolution resolve(const FramedGraph& g, std::span<const Junction> junctions) {
  const int n = g.vertex_count();
  std::vector<int> joining(n, -1);
  for (const auto& j : junctions) {
    if (j.vertex < 0 || j.vertex >= n) throw DomainError("vertex " + std::to_string(j.vertex) + " does not exist");
    joining[j.vertex] = static_cast<int>(j.joining);
  }
  Resolution r;
  r.vertex_map.assign(n, -1);
  int kept = 0;
  for (int v = 0; v < n; ++v)
    if (joining[v] < 0) r.vertex_map[v] = kept++;

  auto deleted = [&](int h) { return joining[h / 4] >= 0; };
  auto mate_of = [&](int h) { return (h & ~3) | mate(static_cast<Joining>(joining[h / 4]), h & 3); };
  auto renumber = [&](int h) { return 4 * r.vertex_map[h / 4] + (h & 3); };

  std::vector<std::uint8_t> used(g.half_edge_count(), 0);
  std::vector<int> partner(4 * static_cast<std::size_t>(kept), -1);
  for (int h = 0; h < g.half_edge_count(); ++h) {
    if (deleted(h) || partner[renumber(h)] >= 0) continue;
    int y = g.partner(h);
    while (deleted(y)) {
      used[y] = 1;
      const int m = mate_of(y);
      used[m] = 1;
      y = g.partner(m);
    }
    partner[renumber(h)] = renumber(y);
    partner[renumber(y)] = renumber(h);
  }
  int circles = g.free_circles();
  for (int h = 0; h < g.half_edge_count(); ++h) {
    if (!deleted(h) || used[h]) continue;
    int y = h;
    do {
      used[y] = 1;
      const int p = g.partner(y);
      used[p] = 1;
      y = mate_of(p);
    } while (y != h);
    ++circles;
  }
  r.graph = FramedGraph::from_partners(std::move(partner), circles);
  return r;
}

inline Resolution resolve_one(const FramedGraph& g, int v, Joining j) {
  const Junction junction{v, j};
  return resolve(g, std::span<const Junction>(&junction, 1));
}

inline FramedGraph remove_vertex(const FramedGraph& g, int v) {
  return resolve_one(g, v, Joining::Opposite).graph;
}

inline FramedGraph smooth(const FramedGraph& g, int v, Smoothing way) {
  return resolve_one(g, v, joining_of(way)).graph;
}

// The smoothing at v that keeps the direction of travel on both strands:
// the strand arriving on one passage leaves along the other.
inline Joining oriented_joining(const FramedGraph& g, int v, const TraversalOrientation& t) {
  if (v < 0 || v >= g.vertex_count()) throw DomainError("vertex " + std::to_string(v) + " does not exist");
  if (!is_consistent(g, t)) throw DomainError("traversal orientation does not match the graph");
  const auto comps = unicursal_components(g);
  if (comps.of_half_edge[4 * v] != comps.of_half_edge[4 * v + 1]) {
    throw NotApplicable("passes through vertex " + std::to_string(v) + " lie on different components");
  }
  const int entry0 = t.exits[4 * v + 0] ? 2 : 0;
  const int entry1 = t.exits[4 * v + 1] ? 3 : 1;
  // entry0 is rejoined with the exit of the other pass, opposite_slot(entry1)
  return (entry0 / 2 == entry1 / 2) ? Joining::ParallelB : Joining::ParallelA;
}

inline FramedGraph oriented_smooth(const FramedGraph& g, int v, const TraversalOrientation& t) {
  return resolve_one(g, v, oriented_joining(g, v, t)).graph;
}

inline FramedGraph oriented_smooth(const FramedGraph& g, int v) {
  return oriented_smooth(g, v, default_traversal(g));
}

// ---------------------------------------------------------------------------
// Bigons

// Two edges between distinct vertices v1 < v2, non-opposite at both ends.
// first/second are the half-edges of the two edges at v1.
struct Bigon {
  int v1 = 0;
  int v2 = 0;
  int first = 0;
  int second = 0;
  bool operator==(const Bigon&) const = default;
};

inline std::vector<Bigon> find_bigons(const FramedGraph& g) {
  std::vector<Bigon> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        if (!adjacent_slots(a, b)) continue;
        const int pa = g.partner(4 * v + a);
        const int pb = g.partner(4 * v + b);
        const int w = pa / 4;
        if (w <= v || pb / 4 != w) continue;
        if (!adjacent_slots(pa & 3, pb & 3)) continue;
        out.push_back({v, w, 4 * v + a, 4 * v + b});
      }
    }
  }
  return out;
}

inline bool is_irreducible(const FramedGraph& g) { return find_bigons(g).empty(); }

// ---------------------------------------------------------------------------
// Gauss codes

inline std::string default_vertex_name(int index) {
  std::string name(1, static_cast<char>('A' + index % 26));
  if (index >= 26) name += std::to_string(index / 26);
  return name;
}

struct GaussDiagram {
  FramedGraph graph;
  TraversalOrientation traversal;
  std::vector<std::string> names;  // vertex index -> symbol
};

// One vertex per symbol, numbered by first appearance. The first pass through
// a symbol enters slot 0 and leaves slot 2, the second enters 1 and leaves 3.
inline GaussDiagram from_gauss_codes(const std::vector<std::vector<std::string>>& words, int circles) {
  if (circles < 0) throw MalformedInput("negative circle count");
  GaussDiagram d;
  std::map<std::string, int> index;
  std::vector<int> seen;
  struct Occ {
    int vertex;
    int entry;
  };
  std::vector<std::vector<Occ>> occs;
  for (const auto& w : words) {
    if (w.empty()) throw MalformedInput("empty Gauss word");
    auto& row = occs.emplace_back();
    for (const auto& sym : w) {
      auto [it, fresh] = index.try_emplace(sym, static_cast<int>(d.names.size()));
      if (fresh) {
        d.names.push_back(sym);
        seen.push_back(0);
      }
      const int v = it->second;
      if (seen[v] >= 2) throw MalformedInput("symbol '" + sym + "' occurs more than twice");
      row.push_back({v, seen[v] == 0 ? 0 : 1});
      ++seen[v];
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (seen[v] != 2) throw MalformedInput("symbol '" + d.names[v] + "' occurs once");

  std::vector<int> partner(4 * d.names.size(), -1);
  for (const auto& row : occs) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Occ& cur = row[i];
      const Occ& next = row[(i + 1) % row.size()];
      const int out = 4 * cur.vertex + opposite_slot(cur.entry);
      const int in = 4 * next.vertex + next.entry;
      partner[out] = in;
      partner[in] = out;
    }
  }
  d.graph = FramedGraph::from_partners(std::move(partner), circles);
  d.traversal.exits.assign(d.graph.half_edge_count(), 0);
  for (const auto& row : occs)
    for (const auto& o : row) d.traversal.exits[4 * o.vertex + opposite_slot(o.entry)] = 1;
  return d;
}

}  // namespace gknot
