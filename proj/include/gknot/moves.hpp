#pragma once

// Labeled Reidemeister moves on G-graphs: enumeration of sites and their
// application.
//
// Edges are named by one of their half-edges h (the edge h -- partner(h));
// negative edge values stand for free circles.

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "gknot/labeled.hpp"

namespace gknot {

enum class MoveKind { R1Minus, R1Plus, R2Minus, R2Plus, R3 };

inline constexpr unsigned kind_bit(MoveKind k) { return 1u << static_cast<unsigned>(k); }
inline constexpr unsigned kAllMoves = 0x1f;
inline constexpr unsigned kDecreasingMoves =
    kind_bit(MoveKind::R1Minus) | kind_bit(MoveKind::R2Minus) | kind_bit(MoveKind::R3);
inline constexpr unsigned kIncreasingMoves = kind_bit(MoveKind::R1Plus) | kind_bit(MoveKind::R2Plus);

inline const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1Minus: return "R1-";
    case MoveKind::R1Plus: return "R1+";
    case MoveKind::R2Minus: return "R2-";
    case MoveKind::R2Plus: return "R2+";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

inline constexpr int kCircle = -1;        // a free circle
inline constexpr int kOtherCircle = -2;   // a second, different free circle

struct MoveSite {
  MoveKind kind = MoveKind::R1Minus;
  int vertex = -1;                 // R1-: the kink vertex; R2-: first bigon vertex
  int vertex2 = -1;                // R2-: second bigon vertex
  std::array<int, 6> triangle{};   // R3: x.a, y.b, y.c, z.d, z.e, x.f
  int edge = -1;                   // R1+/R2+: first edge (or kCircle)
  int edge2 = -1;                  // R2+: second edge, same as edge, kCircle or kOtherCircle
  int variant = 0;                 // R1+: side of the kink; R2+: order on the second strand
  Element label;                   // R2+: label g of the first new vertex (the second gets g^-1)

  bool operator==(const MoveSite&) const = default;
};

inline std::string describe(const MoveSite& s) {
  std::string out = kind_name(s.kind);
  auto he = [](int h) { return h < 0 ? std::string(h == kCircle ? "circle" : "circle2") : to_string(HalfEdgeRef::from_index(h)); };
  switch (s.kind) {
    case MoveKind::R1Minus: out += " vertex " + std::to_string(s.vertex); break;
    case MoveKind::R2Minus: out += " vertices " + std::to_string(s.vertex) + "," + std::to_string(s.vertex2); break;
    case MoveKind::R3:
      out += " triangle";
      for (int h : s.triangle) out += " " + he(h);
      break;
    case MoveKind::R1Plus: out += " edge " + he(s.edge) + " side " + std::to_string(s.variant); break;
    case MoveKind::R2Plus:
      out += " edges " + he(s.edge) + " " + he(s.edge2) + " order " + std::to_string(s.variant);
      break;
  }
  return out;
}

struct MoveOptions {
  unsigned kinds = kAllMoves;
  // Labels offered to R2+; empty means every element of a finite group, or
  // for an infinite group the identity, the labels present and their inverses.
  std::vector<Element> r2_labels;
};

namespace detail {

inline int edge_rep(const FramedGraph& g, int h) { return std::min(h, g.partner(h)); }

struct Triangle {
  std::array<int, 6> he;  // x.a, y.b, y.c, z.d, z.e, x.f
};

// Each triangle once. With a polarity, the triangle is read in its direction
// of travel (x -> y along x.a); otherwise from the smallest vertex towards
// the smaller neighbour.
inline std::vector<Triangle> find_triangles(const FramedGraph& g, const std::optional<std::vector<std::uint8_t>>& pol) {
  std::vector<Triangle> out;
  std::set<std::array<int, 3>> seen;
  const int n = g.vertex_count();
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < 4; ++a) {
      const int xa = 4 * x + a;
      const int yb = g.partner(xa);
      const int y = yb / 4;
      if (y <= x) continue;
      for (int dc : {1, 3}) {
        const int yc = 4 * y + ((yb + dc) & 3);
        const int zd = g.partner(yc);
        const int z = zd / 4;
        if (z <= x || z == y) continue;
        for (int de : {1, 3}) {
          const int ze = 4 * z + ((zd + de) & 3);
          const int xf = g.partner(ze);
          if (xf / 4 != x || !adjacent_slots(xf & 3, a)) continue;
          if (pol) {
            if (!emanates(*pol, xa)) continue;
          } else if (z < y) {
            continue;
          }
          std::array<int, 3> edges = {edge_rep(g, xa), edge_rep(g, yc), edge_rep(g, ze)};
          std::sort(edges.begin(), edges.end());
          if (!seen.insert(edges).second) continue;
          out.push_back({{xa, yb, yc, zd, ze, xf}});
        }
      }
    }
  return out;
}

inline bool is_unit_kink(const FramedGraph& g, int v) {
  for (int s = 0; s < 4; ++s) {
    const int p = g.partner(4 * v + s);
    if (p / 4 == v && adjacent_slots(s, p & 3)) return true;
  }
  return false;
}

// Builder for insertions: copies the pairing and appends vertices.
struct Splicer {
  std::vector<int> partner;
  int circles;

  Splicer(const FramedGraph& g, int extra) : partner(g.partners()), circles(g.free_circles()) {
    partner.resize(partner.size() + 4 * static_cast<std::size_t>(extra), -1);
  }
  void link(int a, int b) {
    partner[a] = b;
    partner[b] = a;
  }
  // Threads passages (entry, exit) into edge h -- partner(h), or into a free
  // circle when h < 0.
  void thread(int h, const std::vector<std::pair<int, int>>& passages) {
    if (h < 0) {
      if (circles <= 0) throw StaleSite("no free circle to use");
      --circles;
      for (std::size_t i = 0; i + 1 < passages.size(); ++i) link(passages[i].second, passages[i + 1].first);
      link(passages.back().second, passages.front().first);
      return;
    }
    const int p = partner[h];
    link(h, passages.front().first);
    for (std::size_t i = 0; i + 1 < passages.size(); ++i) link(passages[i].second, passages[i + 1].first);
    link(passages.back().second, p);
  }
  FramedGraph build() { return FramedGraph::from_partners(std::move(partner), circles); }
};

inline std::vector<Element> r2_alphabet(const GGraph& k, const MoveOptions& opt) {
  if (!opt.r2_labels.empty()) return opt.r2_labels;
  const Group& G = k.group();
  if (G.is_finite()) return G.elements();
  std::set<Element> s{G.identity()};
  for (const auto& l : k.labels()) {
    s.insert(l);
    s.insert(G.inverse(l));
  }
  return {s.begin(), s.end()};
}

// Raw R2+ result (before orientation handling).
inline FramedGraph r2_plus_shadow(const FramedGraph& g, int e1, int e2, int variant) {
  const int X = g.vertex_count(), Y = X + 1;
  Splicer sp(g, 2);
  auto pass = [](int v, int entry) { return std::pair<int, int>{4 * v + entry, 4 * v + entry + 2}; };
  if (e1 == e2) {
    if (variant == 0) sp.thread(e1, {pass(X, 0), pass(Y, 0), pass(X, 1), pass(Y, 1)});
    else sp.thread(e1, {pass(X, 0), pass(Y, 0), pass(Y, 1), pass(X, 1)});
  } else {
    sp.thread(e1, {pass(X, 0), pass(Y, 0)});
    if (variant == 0) sp.thread(e2 == kOtherCircle ? kCircle : e2, {pass(X, 1), pass(Y, 1)});
    else sp.thread(e2 == kOtherCircle ? kCircle : e2, {pass(Y, 1), pass(X, 1)});
  }
  return sp.build();
}

inline FramedGraph r1_plus_shadow(const FramedGraph& g, int e, int side) {
  const int w = g.vertex_count();
  Splicer sp(g, 1);
  if (e < 0) {
    if (sp.circles <= 0) throw StaleSite("no free circle to use");
    --sp.circles;
    if (side == 0) {
      sp.link(4 * w + 2, 4 * w + 1);
      sp.link(4 * w + 3, 4 * w + 0);
    } else {
      sp.link(4 * w + 2, 4 * w + 3);
      sp.link(4 * w + 1, 4 * w + 0);
    }
    return sp.build();
  }
  const int p = sp.partner[e];
  sp.link(e, 4 * w + 0);
  if (side == 0) {
    sp.link(4 * w + 2, 4 * w + 1);
    sp.link(4 * w + 3, p);
  } else {
    sp.link(4 * w + 2, 4 * w + 3);
    sp.link(4 * w + 1, p);
  }
  return sp.build();
}

inline std::vector<int> edge_reps(const FramedGraph& g) {
  std::vector<int> out;
  for (int h = 0; h < g.half_edge_count(); ++h)
    if (h < g.partner(h)) out.push_back(h);
  return out;
}

inline std::vector<int> carry_hints(const GGraph& k, int new_half_edges) {
  std::vector<int> hint(new_half_edges, -1);
  if (!k.oriented()) return hint;
  for (int h = 0; h < k.shadow().half_edge_count(); ++h) hint[h] = emanates(*k.polarity(), h);
  return hint;
}

// Source-sink structure of g agreeing with every hint, if there is one.
inline std::optional<std::vector<std::uint8_t>> matching_polarity(const FramedGraph& g, const std::vector<int>& hint) {
  auto pol = extend_polarity(g, hint);
  if (!pol) return std::nullopt;
  for (int h = 0; h < g.half_edge_count(); ++h)
    if (hint[h] >= 0 && static_cast<int>(emanates(*pol, h)) != hint[h]) return std::nullopt;
  return pol;
}

inline GGraph finish(const GGraph& k, FramedGraph g, std::vector<Element> labels, const std::vector<int>& hint) {
  if (!k.oriented()) return GGraph(std::move(g), k.group(), std::move(labels));
  auto pol = matching_polarity(g, hint);
  if (!pol) throw InternalError("move does not carry the source-sink structure over");
  return GGraph(std::move(g), k.group(), std::move(labels), std::move(pol));
}

// An R2+ insertion is admitted for an oriented diagram when the result has a
// structure extending the one on the untouched edges.
inline bool r2_plus_fits(const GGraph& k, const FramedGraph& ng) {
  if (!k.oriented()) return true;
  return matching_polarity(ng, carry_hints(k, ng.half_edge_count())).has_value();
}

}  // namespace detail

inline std::vector<MoveSite> enumerate_moves(const GGraph& k, const MoveOptions& opt = {}) {
  const FramedGraph& g = k.shadow();
  const Group& G = k.group();
  std::vector<MoveSite> out;
  const int n = g.vertex_count();
  auto want = [&](MoveKind m) { return (opt.kinds & kind_bit(m)) != 0; };

  if (want(MoveKind::R1Minus))
    for (int v = 0; v < n; ++v)
      if (G.is_identity(k.label(v)) && detail::is_unit_kink(g, v)) {
        MoveSite s;
        s.kind = MoveKind::R1Minus;
        s.vertex = v;
        out.push_back(s);
      }

  if (want(MoveKind::R2Minus)) {
    std::set<std::pair<int, int>> seen;
    for (const auto& b : find_bigons(g)) {
      if (!G.is_identity(G.multiply(k.label(b.v1), k.label(b.v2)))) continue;
      if (!seen.insert({b.v1, b.v2}).second) continue;
      MoveSite s;
      s.kind = MoveKind::R2Minus;
      s.vertex = b.v1;
      s.vertex2 = b.v2;
      out.push_back(s);
    }
  }

  if (want(MoveKind::R3))
    for (const auto& t : detail::find_triangles(g, k.polarity())) {
      const Element prod =
          G.multiply(G.multiply(k.label(t.he[0] / 4), k.label(t.he[2] / 4)), k.label(t.he[4] / 4));
      if (!G.is_identity(prod)) continue;
      MoveSite s;
      s.kind = MoveKind::R3;
      s.triangle = t.he;
      out.push_back(s);
    }

  const auto edges = detail::edge_reps(g);
  if (want(MoveKind::R1Plus)) {
    std::vector<int> places = edges;
    if (g.free_circles() > 0) places.insert(places.begin(), kCircle);
    for (int e : places)
      for (int side : {0, 1}) {
        MoveSite s;
        s.kind = MoveKind::R1Plus;
        s.edge = e;
        s.variant = side;
        out.push_back(s);
      }
  }

  if (want(MoveKind::R2Plus)) {
    struct Place {
      int e1, e2, variants;
    };
    std::vector<Place> places;
    const int c = g.free_circles();
    if (c >= 1) places.push_back({kCircle, kCircle, 2});
    if (c >= 2) places.push_back({kCircle, kOtherCircle, 1});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (c >= 1) places.push_back({edges[i], kCircle, 1});
      for (std::size_t j = i; j < edges.size(); ++j) places.push_back({edges[i], edges[j], 2});
    }
    const auto alphabet = detail::r2_alphabet(k, opt);
    for (const auto& p : places)
      for (int var = 0; var < p.variants; ++var) {
        if (!detail::r2_plus_fits(k, detail::r2_plus_shadow(g, p.e1, p.e2, var))) continue;
        for (const auto& l : alphabet) {
          MoveSite s;
          s.kind = MoveKind::R2Plus;
          s.edge = p.e1;
          s.edge2 = p.e2;
          s.variant = var;
          s.label = l;
          out.push_back(s);
        }
      }
  }
  return out;
}

inline GGraph apply_move(const GGraph& k, const MoveSite& s) {
  const FramedGraph& g = k.shadow();
  const Group& G = k.group();
  const int n = g.vertex_count();
  auto stale = [&](const std::string& why) { return StaleSite(describe(s) + ": " + why); };
  auto vertex_ok = [&](int v) { return v >= 0 && v < n; };
  auto edge_ok = [&](int e) { return e >= 0 && e < g.half_edge_count() && e < g.partner(e); };

  switch (s.kind) {
    case MoveKind::R1Minus:
    case MoveKind::R2Minus: {
      std::vector<Junction> js;
      if (s.kind == MoveKind::R1Minus) {
        if (!vertex_ok(s.vertex)) throw stale("vertex out of range");
        if (!G.is_identity(k.label(s.vertex))) throw stale("label is not the identity");
        if (!detail::is_unit_kink(g, s.vertex)) throw stale("no loop on adjacent slots");
        js.push_back({s.vertex, Joining::Opposite});
      } else {
        if (!vertex_ok(s.vertex) || !vertex_ok(s.vertex2) || s.vertex >= s.vertex2) throw stale("bad vertices");
        const auto bs = find_bigons(g);
        if (std::none_of(bs.begin(), bs.end(), [&](const Bigon& b) { return b.v1 == s.vertex && b.v2 == s.vertex2; }))
          throw stale("no bigon between the vertices");
        if (!G.is_identity(G.multiply(k.label(s.vertex), k.label(s.vertex2))))
          throw stale("labels are not mutually inverse");
        js.push_back({s.vertex, Joining::Opposite});
        js.push_back({s.vertex2, Joining::Opposite});
      }
      auto r = resolve(g, js);
      std::vector<Element> labels(r.graph.vertex_count());
      std::vector<int> hint(r.graph.half_edge_count(), -1);
      for (int v = 0; v < n; ++v) {
        const int nv = r.vertex_map[v];
        if (nv < 0) continue;
        labels[nv] = k.label(v);
        if (k.oriented())
          for (int t = 0; t < 4; ++t) hint[4 * nv + t] = emanates(*k.polarity(), 4 * v + t);
      }
      return detail::finish(k, std::move(r.graph), std::move(labels), hint);
    }

    case MoveKind::R3: {
      const auto ts = detail::find_triangles(g, k.polarity());
      if (std::none_of(ts.begin(), ts.end(), [&](const detail::Triangle& t) { return t.he == s.triangle; }))
        throw stale("not a triangle of this diagram");
      const auto& t = s.triangle;
      const int x = t[0] / 4, y = t[2] / 4, z = t[4] / 4;
      if (!G.is_identity(G.multiply(G.multiply(k.label(x), k.label(y)), k.label(z))))
        throw stale("labels do not multiply to the identity");
      std::vector<int> phi(g.half_edge_count());
      for (int h = 0; h < g.half_edge_count(); ++h) phi[h] = h;
      auto swap_ext = [&](int u, int w) {
        phi[opposite_half_edge(u)] = opposite_half_edge(w);
        phi[opposite_half_edge(w)] = opposite_half_edge(u);
      };
      swap_ext(t[0], t[1]);
      swap_ext(t[2], t[3]);
      swap_ext(t[4], t[5]);
      std::set<int> tri(t.begin(), t.end());
      std::vector<int> partner(g.half_edge_count(), -1);
      for (int h = 0; h < g.half_edge_count(); ++h) {
        if (tri.count(h)) {
          partner[h] = g.partner(h);
          continue;
        }
        partner[phi[h]] = phi[g.partner(h)];
      }
      auto ng = FramedGraph::from_partners(std::move(partner), g.free_circles());
      std::vector<Element> labels = k.labels();
      for (int v : {x, y, z}) labels[v] = G.inverse(labels[v]);
      std::vector<int> hint(g.half_edge_count(), -1);
      if (k.oriented())
        for (int h = 0; h < g.half_edge_count(); ++h)
          if (!tri.count(h)) hint[phi[h]] = emanates(*k.polarity(), h);
      return detail::finish(k, std::move(ng), std::move(labels), hint);
    }

    case MoveKind::R1Plus: {
      if (s.variant != 0 && s.variant != 1) throw stale("bad side");
      if (s.edge == kCircle) {
        if (g.free_circles() < 1) throw stale("no free circle");
      } else if (!edge_ok(s.edge)) {
        throw stale("not an edge");
      }
      auto ng = detail::r1_plus_shadow(g, s.edge, s.variant);
      std::vector<Element> labels = k.labels();
      labels.push_back(G.identity());
      auto hint = detail::carry_hints(k, ng.half_edge_count());
      return detail::finish(k, std::move(ng), std::move(labels), hint);
    }

    case MoveKind::R2Plus: {
      if (s.variant != 0 && s.variant != 1) throw stale("bad order");
      if (s.edge == kCircle) {
        const int need = s.edge2 == kOtherCircle ? 2 : 1;
        if (s.edge2 != kCircle && s.edge2 != kOtherCircle) throw stale("circle must come second");
        if (g.free_circles() < need) throw stale("not enough free circles");
        if (s.edge2 == kOtherCircle && s.variant != 0) throw stale("bad order");
      } else {
        if (!edge_ok(s.edge)) throw stale("not an edge");
        if (s.edge2 == kCircle) {
          if (g.free_circles() < 1) throw stale("no free circle");
          if (s.variant != 0) throw stale("bad order");
        } else if (!edge_ok(s.edge2) || s.edge2 < s.edge) {
          throw stale("not an edge");
        }
      }
      G.check(s.label);
      auto ng = detail::r2_plus_shadow(g, s.edge, s.edge2, s.variant);
      if (!detail::r2_plus_fits(k, ng)) throw stale("insertion is incompatible with the orientation");
      std::vector<Element> labels = k.labels();
      labels.push_back(s.label);
      labels.push_back(G.inverse(s.label));
      auto hint = detail::carry_hints(k, ng.half_edge_count());
      return detail::finish(k, std::move(ng), std::move(labels), hint);
    }
  }
  throw StaleSite("unknown move kind");
}

}  // namespace gknot
