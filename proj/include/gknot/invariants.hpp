#pragma once

// Parity bracket, group bracket, the delta family, crossing-number lower
// bounds and the enumeration of minimal diagrams.
//
// All combinations have coefficients mod 2: a term is either present or not.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "gknot/moves.hpp"

namespace gknot {

enum class Space {
  G2,  // unlabeled graphs modulo the second move
  SG,  // labeled graphs without unit labels modulo the second and third moves
  L2,  // two-component unlabeled links, terms with trivial components dropped
};

inline const char* space_name(Space s) {
  switch (s) {
    case Space::G2: return "G2";
    case Space::SG: return "SG";
    case Space::L2: return "L2";
  }
  return "?";
}

struct Combination {
  Space space = Space::G2;
  std::map<std::string, GGraph> terms;  // key -> representative; coefficient 1

  void toggle(const std::string& key, const GGraph& rep) {
    auto it = terms.find(key);
    if (it == terms.end()) terms.emplace(key, rep);
    else terms.erase(it);
  }
  void add(const Combination& o) {
    for (const auto& [k, g] : o.terms) toggle(k, g);
  }
  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& [k, g] : terms) out.push_back(k);
    return out;
  }
  bool operator==(const Combination& o) const { return space == o.space && keys() == o.keys(); }
};

inline constexpr std::size_t kDefaultOrbitCap = 100000;

struct Canonical {
  GGraph rep;
  std::string key;
};

// Explores everything reachable with the given non-increasing moves and
// returns the smallest key among the diagrams with fewest vertices.
inline Canonical closure_canonical(const GGraph& k, unsigned kinds, std::size_t cap = kDefaultOrbitCap) {
  MoveOptions opt;
  opt.kinds = kinds & kDecreasingMoves;
  std::unordered_set<std::string> seen;
  std::deque<GGraph> queue;
  Canonical best{k, k.key()};
  seen.insert(best.key);
  queue.push_back(k);
  while (!queue.empty()) {
    GGraph g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : enumerate_moves(g, opt)) {
      GGraph h = apply_move(g, s);
      std::string key = h.key();
      if (!seen.insert(key).second) continue;
      if (seen.size() > cap)
        throw CanonicalizationOverflow("more than " + std::to_string(cap) + " diagrams while canonicalizing " +
                                       k.key());
      if (h.vertex_count() < best.rep.vertex_count() ||
          (h.vertex_count() == best.rep.vertex_count() && key < best.key))
        best = Canonical{h, key};
      queue.push_back(std::move(h));
    }
  }
  return best;
}

// Removes bigons one at a time (for labeled input only those with mutually
// inverse labels) until none is left.
inline GGraph reduce_bigons(GGraph k) {
  MoveOptions opt;
  opt.kinds = kind_bit(MoveKind::R2Minus);
  while (true) {
    const auto sites = enumerate_moves(k, opt);
    if (sites.empty()) return k;
    k = apply_move(k, sites.front());
  }
}

inline FramedGraph reduce_bigons(const FramedGraph& g) { return reduce_bigons(GGraph::unlabeled(g)).shadow(); }

// Parity read from Z2 labels (or any labels: 0 = identity = even).
inline bool is_odd(const GGraph& k) {
  for (const auto& l : k.labels())
    if (k.group().is_identity(l)) return false;
  return true;
}

inline bool is_irreducible(const GGraph& k) { return find_bigons(k.shadow()).empty(); }

namespace detail {

inline void require_knot(const GGraph& k, const char* what) {
  const int c = component_count(k.shadow());
  if (c != 1)
    throw DomainError(std::string(what) + " needs a one-component diagram; got " + std::to_string(c) + " components");
}

inline std::vector<int> unit_vertices(const GGraph& k) {
  std::vector<int> out;
  for (int v = 0; v < k.vertex_count(); ++v)
    if (k.group().is_identity(k.label(v))) out.push_back(v);
  return out;
}

// Every way of smoothing the listed vertices that leaves a single component;
// survivors keep labels and polarity.
template <typename F>
void for_each_connected_smoothing(const GGraph& k, const std::vector<int>& vs, F&& f) {
  if (vs.size() > 20) throw ScaleLimit("too many vertices to smooth");
  const std::size_t total = std::size_t{1} << vs.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<Junction> js;
    for (std::size_t i = 0; i < vs.size(); ++i)
      js.push_back({vs[i], (mask >> i) & 1 ? Joining::ParallelB : Joining::ParallelA});
    auto r = resolve(k.shadow(), js);
    if (component_count(r.graph) != 1) continue;
    std::vector<Element> labels(r.graph.vertex_count());
    std::optional<std::vector<std::uint8_t>> pol;
    if (k.oriented()) pol.emplace(r.graph.vertex_count());
    for (int v = 0; v < k.vertex_count(); ++v) {
      const int nv = r.vertex_map[v];
      if (nv < 0) continue;
      labels[nv] = k.label(v);
      if (pol) (*pol)[nv] = (*k.polarity())[v];
    }
    f(GGraph(std::move(r.graph), k.group(), std::move(labels), std::move(pol)));
  }
}

}  // namespace detail

// Canonical form in the space of graphs modulo R2 (labels dropped).
inline Canonical g2_canonical(const FramedGraph& g, std::size_t cap = kDefaultOrbitCap) {
  return closure_canonical(GGraph::unlabeled(g), kind_bit(MoveKind::R2Minus), cap);
}

// Canonical form of a unit-free labeled diagram modulo R2 and R3.
inline Canonical sg_canonical(const GGraph& k, std::size_t cap = kDefaultOrbitCap) {
  return closure_canonical(k, kind_bit(MoveKind::R2Minus) | kind_bit(MoveKind::R3), cap);
}

// Canonical form of an unlabeled link: everything reachable by R1-, R2-, R3.
inline Canonical l2_canonical(const FramedGraph& g, std::size_t cap = kDefaultOrbitCap) {
  return closure_canonical(GGraph::unlabeled(g), kDecreasingMoves, cap);
}

// Sum over smoothings of the even (identity-labeled) vertices keeping one
// component; odd vertices survive unlabeled.
inline Combination parity_bracket(const GGraph& k, std::size_t cap = kDefaultOrbitCap) {
  detail::require_knot(k, "parity bracket");
  Combination out;
  out.space = Space::G2;
  detail::for_each_connected_smoothing(k, detail::unit_vertices(k), [&](const GGraph& s) {
    auto c = g2_canonical(s.shadow(), cap);
    out.toggle(c.key, c.rep);
  });
  return out;
}

// Sum over smoothings of the unit-labeled vertices keeping one component,
// valued in unit-free diagrams modulo R2 and R3.
inline Combination group_bracket(const GGraph& k, std::size_t cap = kDefaultOrbitCap) {
  detail::require_knot(k, "group bracket");
  Combination out;
  out.space = Space::SG;
  detail::for_each_connected_smoothing(k, detail::unit_vertices(k), [&](const GGraph& s) {
    auto c = sg_canonical(s, cap);
    out.toggle(c.key, c.rep);
  });
  return out;
}

enum class TrivialQuotient {
  AtLeastOne,  // drop links with at least one vertex-free component
  ExactlyOne,  // drop links with exactly one vertex-free component
};

struct DeltaOptions {
  TrivialQuotient quotient = TrivialQuotient::AtLeastOne;
  std::size_t cap = kDefaultOrbitCap;
};

namespace detail {

inline int trivial_components(const FramedGraph& g) { return g.free_circles(); }

inline Combination delta_over(const GGraph& k, const std::vector<int>& vs, const DeltaOptions& opt) {
  Combination out;
  out.space = Space::L2;
  const auto t = default_traversal(k.shadow());
  for (int v : vs) {
    const auto link = oriented_smooth(k.shadow(), v, t);
    auto c = l2_canonical(link, opt.cap);
    const int trivial = trivial_components(c.rep.shadow());
    const bool drop = opt.quotient == TrivialQuotient::AtLeastOne ? trivial >= 1 : trivial == 1;
    if (!drop) out.toggle(c.key, c.rep);
  }
  return out;
}

}  // namespace detail

// Sum over all vertices of the oriented smoothing.
inline Combination delta(const GGraph& k, const DeltaOptions& opt = {}) {
  detail::require_knot(k, "delta");
  std::vector<int> vs(k.vertex_count());
  for (int v = 0; v < k.vertex_count(); ++v) vs[v] = v;
  return detail::delta_over(k, vs, opt);
}

// Sum over vertices with non-identity labels.
inline Combination delta_nontrivial(const GGraph& k, const DeltaOptions& opt = {}) {
  detail::require_knot(k, "delta");
  std::vector<int> vs;
  for (int v = 0; v < k.vertex_count(); ++v)
    if (!k.group().is_identity(k.label(v))) vs.push_back(v);
  return detail::delta_over(k, vs, opt);
}

// Sum over vertices whose label lies in the inversion pair with key `pair`.
inline Combination delta_g(const GGraph& k, const std::string& pair, const DeltaOptions& opt = {}) {
  detail::require_knot(k, "delta");
  std::vector<int> vs;
  for (int v = 0; v < k.vertex_count(); ++v)
    if (!k.group().is_identity(k.label(v)) && k.group().inversion_pair_key(k.label(v)) == pair) vs.push_back(v);
  return detail::delta_over(k, vs, opt);
}

// Every nonzero delta_g, keyed by inversion pair.
inline std::map<std::string, Combination> delta_full(const GGraph& k, const DeltaOptions& opt = {}) {
  detail::require_knot(k, "delta");
  std::set<std::string> pairs;
  for (const auto& l : k.labels())
    if (!k.group().is_identity(l)) pairs.insert(k.group().inversion_pair_key(l));
  std::map<std::string, Combination> out;
  for (const auto& p : pairs) {
    auto c = delta_g(k, p, opt);
    if (!c.empty()) out.emplace(p, std::move(c));
  }
  return out;
}

inline int max_vertices(const Combination& c) {
  int m = 0;
  for (const auto& [key, g] : c.terms) m = std::max(m, g.vertex_count());
  return m;
}

// Every diagram equivalent to k has at least this many vertices: bracket
// terms are smoothings of it, delta_g terms are smoothings at one vertex.
inline int crossing_lower_bound(const GGraph& k, std::size_t cap = kDefaultOrbitCap) {
  const auto bracket = group_bracket(k, cap);
  int bound = max_vertices(bracket);
  DeltaOptions opt;
  opt.cap = cap;
  for (const auto& [pair, c] : delta_full(k, opt))
    if (!c.empty()) bound = std::max(bound, max_vertices(c) + 1);
  return bound;
}

// ---------------------------------------------------------------------------
// Enumeration of one-component diagrams with k vertices

struct Signature {
  std::vector<std::string> bracket;
  std::map<std::string, std::vector<std::string>> deltas;
  bool operator==(const Signature&) const = default;
  auto operator<=>(const Signature&) const = default;
};

inline Signature signature(const GGraph& k, std::size_t cap = kDefaultOrbitCap) {
  Signature s;
  s.bracket = group_bracket(k, cap).keys();
  DeltaOptions opt;
  opt.cap = cap;
  for (const auto& [p, c] : delta_full(k, opt)) s.deltas[p] = c.keys();
  return s;
}

enum class MinimalityStatus { CertifiedMinimal, Undetermined };

struct EnumeratedClass {
  std::string key;  // smallest key in the diagram's R3 orbit
  GGraph representative;
  MinimalityStatus status = MinimalityStatus::Undetermined;
  int lower_bound = 0;
};

namespace detail {

inline std::vector<std::vector<int>> gauss_words(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> word;
  std::vector<int> used(k, 0);
  auto rec = [&](auto&& self, int introduced) -> void {
    if (static_cast<int>(word.size()) == 2 * k) {
      out.push_back(word);
      return;
    }
    for (int s = 0; s < introduced; ++s)
      if (used[s] == 1) {
        used[s] = 2;
        word.push_back(s);
        self(self, introduced);
        word.pop_back();
        used[s] = 1;
      }
    if (introduced < k) {
      used[introduced] = 1;
      word.push_back(introduced);
      self(self, introduced + 1);
      word.pop_back();
      used[introduced] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

// All one-component diagrams with k vertices over G, deduplicated by key.
inline std::vector<GGraph> all_knots(const Group& G, int k) {
  std::vector<GGraph> out;
  std::set<std::string> seen;
  if (k == 0) {
    out.emplace_back(FramedGraph::circles(1), G, std::vector<Element>{});
    return out;
  }
  const auto els = G.elements();
  for (const auto& w : gauss_words(k)) {
    std::vector<std::string> word;
    for (int s : w) word.push_back(default_vertex_name(s));
    const auto g = from_gauss_codes({word}, 0).graph;
    std::vector<std::optional<std::vector<std::uint8_t>>> pols;
    if (G.is_abelian()) pols.push_back(std::nullopt);
    else
      for (const auto& s : source_sink_structures(g)) pols.push_back(s.polarity);
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= els.size();
    for (const auto& p : pols)
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<Element> ls;
        std::size_t c = code;
        for (int i = 0; i < k; ++i, c /= els.size()) ls.push_back(els[c % els.size()]);
        GGraph d(g, G, std::move(ls), p);
        if (seen.insert(d.key()).second) out.push_back(std::move(d));
      }
  }
  return out;
}

}  // namespace detail

struct EnumerationLimits {
  int max_vertices = 4;
  std::size_t max_group_order = 6;
  std::size_t orbit_cap = kDefaultOrbitCap;
};

// Classes of k-vertex diagrams (up to R3 and relabeling). A class is
// certified minimal when its lower bound reaches k or its invariant
// signature differs from that of every diagram with fewer vertices.
inline std::vector<EnumeratedClass> na_enumeration(const Group& G, int k, const EnumerationLimits& lim = {}) {
  if (k < 0) throw DomainError("vertex count must be non-negative");
  if (!G.is_finite()) throw ScaleLimit("enumeration needs a finite group");
  if (k > lim.max_vertices) throw ScaleLimit("enumeration is limited to " + std::to_string(lim.max_vertices) + " vertices");
  if (G.order() > lim.max_group_order)
    throw ScaleLimit("enumeration is limited to groups of order " + std::to_string(lim.max_group_order));

  std::map<std::string, EnumeratedClass> classes;
  for (auto& d : detail::all_knots(G, k)) {
    auto c = closure_canonical(d, kind_bit(MoveKind::R3), lim.orbit_cap);
    if (classes.count(c.key)) continue;
    EnumeratedClass e;
    e.key = c.key;
    e.representative = c.rep;
    classes.emplace(c.key, std::move(e));
  }

  std::set<Signature> smaller;
  bool smaller_ready = false;
  std::vector<EnumeratedClass> out;
  for (auto& [key, e] : classes) {
    e.lower_bound = crossing_lower_bound(e.representative, lim.orbit_cap);
    if (e.lower_bound >= k) {
      e.status = MinimalityStatus::CertifiedMinimal;
    } else {
      if (!smaller_ready) {
        for (int j = 0; j < k; ++j)
          for (const auto& d : detail::all_knots(G, j)) smaller.insert(signature(d, lim.orbit_cap));
        smaller_ready = true;
      }
      if (!smaller.count(signature(e.representative, lim.orbit_cap))) e.status = MinimalityStatus::CertifiedMinimal;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace gknot
