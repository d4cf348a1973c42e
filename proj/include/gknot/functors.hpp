#pragma once

// Maps between label theories: pushforward along a homomorphism, projection
// to a subgroup and the covering associated with an abelian quotient.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gknot/labeled.hpp"

namespace gknot {

class Homomorphism {
 public:
  Homomorphism() = default;

  // Determined by the images of a generating set. Finite sources are closed
  // under products and checked exhaustively; free sources need the image of
  // every generator x_i (or its inverse).
  static Homomorphism from_images(Group source, Group target, std::vector<std::pair<Element, Element>> images) {
    for (const auto& [g, h] : images) {
      source.check(g);
      target.check(h);
    }
    Homomorphism f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.defining_ = std::move(images);
    if (f.source_.is_finite()) f.close_finite();
    else f.bind_generators();
    return f;
  }

  static Homomorphism identity(const Group& G) {
    Homomorphism f;
    f.source_ = G;
    f.target_ = G;
    f.is_identity_ = true;
    return f;
  }

  static Homomorphism to_trivial(const Group& G) {
    Homomorphism f;
    f.source_ = G;
    f.target_ = Group::trivial();
    f.is_trivial_ = true;
    return f;
  }

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  const std::vector<std::pair<Element, Element>>& defining_images() const { return defining_; }

  Element operator()(const Element& g) const {
    source_.check(g);
    if (is_identity_) return g;
    if (is_trivial_) return target_.identity();
    if (!table_.empty()) return table_[source_.index_of(g)];
    Element out = target_.identity();
    for (int x : g.word) {
      const Element& img = generators_[static_cast<std::size_t>(std::abs(x) - 1)];
      out = target_.multiply(out, x > 0 ? img : target_.inverse(img));
    }
    return out;
  }

 private:
  void close_finite() {
    const auto els = source_.elements();
    if (els.size() > 4096) throw ScaleLimit("homomorphism source has more than 4096 elements");
    std::vector<std::optional<Element>> img(els.size());
    img[0] = target_.identity();
    std::vector<std::size_t> frontier{0};
    auto assign = [&](const Element& g, const Element& h) {
      const std::size_t i = source_.index_of(g);
      if (!img[i]) {
        img[i] = h;
        frontier.push_back(i);
      } else if (!(*img[i] == h)) {
        throw DomainError("images are not compatible with a homomorphism at " + source_.print(g));
      }
    };
    for (const auto& [g, h] : defining_) assign(g, h);
    while (!frontier.empty()) {
      const std::size_t i = frontier.back();
      frontier.pop_back();
      for (const auto& [g, h] : defining_) {
        assign(source_.multiply(els[i], g), target_.multiply(*img[i], h));
        assign(source_.multiply(g, els[i]), target_.multiply(h, *img[i]));
      }
    }
    for (std::size_t i = 0; i < els.size(); ++i)
      if (!img[i]) throw DomainError("images do not determine the map at " + source_.print(els[i]));
    for (auto& e : img) table_.push_back(*e);
    for (std::size_t a = 0; a < els.size(); ++a)
      for (std::size_t b = 0; b < els.size(); ++b) {
        const Element ab = source_.multiply(els[a], els[b]);
        if (!(table_[source_.index_of(ab)] == target_.multiply(table_[a], table_[b])))
          throw DomainError("map is not a homomorphism at " + source_.print(els[a]) + "*" + source_.print(els[b]));
      }
  }

  void bind_generators() {
    const int rank = source_.parameter();
    std::vector<std::optional<Element>> gens(static_cast<std::size_t>(rank));
    for (const auto& [g, h] : defining_) {
      if (g.word.size() != 1) throw DomainError("free-group images must be given on generators, got " + source_.print(g));
      const int x = g.word[0];
      const Element img = x > 0 ? h : target_.inverse(h);
      auto& slot = gens[static_cast<std::size_t>(std::abs(x) - 1)];
      if (slot && !(*slot == img)) throw DomainError("conflicting images for x" + std::to_string(std::abs(x)));
      slot = img;
    }
    for (int i = 0; i < rank; ++i) {
      if (!gens[i]) throw DomainError("no image given for x" + std::to_string(i + 1));
      generators_.push_back(*gens[i]);
    }
  }

  Group source_;
  Group target_;
  std::vector<std::pair<Element, Element>> defining_;
  std::vector<Element> table_;       // finite source, by index_of
  std::vector<Element> generators_;  // free source, image of x_i
  bool is_identity_ = false;
  bool is_trivial_ = false;
};

// A subgroup of a finite group, given by its elements. group() is an
// abstract copy: trivial, cyclic when one element generates it, otherwise a
// table in the order of members().
class Subgroup {
 public:
  Subgroup() = default;

  Subgroup(Group ambient, std::vector<Element> members) : ambient_(std::move(ambient)) {
    if (!ambient_.is_finite()) throw DomainError("subgroups are supported in finite groups only");
    for (const auto& m : members) ambient_.check(m);
    std::sort(members.begin(), members.end(),
              [&](const Element& a, const Element& b) { return ambient_.index_of(a) < ambient_.index_of(b); });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || !ambient_.is_identity(members.front()))
      throw DomainError("subgroup must contain the identity");
    members_ = std::move(members);
    for (const auto& a : members_)
      for (const auto& b : members_)
        if (!contains(ambient_.multiply(a, b)))
          throw DomainError("subset is not closed: " + ambient_.print(a) + "*" + ambient_.print(b) + " is missing");
    build_abstract();
  }

  static Subgroup generated_by(Group ambient, std::vector<Element> gens) {
    std::vector<Element> members{ambient.identity()};
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& g : gens) {
        const Element p = ambient.multiply(members[i], g);
        if (std::find(members.begin(), members.end(), p) == members.end()) members.push_back(p);
      }
    return Subgroup(std::move(ambient), std::move(members));
  }

  const Group& ambient() const { return ambient_; }
  const std::vector<Element>& members() const { return members_; }
  const Group& group() const { return abstract_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return ambient_.order() / members_.size(); }

  bool contains(const Element& g) const { return std::find(members_.begin(), members_.end(), g) != members_.end(); }

  Element restrict(const Element& g) const {
    auto it = std::find(members_.begin(), members_.end(), g);
    if (it == members_.end()) throw DomainError(ambient_.print(g) + " is not in the subgroup");
    return abstract_of_[static_cast<std::size_t>(it - members_.begin())];
  }

  Element embed(const Element& s) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (abstract_of_[i] == s) return members_[i];
    throw TypeError("element does not belong to the subgroup");
  }

 private:
  void build_abstract() {
    const std::size_t n = members_.size();
    abstract_of_.clear();
    if (n == 1) {
      abstract_ = Group::trivial();
      abstract_of_.push_back(abstract_.identity());
      return;
    }
    for (const auto& g : members_) {
      std::vector<Element> powers{ambient_.identity()};
      for (Element p = g; !ambient_.is_identity(p); p = ambient_.multiply(p, g)) powers.push_back(p);
      if (powers.size() != n) continue;
      abstract_ = Group::cyclic(static_cast<int>(n));
      abstract_of_.resize(n);
      for (std::size_t r = 0; r < n; ++r)
        abstract_of_[static_cast<std::size_t>(std::find(members_.begin(), members_.end(), powers[r]) - members_.begin())] =
            Element{static_cast<std::int64_t>(r), {}, {}};
      return;
    }
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Element p = ambient_.multiply(members_[a], members_[b]);
        rows[a][b] = static_cast<int>(std::find(members_.begin(), members_.end(), p) - members_.begin());
      }
    abstract_ = Group::table(std::move(rows), 0);
    for (std::size_t i = 0; i < n; ++i) abstract_of_.push_back(Element{static_cast<std::int64_t>(i), {}, {}});
  }

  Group ambient_;
  std::vector<Element> members_;
  Group abstract_;
  std::vector<Element> abstract_of_;
};

// Relabels every vertex by its image; shadow and orientation are unchanged.
inline GGraph pushforward(const GGraph& k, const Homomorphism& f) {
  if (!(k.group() == f.source()))
    throw DomainError("diagram is labeled by " + k.group().spec_line() + ", homomorphism starts at " +
                      f.source().spec_line());
  std::vector<Element> labels;
  for (const auto& l : k.labels()) labels.push_back(f(l));
  return GGraph(k.shadow(), f.target(), std::move(labels), k.polarity());
}

// Deletes every vertex whose label is outside the subgroup; survivors keep
// their labels, read in the subgroup's own group.
inline GGraph project(const GGraph& k, const Subgroup& s) {
  if (!(k.group() == s.ambient()))
    throw DomainError("diagram is labeled by " + k.group().spec_line() + ", subgroup lives in " +
                      s.ambient().spec_line());
  std::vector<Junction> js;
  for (int v = 0; v < k.vertex_count(); ++v)
    if (!s.contains(k.label(v))) js.push_back({v, Joining::Opposite});
  auto r = resolve(k.shadow(), js);
  std::vector<Element> labels(r.graph.vertex_count());
  std::vector<int> hint(r.graph.half_edge_count(), -1);
  for (int v = 0; v < k.vertex_count(); ++v) {
    const int nv = r.vertex_map[v];
    if (nv < 0) continue;
    labels[nv] = s.restrict(k.label(v));
    if (k.oriented())
      for (int slot = 0; slot < 4; ++slot) hint[4 * nv + slot] = emanates(*k.polarity(), 4 * v + slot) ? 1 : 0;
  }
  std::optional<std::vector<std::uint8_t>> pol;
  if (!s.group().is_abelian()) {
    pol = extend_polarity(r.graph, hint);
    if (!pol) throw DomainError("projection has no source-sink structure");
  }
  return GGraph(std::move(r.graph), s.group(), std::move(labels), std::move(pol));
}

// One representative per coset of a subgroup, the identity representing the
// subgroup itself.
struct Transversal {
  std::vector<Element> representatives;
};

namespace detail {

// Cosets of s in an abelian group, numbered by the position of their
// representative in t.
class CosetIndex {
 public:
  CosetIndex(const Subgroup& s, const Transversal& t) : s_(s), reps_(t.representatives) {
    const Group& G = s.ambient();
    if (reps_.size() != s.index())
      throw DomainError("section has " + std::to_string(reps_.size()) + " representatives, quotient has " +
                        std::to_string(s.index()) + " elements");
    for (const auto& r : reps_) G.check(r);
    for (std::size_t i = 0; i < reps_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (s.contains(G.multiply(reps_[i], G.inverse(reps_[j]))))
          throw DomainError("representatives " + G.print(reps_[j]) + " and " + G.print(reps_[i]) +
                            " lie in the same coset");
    auto it = std::find_if(reps_.begin(), reps_.end(), [&](const Element& r) { return G.is_identity(r); });
    if (it == reps_.end()) throw DomainError("section must send the trivial coset to the identity");
    std::iter_swap(reps_.begin(), it);
  }

  std::size_t size() const { return reps_.size(); }
  const Element& representative(std::size_t i) const { return reps_[i]; }

  std::size_t of(const Element& g) const {
    const Group& G = s_.ambient();
    for (std::size_t i = 0; i < reps_.size(); ++i)
      if (s_.contains(G.multiply(g, G.inverse(reps_[i])))) return i;
    throw InternalError("element in no coset");
  }

  std::size_t product(std::size_t i, std::size_t j) const {
    return of(s_.ambient().multiply(reps_[i], reps_[j]));
  }

  std::size_t inverse(std::size_t i) const { return of(s_.ambient().inverse(reps_[i])); }

 private:
  const Subgroup& s_;
  std::vector<Element> reps_;
};

}  // namespace detail

// Every strand of k is copied once per coset and stays on its copy. Above a
// vertex X with label a (coset c) sit the vertices X^i: at X^i the copy i*c
// of the strand through one opposite pair crosses copy i of the strand through
// the other pair. The first pair is the emanating one of the shadow's base
// source-sink structure; shadows without one are accepted when every c is its
// own inverse, using the pair {0,2}. X^i is labeled a * section(c)^-1.
inline GGraph cover(const GGraph& k, const Subgroup& s, const Transversal& t) {
  const Group& G = k.group();
  if (!(G == s.ambient()))
    throw DomainError("diagram is labeled by " + G.spec_line() + ", subgroup lives in " + s.ambient().spec_line());
  if (!G.is_abelian()) throw NotApplicable("coverings are implemented for abelian label groups only");
  const detail::CosetIndex h(s, t);
  const std::size_t m = h.size();
  const int n = k.vertex_count();

  std::vector<std::size_t> coset(n);
  for (int v = 0; v < n; ++v) coset[v] = h.of(k.label(v));
  const auto pol = base_polarity(k.shadow());
  if (!pol)
    for (int v = 0; v < n; ++v)
      if (h.product(coset[v], coset[v]) != 0)
        throw DomainError("shadow has no source-sink structure and the label of vertex " + default_vertex_name(v) +
                          " is not an involution modulo the subgroup");
  auto twisted_pair = [&](int v) { return pol ? static_cast<int>((*pol)[v]) : 0; };

  // copy carried by half-edge slot `slot` of X^i
  auto copy_at = [&](int v, int slot, std::size_t i) {
    return (slot & 1) == twisted_pair(v) ? h.product(i, coset[v]) : i;
  };
  // sheet j of vertex v whose half-edge `slot` carries copy c
  auto sheet_for = [&](int v, int slot, std::size_t c) {
    return (slot & 1) == twisted_pair(v) ? h.product(c, h.inverse(coset[v])) : c;
  };

  const int lifted = n * static_cast<int>(m);
  std::vector<int> partner(4 * static_cast<std::size_t>(lifted));
  for (int v = 0; v < n; ++v)
    for (std::size_t i = 0; i < m; ++i)
      for (int slot = 0; slot < 4; ++slot) {
        const int other = k.shadow().partner(4 * v + slot);
        const int w = other / 4, ws = other % 4;
        const std::size_t j = sheet_for(w, ws, copy_at(v, slot, i));
        partner[4 * (v * static_cast<int>(m) + static_cast<int>(i)) + slot] =
            4 * (w * static_cast<int>(m) + static_cast<int>(j)) + ws;
      }

  std::vector<Element> labels;
  for (int v = 0; v < n; ++v) {
    const Element g = G.multiply(k.label(v), G.inverse(h.representative(coset[v])));
    for (std::size_t i = 0; i < m; ++i) labels.push_back(s.restrict(g));
  }
  auto shadow = FramedGraph::from_partners(std::move(partner), k.shadow().free_circles() * static_cast<int>(m));
  return GGraph(std::move(shadow), s.group(), std::move(labels));
}

// True when the section is a homomorphism from the quotient (its
// representatives form a complement of the subgroup). Covers commute with
// moves for such sections.
inline bool section_is_homomorphism(const Subgroup& s, const Transversal& t) {
  const detail::CosetIndex h(s, t);
  const Group& G = s.ambient();
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (!(G.multiply(h.representative(i), h.representative(j)) == h.representative(h.product(i, j)))) return false;
  return true;
}

// Lifted vertex X^i sits at index X * sheets + i.
inline int lifted_vertex(int vertex, std::size_t sheet, std::size_t sheets) {
  return vertex * static_cast<int>(sheets) + static_cast<int>(sheet);
}

// True when the two passages through v belong to different components.
inline bool is_mixed(const FramedGraph& g, int v) {
  const auto c = unicursal_components(g);
  return c.of_half_edge[4 * v] != c.of_half_edge[4 * v + 1];
}

}  // namespace gknot
