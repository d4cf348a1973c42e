#pragma once

// Group-labeled framed 4-graphs with a chosen source-sink structure.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gknot/canonical.hpp"
#include "gknot/framed_graph.hpp"
#include "gknot/group.hpp"

namespace gknot {

// Chooses, per connected component, the source-sink structure that agrees
// with the most hints (hint[h] = wanted emanation of half-edge h, or -1).
// Ties go to the structure with polarity 0 at the component's smallest vertex.
inline std::optional<std::vector<std::uint8_t>> extend_polarity(const FramedGraph& g,
                                                                const std::vector<int>& hint) {
  auto base = base_polarity(g);
  if (!base) return std::nullopt;
  int comps = 0;
  const auto comp = vertex_components(g, &comps);
  std::vector<int> agree(comps, 0), disagree(comps, 0);
  for (int h = 0; h < g.half_edge_count() && h < static_cast<int>(hint.size()); ++h) {
    if (hint[h] < 0) continue;
    if (static_cast<int>(emanates(*base, h)) == hint[h]) ++agree[comp[h / 4]];
    else ++disagree[comp[h / 4]];
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (disagree[comp[v]] > agree[comp[v]]) (*base)[v] ^= 1;
  return base;
}

class GGraph {
 public:
  GGraph() = default;

  // Over a non-abelian group the shadow must be good and carries a
  // source-sink structure (the given one, or the first one). Over an abelian
  // group no move depends on the cyclic order of labels, so diagrams are kept
  // unoriented and shadows without a source-sink structure are allowed.
  GGraph(FramedGraph shadow, Group group, std::vector<Element> labels,
         std::optional<std::vector<std::uint8_t>> polarity = std::nullopt)
      : shadow_(std::move(shadow)), group_(std::move(group)), labels_(std::move(labels)) {
    if (static_cast<int>(labels_.size()) != shadow_.vertex_count())
      throw DomainError("label count " + std::to_string(labels_.size()) + " does not match vertex count " +
                        std::to_string(shadow_.vertex_count()));
    for (const auto& l : labels_) group_.check(l);
    if (polarity && !is_source_sink(shadow_, *polarity))
      throw DomainError("orientation is not a source-sink structure");
    if (group_.is_abelian()) return;
    if (polarity) {
      polarity_ = std::move(polarity);
    } else {
      polarity_ = base_polarity(shadow_);
      if (!polarity_) throw DomainError("graph admits no source-sink structure; non-abelian labels need one");
    }
  }

  static GGraph unlabeled(FramedGraph shadow, std::optional<std::vector<std::uint8_t>> polarity = std::nullopt) {
    std::vector<Element> labels(shadow.vertex_count());
    return GGraph(std::move(shadow), Group::trivial(), std::move(labels), std::move(polarity));
  }

  const FramedGraph& shadow() const { return shadow_; }
  const Group& group() const { return group_; }
  const std::vector<Element>& labels() const { return labels_; }
  const Element& label(int v) const { return labels_[v]; }
  bool oriented() const { return polarity_.has_value(); }
  const std::optional<std::vector<std::uint8_t>>& polarity() const { return polarity_; }
  int vertex_count() const { return shadow_.vertex_count(); }

  std::vector<std::string> printed_labels() const {
    std::vector<std::string> out;
    out.reserve(labels_.size());
    for (const auto& l : labels_) out.push_back(group_.print(l));
    return out;
  }

  // Canonical key: shadow up to isomorphism together with labels and (when
  // present) the source-sink structure. Circle orientations are ignored.
  std::string key() const {
    const auto printed = printed_labels();
    CodeOptions opt;
    if (polarity_) opt.polarity = *polarity_;
    opt.labels = printed;
    return canonical_code(shadow_, opt);
  }

  // Key of the unlabeled, unoriented shadow.
  std::string shadow_key() const { return canonical_code(shadow_); }

  GGraph with_polarity(std::vector<std::uint8_t> p) const {
    return GGraph(shadow_, group_, labels_, std::move(p));
  }

  bool operator==(const GGraph& o) const {
    return shadow_ == o.shadow_ && group_ == o.group_ && labels_ == o.labels_ && polarity_ == o.polarity_;
  }

 private:
  FramedGraph shadow_;
  Group group_;
  std::vector<Element> labels_;
  std::optional<std::vector<std::uint8_t>> polarity_;
};

// Labels met along strand `component` (in strands() order) starting at
// passage `basepoint`, following the strand's default traversal.
struct ComponentWord {
  std::vector<Element> word;
  std::vector<std::string> cyclic_class;  // printed, minimal over rotations and reversal
};

inline ComponentWord component_word(const GGraph& k, int component, int basepoint = 0) {
  const auto ss = strands(k.shadow());
  ComponentWord out;
  if (ss.empty() && component == 0) return out;
  if (component < 0 || component >= static_cast<int>(ss.size()))
    throw DomainError("component " + std::to_string(component) + " does not exist");
  const auto& s = ss[component];
  const int n = static_cast<int>(s.size());
  if (basepoint < 0 || basepoint >= n) throw DomainError("basepoint is not on the component");
  for (int i = 0; i < n; ++i) out.word.push_back(k.label(s[(basepoint + i) % n].vertex));
  std::vector<std::string> printed;
  for (const auto& e : out.word) printed.push_back(k.group().print(e));
  std::vector<std::string> best;
  for (int dir : {1, -1})
    for (int r = 0; r < n; ++r) {
      std::vector<std::string> cand;
      for (int i = 0; i < n; ++i) cand.push_back(printed[((r + dir * i) % n + n) % n]);
      if (best.empty() || cand < best) best = std::move(cand);
    }
  out.cyclic_class = std::move(best);
  return out;
}

}  // namespace gknot
