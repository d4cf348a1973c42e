#pragma once

// Bounded bidirectional search for a sequence of labeled Reidemeister moves
// between two G-graphs.
//
// States are deduplicated by canonical key. Each side keeps a double-ended
// queue: moves that do not add vertices (R1-, R2-, R3) go to the front,
// R1+ and R2+ to the back, so cheap simplifications are explored before the
// diagram grows.

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gknot/moves.hpp"

namespace gknot {

struct SearchBudget {
  int vertex_budget = 4;
  std::size_t node_budget = 100000;
};

struct SearchResult {
  bool proven = false;
  std::vector<MoveSite> path;   // replayable from the first diagram
  std::size_t expanded = 0;     // states expanded on both sides
  std::size_t discovered = 0;   // distinct states seen on both sides
  bool exhausted = false;       // no unexplored state was left within the vertex budget
};

inline GGraph replay(GGraph k, const std::vector<MoveSite>& path) {
  for (const auto& s : path) k = apply_move(k, s);
  return k;
}

namespace detail {

inline MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::R1Minus: return MoveKind::R1Plus;
    case MoveKind::R1Plus: return MoveKind::R1Minus;
    case MoveKind::R2Minus: return MoveKind::R2Plus;
    case MoveKind::R2Plus: return MoveKind::R2Minus;
    case MoveKind::R3: return MoveKind::R3;
  }
  return k;
}

inline int vertex_change(MoveKind k) {
  switch (k) {
    case MoveKind::R1Minus: return -1;
    case MoveKind::R2Minus: return -2;
    case MoveKind::R1Plus: return 1;
    case MoveKind::R2Plus: return 2;
    case MoveKind::R3: return 0;
  }
  return 0;
}

class Searcher {
 public:
  Searcher(const GGraph& a, const GGraph& b, SearchBudget budget, MoveOptions moves)
      : budget_(budget), moves_(std::move(moves)) {
    sides_[0].root = a.key();
    sides_[1].root = b.key();
    add(0, sides_[0].root, a, std::nullopt, MoveSite{}, true);
    add(1, sides_[1].root, b, std::nullopt, MoveSite{}, true);
  }

  SearchResult run() {
    SearchResult r;
    if (sides_[0].root == sides_[1].root) {
      r.proven = true;
      r.discovered = 1;
      return r;
    }
    while (r.expanded < budget_.node_budget) {
      int side = -1;
      if (!sides_[0].queue.empty()) side = 0;
      if (!sides_[1].queue.empty() && (side < 0 || sides_[1].queue.size() < sides_[0].queue.size())) side = 1;
      if (side < 0) {
        r.exhausted = true;
        break;
      }
      const std::string key = sides_[side].queue.front();
      sides_[side].queue.pop_front();
      ++r.expanded;
      if (auto meet = expand(side, key)) {
        r.proven = true;
        r.path = build_path(*meet);
        break;
      }
    }
    r.discovered = sides_[0].nodes.size() + sides_[1].nodes.size();
    return r;
  }

 private:
  struct Node {
    GGraph graph;
    std::string parent;
    bool has_parent = false;
    MoveSite via;
  };
  struct Side {
    std::string root;
    std::unordered_map<std::string, Node> nodes;
    std::deque<std::string> queue;
  };

  void add(int side, const std::string& key, GGraph g, std::optional<std::string> parent, MoveSite via, bool front) {
    Node n{std::move(g), parent.value_or(""), parent.has_value(), std::move(via)};
    sides_[side].nodes.emplace(key, std::move(n));
    if (front) sides_[side].queue.push_front(key);
    else sides_[side].queue.push_back(key);
  }

  std::optional<std::string> expand(int side, const std::string& key) {
    const GGraph g = sides_[side].nodes.at(key).graph;
    for (const auto& site : enumerate_moves(g, moves_)) {
      const int dv = vertex_change(site.kind);
      if (g.vertex_count() + dv > budget_.vertex_budget) continue;
      GGraph child = apply_move(g, site);
      std::string ck = child.key();
      if (sides_[side].nodes.count(ck)) continue;
      const bool meets = sides_[1 - side].nodes.count(ck) > 0;
      add(side, ck, std::move(child), key, site, dv <= 0);
      if (meets) return ck;
    }
    return std::nullopt;
  }

  std::vector<MoveSite> build_path(const std::string& meet) {
    std::vector<MoveSite> path;
    for (std::string k = meet;;) {
      const Node& n = sides_[0].nodes.at(k);
      if (!n.has_parent) break;
      path.push_back(n.via);
      k = n.parent;
    }
    std::reverse(path.begin(), path.end());

    GGraph cur = sides_[0].nodes.at(meet).graph;
    for (std::string k = meet;;) {
      const Node& n = sides_[1].nodes.at(k);
      if (!n.has_parent) break;
      const Node& parent = sides_[1].nodes.at(n.parent);
      MoveOptions opt;
      opt.kinds = kind_bit(inverse_kind(n.via.kind));
      if (n.via.kind == MoveKind::R2Minus)
        opt.r2_labels = {parent.graph.label(n.via.vertex), parent.graph.label(n.via.vertex2)};
      bool found = false;
      for (const auto& s : enumerate_moves(cur, opt)) {
        GGraph next = apply_move(cur, s);
        if (next.key() == n.parent) {
          path.push_back(s);
          cur = std::move(next);
          found = true;
          break;
        }
      }
      if (!found) throw InternalError("could not reverse a move of the backward search");
      k = n.parent;
    }
    return path;
  }

  SearchBudget budget_;
  MoveOptions moves_;
  Side sides_[2];
};

}  // namespace detail

inline SearchResult equivalence_search(const GGraph& a, const GGraph& b, SearchBudget budget = {},
                                       MoveOptions moves = {}) {
  if (!(a.group() == b.group())) throw DomainError("diagrams are labeled by different groups");
  if (a.oriented() != b.oriented()) return SearchResult{};
  return detail::Searcher(a, b, budget, std::move(moves)).run();
}

}  // namespace gknot
