#pragma once

// Canonical string keys for framed 4-graphs up to framing-preserving
// isomorphism.
//
// A graph is read as a set of cyclic words (one per strand) in which every
// vertex occurs twice. For every connected component we try each strand,
// starting passage and direction; further strands of the component are
// entered at the earliest-numbered vertex that still has an unread passage,
// in both directions. Vertices are numbered by first appearance. The key is
// the lexicographic minimum of these encodings, so isomorphic inputs produce
// the same candidate set.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gknot/framed_graph.hpp"

namespace gknot {

struct CodeOptions {
  // Source-sink polarity per vertex; empty means orientation is ignored.
  std::span<const std::uint8_t> polarity;
  // Vertex annotations (printed labels); empty means unlabeled.
  std::span<const std::string> labels;
};

namespace detail {

class CodeBuilder {
 public:
  CodeBuilder(const FramedGraph& g, const CodeOptions& opt)
      : g_(g), opt_(opt), ss_(strands(g)), occ_(g.vertex_count()) {
    for (int s = 0; s < static_cast<int>(ss_.size()); ++s)
      for (int i = 0; i < static_cast<int>(ss_[s].size()); ++i) {
        const auto& p = ss_[s][i];
        occ_[p.vertex][p.pair()] = {s, i};
      }
  }

  std::string build() {
    // strand components: strands sharing a vertex
    const int ns = static_cast<int>(ss_.size());
    std::vector<int> comp(ns, -1);
    int ncomp = 0;
    for (int s = 0; s < ns; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (const auto& p : ss_[t])
          for (const auto& o : occ_[p.vertex])
            if (comp[o.strand] < 0) {
              comp[o.strand] = ncomp;
              stack.push_back(o.strand);
            }
      }
      ++ncomp;
    }
    std::vector<std::string> codes;
    for (int c = 0; c < ncomp; ++c) {
      std::string best;
      bool have = false;
      for (int s = 0; s < ns; ++s) {
        if (comp[s] != c) continue;
        const int len = static_cast<int>(ss_[s].size());
        for (int start = 0; start < len; ++start)
          for (int dir : {1, -1}) {
            State st;
            st.number.assign(g_.vertex_count(), -1);
            st.read.assign(ns, 0);
            read_strand(st, s, start, dir);
            std::string code = finish(std::move(st));
            if (!have || code < best) {
              best = std::move(code);
              have = true;
            }
          }
      }
      codes.push_back("(" + best + ")");
    }
    std::sort(codes.begin(), codes.end());
    std::string key = "v" + std::to_string(g_.vertex_count());
    for (const auto& c : codes) key += c;
    key += "c" + std::to_string(g_.free_circles());
    return key;
  }

 private:
  struct Occurrence {
    int strand = 0;
    int position = 0;
  };
  struct State {
    std::vector<int> number;
    std::vector<int> order;  // vertices in numbering order
    std::vector<std::uint8_t> read;
    std::string out;
  };

  void read_strand(State& st, int s, int start, int dir) const {
    const auto& strand = ss_[s];
    const int len = static_cast<int>(strand.size());
    st.read[s] = 1;
    for (int k = 0; k < len; ++k) {
      const int idx = ((start + dir * k) % len + len) % len;
      const Passage& p = strand[idx];
      bool fresh = false;
      if (st.number[p.vertex] < 0) {
        st.number[p.vertex] = static_cast<int>(st.order.size());
        st.order.push_back(p.vertex);
        fresh = true;
      }
      st.out += std::to_string(st.number[p.vertex]);
      if (!opt_.polarity.empty()) st.out += (p.pair() == opt_.polarity[p.vertex]) ? 's' : 't';
      if (fresh && !opt_.labels.empty()) st.out += "[" + opt_.labels[p.vertex] + "]";
      st.out += ',';
    }
    st.out += '/';
  }

  std::string finish(State st) const {
    for (int v : st.order)
      for (const auto& o : occ_[v])
        if (!st.read[o.strand]) {
          State back = st;
          read_strand(st, o.strand, o.position, 1);
          read_strand(back, o.strand, o.position, -1);
          std::string a = finish(std::move(st));
          std::string b = finish(std::move(back));
          return a < b ? a : b;
        }
    return std::move(st.out);
  }

  const FramedGraph& g_;
  CodeOptions opt_;
  std::vector<Strand> ss_;
  std::vector<std::array<Occurrence, 2>> occ_;
};

}  // namespace detail

inline std::string canonical_code(const FramedGraph& g, const CodeOptions& opt = {}) {
  if (!opt.polarity.empty() && static_cast<int>(opt.polarity.size()) != g.vertex_count())
    throw DomainError("polarity size does not match vertex count");
  if (!opt.labels.empty() && static_cast<int>(opt.labels.size()) != g.vertex_count())
    throw DomainError("annotation count does not match vertex count");
  return detail::CodeBuilder(g, opt).build();
}

}  // namespace gknot
