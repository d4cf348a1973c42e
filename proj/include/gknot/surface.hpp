#pragma once

// Cellular embeddings of framed 4-graphs given by rotation systems: faces,
// genus, checkerboard colorings, and the group presentation whose generators
// are vertices and whose relators are face boundaries.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gknot/labeled.hpp"

namespace gknot {

// One bit per vertex: 0 -> cyclic slot order (0,1,2,3), 1 -> (0,3,2,1).
// Both keep opposite slots across from each other.
struct RotationSystem {
  std::vector<std::uint8_t> bits;

  int next(int h) const {
    const int v = h / 4, s = h % 4;
    return 4 * v + (bits[v] ? (s + 3) % 4 : (s + 1) % 4);
  }
};

// Every rotation system of an n-vertex graph, in binary counting order.
inline std::vector<RotationSystem> all_rotations(int n) {
  if (n > 20) throw ScaleLimit("too many vertices to list rotations");
  std::vector<RotationSystem> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    RotationSystem r;
    for (int v = 0; v < n; ++v) r.bits.push_back((mask >> v) & 1);
    out.push_back(std::move(r));
  }
  return out;
}

// A face is the cyclic list of half-edges it leaves its corners by.
using Face = std::vector<int>;

namespace detail {

inline void require_embeddable(const FramedGraph& g, const RotationSystem& r) {
  if (g.vertex_count() == 0) throw NotApplicable("embedding needs at least one vertex");
  if (g.free_circles() > 0) throw NotApplicable("graph has free circles, so it is disconnected");
  int comps = 0;
  vertex_components(g, &comps);
  if (comps != 1) throw NotApplicable("graph is disconnected");
  if (static_cast<int>(r.bits.size()) != g.vertex_count())
    throw DomainError("rotation has " + std::to_string(r.bits.size()) + " entries for " +
                      std::to_string(g.vertex_count()) + " vertices");
  for (auto b : r.bits)
    if (b > 1) throw DomainError("rotation bits must be 0 or 1");
}

}  // namespace detail

// Faces traced by h -> next(partner(h)), starting from the lowest unused
// half-edge each time.
inline std::vector<Face> faces(const FramedGraph& g, const RotationSystem& r) {
  detail::require_embeddable(g, r);
  std::vector<Face> out;
  std::vector<std::uint8_t> used(g.half_edge_count(), 0);
  for (int h = 0; h < g.half_edge_count(); ++h) {
    if (used[h]) continue;
    Face f;
    int x = h;
    do {
      used[x] = 1;
      f.push_back(x);
      x = r.next(g.partner(x));
    } while (x != h);
    out.push_back(std::move(f));
  }
  return out;
}

inline int genus(const FramedGraph& g, const RotationSystem& r) {
  const int v = g.vertex_count();
  const int e = 2 * v;
  const int f = static_cast<int>(faces(g, r).size());
  const int euler = v - e + f;
  if (euler > 2 || (2 - euler) % 2 != 0) throw InternalError("Euler characteristic " + std::to_string(euler));
  return (2 - euler) / 2;
}

// face_of[h] = index of the face h belongs to.
inline std::vector<int> face_index(const FramedGraph& g, const std::vector<Face>& fs) {
  std::vector<int> out(g.half_edge_count(), -1);
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    for (int h : fs[i]) out[h] = i;
  return out;
}

// Proper 2-coloring of the faces across edges (face 0 gets color 0), if any.
inline std::optional<std::vector<int>> checkerboard_coloring(const FramedGraph& g, const RotationSystem& r) {
  const auto fs = faces(g, r);
  const auto of = face_index(g, fs);
  const int nf = static_cast<int>(fs.size());
  std::vector<std::vector<int>> adj(nf);
  for (int h = 0; h < g.half_edge_count(); ++h) {
    const int a = of[h], b = of[g.partner(h)];
    if (a == b) return std::nullopt;
    adj[a].push_back(b);
  }
  std::vector<int> color(nf, -1);
  for (int root = 0; root < nf; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int o : adj[f]) {
        if (color[o] < 0) {
          color[o] = 1 - color[f];
          queue.push_back(o);
        } else if (color[o] == color[f]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;  // cyclic words of generator indices, no inverses

  bool operator==(const Presentation&) const = default;
};

inline std::string generator_name(int v) {
  std::string s = default_vertex_name(v);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Smallest rotation of a cyclic word.
inline std::vector<int> rotate_min(const std::vector<int>& w) {
  std::vector<int> best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::vector<int> cand(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    cand.insert(cand.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    if (cand < best) best = std::move(cand);
  }
  return best;
}

// Reads every face boundary along the direction given by the source-sink
// structure: the vertices at its corners form one relator.
inline Presentation presentation(const FramedGraph& g, const RotationSystem& r, std::span<const std::uint8_t> polarity) {
  if (!is_source_sink(g, polarity)) throw DomainError("orientation is not a source-sink structure");
  if (!checkerboard_coloring(g, r)) throw DomainError("embedding is not checkerboard colorable");
  Presentation p;
  for (int v = 0; v < g.vertex_count(); ++v) p.generators.push_back(generator_name(v));
  for (const auto& f : faces(g, r)) {
    // dart h runs along its edge away from its own vertex
    int along = 0;
    for (int h : f) along += emanates(polarity, h) ? 1 : -1;
    if (std::abs(along) != static_cast<int>(f.size()))
      throw DomainError("face starting at half-edge " + std::to_string(f.front()) + " is not coherently oriented");
    std::vector<int> word;
    for (int h : f) word.push_back(h / 4);
    if (along < 0) std::reverse(word.begin(), word.end());
    p.relators.push_back(rotate_min(word));
  }
  std::sort(p.relators.begin(), p.relators.end());
  return p;
}

inline std::string print_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& g : p.generators) out += " " + g;
  out += "\n";
  for (const auto& rel : p.relators) {
    out += "rel:";
    for (int x : rel) out += " " + p.generators[static_cast<std::size_t>(x)];
    out += "\n";
  }
  return out;
}

// Invariant factors of the abelianized group: Z^free_rank x Z/d1 x Z/d2 ...
// with d1 | d2 | ... and every d > 1.
struct Abelianization {
  int free_rank = 0;
  std::vector<long long> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank > 0) parts.push_back(free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
    for (auto d : torsion) parts.push_back("Z/" + std::to_string(d));
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
    return out;
  }
};

// Diagonal entries of the Smith normal form of an integer matrix.
inline std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<long long> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const long long q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const long long q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide everything left; otherwise fold a row in
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
    }
    diag.push_back(std::llabs(m[t][t]));
  }
  return diag;
}

inline Abelianization abelianization(const Presentation& p) {
  const std::size_t n = p.generators.size();
  std::vector<std::vector<long long>> m;
  for (const auto& rel : p.relators) {
    std::vector<long long> row(n, 0);
    for (int x : rel) ++row[static_cast<std::size_t>(x)];
    m.push_back(std::move(row));
  }
  Abelianization a;
  const auto diag = smith_diagonal(std::move(m));
  a.free_rank = static_cast<int>(n - diag.size());
  for (auto d : diag)
    if (d > 1) a.torsion.push_back(d);
  return a;
}

// Labels every vertex by the image of its generator after checking that the
// images kill every relator.
inline GGraph label_via_quotient(const FramedGraph& g, const Presentation& p, const Group& target,
                                 const std::vector<Element>& images,
                                 std::optional<std::vector<std::uint8_t>> polarity = std::nullopt) {
  if (static_cast<int>(p.generators.size()) != g.vertex_count())
    throw DomainError("presentation has " + std::to_string(p.generators.size()) + " generators for " +
                      std::to_string(g.vertex_count()) + " vertices");
  if (images.size() != p.generators.size()) throw DomainError("one image per generator is needed");
  for (const auto& rel : p.relators) {
    Element prod = target.identity();
    for (int x : rel) prod = target.multiply(prod, images[static_cast<std::size_t>(x)]);
    if (!target.is_identity(prod)) {
      std::string word;
      for (int x : rel) word += (word.empty() ? "" : " ") + p.generators[static_cast<std::size_t>(x)];
      throw DomainError("relator (" + word + ") maps to " + target.print(prod) + ", not the identity");
    }
  }
  return GGraph(g, target, images, std::move(polarity));
}

}  // namespace gknot
