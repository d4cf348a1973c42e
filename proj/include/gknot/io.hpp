#pragma once

// Text formats.
//
//   group cyclic 5                      (or free n, trivial, product a; b,
//                                        or table n + n rows + identity i
//                                        + optional names: ...)
//   gauss: A B A B / C C; circles: 0
//   raw: 2; pairs: 0.0-1.2, 0.1-1.3, ...; circles: 0
//   labels: A=1, B=2
//   orientation: A=0, B=1
//   rotation: A=0, B=1
//
// A group line applies to every diagram after it. Each gauss/raw line starts
// a new diagram; labels, orientation and rotation lines attach to the latest
// one. Raw vertices are named A, B, ..., Z, A1, ... in index order. '#'
// starts a comment.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gknot/functors.hpp"
#include "gknot/surface.hpp"

namespace gknot {

struct Stanza {
  std::size_t line = 0;
  Group group;
  FramedGraph graph;
  std::vector<std::string> names;
  std::vector<Element> labels;  // identity where not given
  std::optional<std::vector<std::uint8_t>> orientation;
  std::optional<RotationSystem> rotation;

  GGraph diagram() const {
    try {
      return GGraph(graph, group, labels, orientation);
    } catch (const Error& e) {
      throw ParseError(e.what(), line, 1);
    }
  }

  int vertex_named(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// A piece of a line with the 1-based column where it starts.
struct Piece {
  std::string_view text;
  std::size_t column = 1;
};

inline Piece trim(Piece p) {
  std::size_t lead = 0;
  while (lead < p.text.size() && std::isspace(static_cast<unsigned char>(p.text[lead]))) ++lead;
  p.text.remove_prefix(lead);
  p.column += lead;
  p.text = trim(p.text);
  return p;
}

// Splits on `sep` outside parentheses.
inline std::vector<Piece> split_top(Piece p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    const char c = i < p.text.size() ? p.text[i] : sep;
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(Piece{p.text.substr(start, i - start), p.column + start}));
      start = i + 1;
    }
  }
  return out;
}

inline bool is_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline long long parse_count(Piece p, std::size_t line, const char* what) {
  const auto t = trim(p);
  if (t.text.empty()) throw ParseError(std::string("expected ") + what, line, t.column);
  long long v = 0;
  for (char c : t.text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("expected ") + what + ", got '" + std::string(t.text) + "'", line, t.column);
    v = v * 10 + (c - '0');
    if (v > 1000000) throw ParseError(std::string(what) + " too large", line, t.column);
  }
  return v;
}

inline Element parse_element_at(const Group& G, Piece p, std::size_t line) {
  try {
    return G.parse(p.text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    const auto cut = msg.rfind(" (line");
    if (cut != std::string::npos) msg.resize(cut);
    throw ParseError(msg, line, p.column + e.column() - 1);
  }
}

// "name=value" pairs
inline std::vector<std::pair<Piece, Piece>> assignments(Piece value, std::size_t line) {
  std::vector<std::pair<Piece, Piece>> out;
  if (trim(value).text.empty()) return out;
  for (const auto& item : split_top(value, ',')) {
    const auto eq = item.text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected name=value", line, item.column);
    out.emplace_back(trim(Piece{item.text.substr(0, eq), item.column}),
                     trim(Piece{item.text.substr(eq + 1), item.column + eq + 1}));
  }
  return out;
}

struct PendingStanza {
  Stanza s;
  bool gauss = false;
  std::vector<std::vector<std::string>> words;
  long long raw_vertices = -1;
  std::vector<std::pair<HalfEdgeRef, HalfEdgeRef>> pairs;
  std::size_t shape_column = 1;
  long long circles = 0;
  std::vector<std::pair<Piece, Piece>> labels, orientation, rotation;
  std::size_t labels_line = 0, orientation_line = 0, rotation_line = 0;
};

inline HalfEdgeRef parse_half_edge(Piece p, std::size_t line) {
  const auto dot = p.text.find('.');
  if (dot == std::string_view::npos) throw ParseError("expected vertex.slot", line, p.column);
  HalfEdgeRef r;
  r.vertex = static_cast<int>(parse_count(Piece{p.text.substr(0, dot), p.column}, line, "vertex index"));
  r.slot = static_cast<int>(parse_count(Piece{p.text.substr(dot + 1), p.column + dot + 1}, line, "slot"));
  return r;
}

inline Stanza finish_stanza(PendingStanza& p) {
  Stanza& s = p.s;
  try {
    if (p.gauss) {
      auto d = from_gauss_codes(p.words, static_cast<int>(p.circles));
      s.graph = std::move(d.graph);
      s.names = std::move(d.names);
    } else {
      RawGraph raw;
      raw.vertex_count = static_cast<int>(p.raw_vertices);
      raw.pairs = p.pairs;
      raw.free_circles = static_cast<int>(p.circles);
      s.graph = FramedGraph::from_raw(raw);
      for (int v = 0; v < raw.vertex_count; ++v) s.names.push_back(default_vertex_name(v));
    }
  } catch (const MalformedInput& e) {
    throw ParseError(e.what(), s.line, p.shape_column);
  }
  const int n = s.graph.vertex_count();
  auto vertex_of = [&](const Piece& name, std::size_t line) {
    const int v = s.vertex_named(std::string(name.text));
    if (v < 0) throw ParseError("unknown vertex '" + std::string(name.text) + "'", line, name.column);
    return v;
  };
  s.labels.assign(n, s.group.identity());
  std::vector<char> seen(n, 0);
  for (const auto& [name, value] : p.labels) {
    const int v = vertex_of(name, p.labels_line);
    if (seen[v]++) throw ParseError("vertex labeled twice", p.labels_line, name.column);
    s.labels[v] = parse_element_at(s.group, value, p.labels_line);
  }
  auto bits = [&](const std::vector<std::pair<Piece, Piece>>& items, std::size_t line, const char* what) {
    std::vector<std::uint8_t> out(n, 0);
    std::vector<char> given(n, 0);
    for (const auto& [name, value] : items) {
      const int v = vertex_of(name, line);
      const auto b = parse_count(value, line, "0 or 1");
      if (b > 1) throw ParseError(std::string(what) + " bits are 0 or 1", line, value.column);
      out[v] = static_cast<std::uint8_t>(b);
      given[v] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (!given[v]) throw ParseError(std::string(what) + " misses vertex " + s.names[v], line, 1);
    return out;
  };
  if (p.orientation_line) s.orientation = bits(p.orientation, p.orientation_line, "orientation");
  if (p.rotation_line) s.rotation = RotationSystem{bits(p.rotation, p.rotation_line, "rotation")};
  return std::move(s);
}

inline Group parse_table_group(const std::vector<std::pair<std::size_t, std::string>>& lines, std::size_t& i,
                               long long n) {
  std::vector<std::vector<int>> rows;
  const std::size_t header = lines[i].first;
  for (long long r = 0; r < n; ++r) {
    ++i;
    if (i >= lines.size()) throw ParseError("table ends early", header, 1);
    std::istringstream in(lines[i].second);
    std::vector<int> row;
    std::string tok;
    while (in >> tok) row.push_back(static_cast<int>(parse_count(Piece{tok, 1}, lines[i].first, "table entry")));
    rows.push_back(std::move(row));
  }
  ++i;
  if (i >= lines.size() || lines[i].second.rfind("identity", 0) != 0)
    throw ParseError("expected 'identity <i>' after the table", i < lines.size() ? lines[i].first : header, 1);
  const std::string& id_line = lines[i].second;
  const int identity = static_cast<int>(parse_count(Piece{std::string_view(id_line).substr(8), 9}, lines[i].first,
                                                    "identity index"));
  std::vector<std::string> names;
  if (i + 1 < lines.size() && lines[i + 1].second.rfind("names:", 0) == 0) {
    ++i;
    const std::string& nl = lines[i].second;
    for (const auto& piece : split_top(Piece{std::string_view(nl).substr(6), 7}, ',')) {
      if (!is_symbol(piece.text)) throw ParseError("element names must be alphanumeric", lines[i].first, piece.column);
      names.emplace_back(piece.text);
    }
  }
  try {
    return Group::table(std::move(rows), identity, std::move(names));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), header, 1);
  }
}

}  // namespace detail

struct Document {
  std::vector<Stanza> stanzas;
  Group group;  // the last group line, trivial if none
};

inline Document parse_document(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t no = 0, start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++no;
      std::string line(text.substr(start, end - start));
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      if (!detail::trim(line).empty()) lines.emplace_back(no, std::move(line));
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  std::vector<Stanza> out;
  Group group;
  std::optional<detail::PendingStanza> cur;
  auto flush = [&] {
    if (cur) out.push_back(detail::finish_stanza(*cur));
    cur.reset();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t no = lines[i].first;
    const std::string& line = lines[i].second;
    const detail::Piece whole = detail::trim(detail::Piece{line, 1});
    if (whole.text.rfind("group", 0) == 0 &&
        (whole.text.size() == 5 || std::isspace(static_cast<unsigned char>(whole.text[5])))) {
      const auto rest = detail::trim(detail::Piece{whole.text.substr(5), whole.column + 5});
      if (rest.text.rfind("table", 0) == 0) {
        const auto n = detail::parse_count(detail::Piece{rest.text.substr(5), rest.column + 5}, no, "table size");
        group = detail::parse_table_group(lines, i, n);
      } else {
        try {
          group = Group::parse_spec(rest.text);
        } catch (const ParseError& e) {
          std::string msg = e.what();
          const auto cut = msg.rfind(" (line");
          if (cut != std::string::npos) msg.resize(cut);
          throw ParseError(msg, no, rest.column + e.column() - 1);
        } catch (const DomainError& e) {
          throw ParseError(e.what(), no, rest.column);
        }
      }
      continue;
    }
    for (const auto& item : detail::split_top(whole, ';')) {
      const auto colon = item.text.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", no, item.column);
      const std::string key(detail::trim(item.text.substr(0, colon)));
      const auto value = detail::trim(detail::Piece{item.text.substr(colon + 1), item.column + colon + 1});
      if (key == "gauss" || key == "raw") {
        flush();
        cur.emplace();
        cur->s.line = no;
        cur->s.group = group;
        cur->shape_column = value.column;
        if (key == "gauss") {
          cur->gauss = true;
          for (const auto& w : detail::split_top(value, '/')) {
            std::vector<std::string> word;
            std::istringstream in{std::string(w.text)};
            std::string sym;
            while (in >> sym) {
              if (!detail::is_symbol(sym)) throw ParseError("symbol '" + sym + "' is not alphanumeric", no, w.column);
              word.push_back(sym);
            }
            if (!word.empty()) cur->words.push_back(std::move(word));
          }
        } else {
          cur->raw_vertices = detail::parse_count(value, no, "vertex count");
        }
        continue;
      }
      if (!cur) throw ParseError("'" + key + "' before any gauss or raw line", no, item.column);
      if (key == "circles") {
        cur->circles = detail::parse_count(value, no, "circle count");
      } else if (key == "pairs") {
        if (cur->gauss) throw ParseError("pairs belong to raw diagrams", no, item.column);
        if (!value.text.empty())
          for (const auto& p : detail::split_top(value, ',')) {
            const auto dash = p.text.find('-');
            if (dash == std::string_view::npos) throw ParseError("expected v.s-v.s", no, p.column);
            cur->pairs.emplace_back(
                detail::parse_half_edge(detail::trim(detail::Piece{p.text.substr(0, dash), p.column}), no),
                detail::parse_half_edge(detail::trim(detail::Piece{p.text.substr(dash + 1), p.column + dash + 1}), no));
          }
      } else if (key == "labels") {
        cur->labels = detail::assignments(value, no);
        cur->labels_line = no;
      } else if (key == "orientation") {
        cur->orientation = detail::assignments(value, no);
        cur->orientation_line = no;
      } else if (key == "rotation") {
        cur->rotation = detail::assignments(value, no);
        cur->rotation_line = no;
      } else {
        throw ParseError("unknown key '" + key + "'", no, item.column);
      }
    }
  }
  flush();
  return Document{std::move(out), std::move(group)};
}

// Every diagram in the text, in order.
inline std::vector<Stanza> parse_diagrams(std::string_view text) { return parse_document(text).stanzas; }

// A group given as the text after "group", e.g. "cyclic 5"; tables may span
// lines.
inline Group parse_group_text(std::string_view text) { return parse_document("group " + std::string(text)).group; }

// ---------------------------------------------------------------------------
// Printing

inline std::string print_group(const Group& G) {
  if (G.kind() != Group::Kind::Table) return "group " + G.spec_line() + "\n";
  std::string out = "group table " + std::to_string(G.parameter()) + "\n";
  for (const auto& row : G.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
    out += "\n";
  }
  out += "identity " + std::to_string(G.table_identity()) + "\n";
  if (!G.names().empty()) {
    out += "names:";
    for (std::size_t i = 0; i < G.names().size(); ++i) out += (i ? ", " : " ") + G.names()[i];
    out += "\n";
  }
  return out;
}

// Raw-form stanza (without the group line); re-parses to the same key.
inline std::string print_stanza(const GGraph& k, const std::optional<RotationSystem>& rotation = std::nullopt) {
  const auto& g = k.shadow();
  std::string out = "raw: " + std::to_string(g.vertex_count()) + "; pairs:";
  bool first = true;
  for (const auto& [a, b] : g.to_raw().pairs) {
    out += (first ? " " : ", ") + to_string(a) + "-" + to_string(b);
    first = false;
  }
  out += "; circles: " + std::to_string(g.free_circles()) + "\n";
  auto listing = [&](const char* key, auto&& value_of) {
    std::string line = key;
    for (int v = 0; v < g.vertex_count(); ++v) line += (v ? ", " : " ") + default_vertex_name(v) + "=" + value_of(v);
    return line + "\n";
  };
  if (g.vertex_count() > 0) {
    out += listing("labels:", [&](int v) { return k.group().print(k.label(v)); });
    if (k.oriented()) out += listing("orientation:", [&](int v) { return std::to_string((*k.polarity())[v]); });
    if (rotation) out += listing("rotation:", [&](int v) { return std::to_string(rotation->bits[v]); });
  }
  return out;
}

inline std::string print_diagram_file(const GGraph& k) { return print_group(k.group()) + print_stanza(k); }

// "g1, g2, ..." in G.
inline std::vector<Element> parse_element_list(const Group& G, std::string_view text) {
  std::vector<Element> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& p : detail::split_top(detail::Piece{text, 1}, ',')) out.push_back(detail::parse_element_at(G, p, 1));
  return out;
}

// "g->h, ..." from source to target.
inline std::vector<std::pair<Element, Element>> parse_images(const Group& source, const Group& target,
                                                             std::string_view text) {
  std::vector<std::pair<Element, Element>> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& p : detail::split_top(detail::Piece{text, 1}, ',')) {
    const auto arrow = p.text.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected g->h", 1, p.column);
    out.emplace_back(detail::parse_element_at(source, detail::trim(detail::Piece{p.text.substr(0, arrow), p.column}), 1),
                     detail::parse_element_at(
                         target, detail::trim(detail::Piece{p.text.substr(arrow + 2), p.column + arrow + 2}), 1));
  }
  return out;
}

// "h=g, ..." (h names the coset, g is its representative) or bare "g, ...".
inline std::vector<std::pair<std::optional<Element>, Element>> parse_section(const Group& G, std::string_view text) {
  std::vector<std::pair<std::optional<Element>, Element>> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& p : detail::split_top(detail::Piece{text, 1}, ',')) {
    const auto eq = p.text.find('=');
    if (eq == std::string_view::npos) {
      out.emplace_back(std::nullopt, detail::parse_element_at(G, p, 1));
      continue;
    }
    out.emplace_back(detail::parse_element_at(G, detail::trim(detail::Piece{p.text.substr(0, eq), p.column}), 1),
                     detail::parse_element_at(G, detail::trim(detail::Piece{p.text.substr(eq + 1), p.column + eq + 1}), 1));
  }
  return out;
}

}  // namespace gknot
