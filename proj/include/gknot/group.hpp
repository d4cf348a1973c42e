#pragma once

// Group backends with decidable equality: trivial, cyclic, finite by
// multiplication table, free (reduced words) and direct products.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gknot/error.hpp"

namespace gknot {

// Backend-specific payload; which fields are meaningful depends on the group.
struct Element {
  std::int64_t value = 0;        // cyclic residue or table index
  std::vector<int> word;         // free group: letters +-(i+1), freely reduced
  std::vector<Element> parts;    // product: one element per factor

  bool operator==(const Element&) const = default;
  std::strong_ordering operator<=>(const Element&) const = default;
};

class Group {
 public:
  enum class Kind { Trivial, Cyclic, Table, Free, Product };

  Group() = default;

  static Group trivial() { return Group(); }

  static Group cyclic(int n) {
    if (n < 1) throw DomainError("cyclic group order must be at least 1");
    Group g;
    g.kind_ = Kind::Cyclic;
    g.param_ = n;
    return g;
  }

  static Group free(int rank) {
    if (rank < 0) throw DomainError("free group rank must be non-negative");
    Group g;
    g.kind_ = Kind::Free;
    g.param_ = rank;
    return g;
  }

  static Group product(std::vector<Group> factors) {
    if (factors.empty()) throw DomainError("product of no factors");
    Group g;
    g.kind_ = Kind::Product;
    g.param_ = static_cast<int>(factors.size());
    g.factors_ = std::move(factors);
    return g;
  }

  // rows[a][b] = index of a*b. Checks the Latin-square, identity and (for
  // n <= 64) associativity conditions.
  static Group table(std::vector<std::vector<int>> rows, int identity,
                     std::vector<std::string> names = {}) {
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw DomainError("table group needs at least one element");
    if (identity < 0 || identity >= n) throw DomainError("identity index out of range");
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n) throw DomainError("multiplication table is not square");
      std::vector<char> seen(n, 0);
      for (int x : r) {
        if (x < 0 || x >= n) throw DomainError("table entry out of range");
        if (seen[x]++) throw DomainError("multiplication table is not a Latin square");
      }
    }
    for (int c = 0; c < n; ++c) {
      std::vector<char> seen(n, 0);
      for (int r = 0; r < n; ++r)
        if (seen[rows[r][c]]++) throw DomainError("multiplication table is not a Latin square");
    }
    for (int a = 0; a < n; ++a)
      if (rows[identity][a] != a || rows[a][identity] != a)
        throw DomainError("identity row/column is not the identity");
    if (n <= 64) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (rows[rows[a][b]][c] != rows[a][rows[b][c]])
              throw DomainError("multiplication table is not associative");
    }
    if (!names.empty()) {
      if (static_cast<int>(names.size()) != n) throw DomainError("name count does not match table size");
      auto sorted = names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("duplicate element names");
    }
    Group g;
    g.kind_ = Kind::Table;
    g.param_ = n;
    g.identity_ = identity;
    g.rows_ = std::move(rows);
    g.names_ = std::move(names);
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.rows_[a][b] == identity) g.inverse_[a] = b;
    return g;
  }

  Kind kind() const { return kind_; }
  int parameter() const { return param_; }
  const std::vector<Group>& factors() const { return factors_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int table_identity() const { return identity_; }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Group& o) const {
    return kind_ == o.kind_ && param_ == o.param_ && identity_ == o.identity_ && rows_ == o.rows_ &&
           names_ == o.names_ && factors_ == o.factors_;
  }

  // ---- arithmetic -------------------------------------------------------

  Element identity() const {
    Element e;
    switch (kind_) {
      case Kind::Table: e.value = identity_; break;
      case Kind::Product:
        for (const auto& f : factors_) e.parts.push_back(f.identity());
        break;
      default: break;
    }
    return e;
  }

  Element multiply(const Element& a, const Element& b) const {
    check(a);
    check(b);
    return mul(a, b);
  }

  Element inverse(const Element& a) const {
    check(a);
    return inv(a);
  }

  bool equal(const Element& a, const Element& b) const {
    check(a);
    check(b);
    return a == b;
  }

  bool is_identity(const Element& a) const { return a == identity(); }

  bool contains(const Element& a) const { return why_invalid(a).empty(); }

  void check(const Element& a) const {
    const auto why = why_invalid(a);
    if (!why.empty()) throw TypeError("element does not belong to " + spec_line() + ": " + why);
  }

  // Unordered pair {g, g^-1} as a key; equal for g and its inverse.
  std::string inversion_pair_key(const Element& g) const {
    check(g);
    if (is_identity(g)) throw DomainError("the identity has no inversion pair");
    const Element h = inv(g);
    const Element& lo = std::min(g, h);
    const Element& hi = std::max(g, h);
    return print(lo) + "~" + print(hi);
  }

  // ---- finiteness --------------------------------------------------------

  bool is_finite() const {
    switch (kind_) {
      case Kind::Free: return param_ == 0;
      case Kind::Product:
        return std::all_of(factors_.begin(), factors_.end(), [](const Group& f) { return f.is_finite(); });
      default: return true;
    }
  }

  std::size_t order() const {
    if (!is_finite()) throw DomainError("group " + spec_line() + " is infinite");
    switch (kind_) {
      case Kind::Trivial: return 1;
      case Kind::Free: return 1;
      case Kind::Cyclic:
      case Kind::Table: return static_cast<std::size_t>(param_);
      case Kind::Product: {
        std::size_t n = 1;
        for (const auto& f : factors_) n *= f.order();
        return n;
      }
    }
    return 1;
  }

  bool is_abelian() const {
    switch (kind_) {
      case Kind::Trivial:
      case Kind::Cyclic: return true;
      case Kind::Free: return param_ <= 1;
      case Kind::Table:
        for (int a = 0; a < param_; ++a)
          for (int b = 0; b < a; ++b)
            if (rows_[a][b] != rows_[b][a]) return false;
        return true;
      case Kind::Product:
        return std::all_of(factors_.begin(), factors_.end(), [](const Group& f) { return f.is_abelian(); });
    }
    return false;
  }

  // All elements, identity first.
  std::vector<Element> elements() const {
    if (!is_finite()) throw DomainError("cannot list the elements of " + spec_line());
    std::vector<Element> out;
    switch (kind_) {
      case Kind::Trivial:
      case Kind::Free: out.push_back(identity()); break;
      case Kind::Cyclic:
        for (int r = 0; r < param_; ++r) out.push_back(Element{r, {}, {}});
        break;
      case Kind::Table:
        out.push_back(Element{identity_, {}, {}});
        for (int i = 0; i < param_; ++i)
          if (i != identity_) out.push_back(Element{i, {}, {}});
        break;
      case Kind::Product: {
        out.push_back(Element{});
        for (const auto& f : factors_) {
          std::vector<Element> next;
          for (const auto& prefix : out)
            for (const auto& x : f.elements()) {
              Element e = prefix;
              e.parts.push_back(x);
              next.push_back(std::move(e));
            }
          out = std::move(next);
        }
        break;
      }
    }
    return out;
  }

  // Position of a in elements().
  std::size_t index_of(const Element& a) const {
    check(a);
    switch (kind_) {
      case Kind::Trivial:
      case Kind::Free: return 0;
      case Kind::Cyclic: return static_cast<std::size_t>(a.value);
      case Kind::Table:
        if (a.value == identity_) return 0;
        return static_cast<std::size_t>(a.value < identity_ ? a.value + 1 : a.value);
      case Kind::Product: {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
          idx = idx * factors_[i].order() + factors_[i].index_of(a.parts[i]);
        return idx;
      }
    }
    return 0;
  }

  // ---- text --------------------------------------------------------------

  std::string print(const Element& a) const {
    switch (kind_) {
      case Kind::Trivial: return "1";
      case Kind::Cyclic: return std::to_string(a.value);
      case Kind::Table:
        return names_.empty() ? std::to_string(a.value) : names_[static_cast<std::size_t>(a.value)];
      case Kind::Free: {
        if (a.word.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < a.word.size();) {
          const int letter = a.word[i];
          std::size_t j = i;
          while (j < a.word.size() && a.word[j] == letter) ++j;
          const int power = static_cast<int>(j - i) * (letter > 0 ? 1 : -1);
          if (!out.empty()) out += '*';
          out += "x" + std::to_string(std::abs(letter));
          if (power != 1) out += "^" + std::to_string(power);
          i = j;
        }
        return out;
      }
      case Kind::Product: {
        std::string out = "(";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) out += ',';
          out += factors_[i].print(a.parts[i]);
        }
        return out + ")";
      }
    }
    return "?";
  }

  Element parse(std::string_view text) const {
    std::size_t pos = 0;
    Element e = parse_at(text, pos);
    skip_space(text, pos);
    if (pos != text.size()) fail("unexpected trailing text", pos);
    return e;
  }

  // One-line description: "trivial", "cyclic 6", "free 2",
  // "product cyclic 2; cyclic 3", "table 6".
  std::string spec_line() const {
    switch (kind_) {
      case Kind::Trivial: return "trivial";
      case Kind::Cyclic: return "cyclic " + std::to_string(param_);
      case Kind::Free: return "free " + std::to_string(param_);
      case Kind::Table: return "table " + std::to_string(param_);
      case Kind::Product: {
        std::string out = "product ";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) out += "; ";
          out += factors_[i].spec_line();
        }
        return out;
      }
    }
    return "?";
  }

  // Parses the single-line forms of spec_line(); tables need parse_group.
  static Group parse_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string kind;
    in >> kind;
    if (kind == "trivial") return trivial();
    if (kind == "cyclic" || kind == "free") {
      long long n = 0;
      if (!(in >> n)) throw ParseError("expected a number after '" + kind + "'", 1, kind.size() + 2);
      std::string rest;
      if (in >> rest) throw ParseError("unexpected text '" + rest + "'", 1, 1);
      if (n < 0 || n > std::numeric_limits<int>::max()) throw DomainError("group parameter out of range");
      return kind == "cyclic" ? cyclic(static_cast<int>(n)) : free(static_cast<int>(n));
    }
    if (kind == "product") {
      std::string rest;
      std::getline(in, rest);
      std::vector<Group> parts;
      std::size_t start = 0;
      while (start <= rest.size()) {
        const std::size_t semi = rest.find(';', start);
        const std::string piece = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        parts.push_back(parse_spec(piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      return product(std::move(parts));
    }
    throw ParseError("unknown group kind '" + kind + "'", 1, 1);
  }

 private:
  Element mul(const Element& a, const Element& b) const {
    switch (kind_) {
      case Kind::Trivial: return Element{};
      case Kind::Cyclic: return Element{(a.value + b.value) % param_, {}, {}};
      case Kind::Table: return Element{rows_[a.value][b.value], {}, {}};
      case Kind::Free: {
        Element e;
        e.word = a.word;
        for (int x : b.word) {
          if (!e.word.empty() && e.word.back() == -x) e.word.pop_back();
          else e.word.push_back(x);
        }
        return e;
      }
      case Kind::Product: {
        Element e;
        for (std::size_t i = 0; i < factors_.size(); ++i) e.parts.push_back(factors_[i].mul(a.parts[i], b.parts[i]));
        return e;
      }
    }
    return Element{};
  }

  Element inv(const Element& a) const {
    switch (kind_) {
      case Kind::Trivial: return Element{};
      case Kind::Cyclic: return Element{(param_ - a.value) % param_, {}, {}};
      case Kind::Table: return Element{inverse_[a.value], {}, {}};
      case Kind::Free: {
        Element e;
        for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) e.word.push_back(-*it);
        return e;
      }
      case Kind::Product: {
        Element e;
        for (std::size_t i = 0; i < factors_.size(); ++i) e.parts.push_back(factors_[i].inv(a.parts[i]));
        return e;
      }
    }
    return Element{};
  }

  std::string why_invalid(const Element& a) const {
    const bool no_word = a.word.empty();
    const bool no_parts = a.parts.empty();
    switch (kind_) {
      case Kind::Trivial:
        return (a.value == 0 && no_word && no_parts) ? "" : "not the trivial element";
      case Kind::Cyclic:
      case Kind::Table:
        if (!no_word || !no_parts) return "unexpected payload";
        return (a.value >= 0 && a.value < param_) ? "" : "index out of range";
      case Kind::Free:
        if (a.value != 0 || !no_parts) return "unexpected payload";
        for (std::size_t i = 0; i < a.word.size(); ++i) {
          const int x = a.word[i];
          if (x == 0 || std::abs(x) > param_) return "letter out of range";
          if (i && a.word[i - 1] == -x) return "word is not freely reduced";
        }
        return "";
      case Kind::Product:
        if (a.value != 0 || !no_word || a.parts.size() != factors_.size()) return "wrong tuple size";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          auto why = factors_[i].why_invalid(a.parts[i]);
          if (!why.empty()) return why;
        }
        return "";
    }
    return "unknown group";
  }

  static void skip_space(std::string_view t, std::size_t& pos) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }

  [[noreturn]] static void fail(const std::string& what, std::size_t pos) {
    throw ParseError(what, 1, pos + 1);
  }

  static std::int64_t parse_int(std::string_view t, std::size_t& pos) {
    skip_space(t, pos);
    const std::size_t start = pos;
    bool neg = false;
    if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) neg = t[pos++] == '-';
    if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos]))) fail("expected an integer", start);
    std::int64_t v = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      v = v * 10 + (t[pos++] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large", start);
    }
    return neg ? -v : v;
  }

  Element parse_at(std::string_view t, std::size_t& pos) const {
    skip_space(t, pos);
    switch (kind_) {
      case Kind::Trivial: {
        const std::size_t start = pos;
        if (pos < t.size() && (t[pos] == '1' || t[pos] == '0' || t[pos] == 'e')) {
          ++pos;
          return Element{};
        }
        fail("expected the trivial element", start);
      }
      case Kind::Cyclic: {
        const std::int64_t v = parse_int(t, pos);
        return Element{((v % param_) + param_) % param_, {}, {}};
      }
      case Kind::Table: {
        const std::size_t start = pos;
        std::size_t end = pos;
        while (end < t.size() && !std::isspace(static_cast<unsigned char>(t[end])) && t[end] != ',' && t[end] != ')')
          ++end;
        const std::string tok(t.substr(pos, end - pos));
        if (tok.empty()) fail("expected a table element", start);
        pos = end;
        if (!names_.empty()) {
          auto it = std::find(names_.begin(), names_.end(), tok);
          if (it == names_.end()) fail("unknown element '" + tok + "'", start);
          return Element{it - names_.begin(), {}, {}};
        }
        std::size_t p2 = 0;
        const std::int64_t v = parse_int(tok, p2);
        if (p2 != tok.size() || v < 0 || v >= param_) fail("table index out of range", start);
        return Element{v, {}, {}};
      }
      case Kind::Free: {
        Element e;
        bool first = true;
        while (true) {
          skip_space(t, pos);
          if (!first) {
            if (pos < t.size() && t[pos] == '*') ++pos;
            else break;
            skip_space(t, pos);
          }
          first = false;
          const std::size_t start = pos;
          if (pos < t.size() && (t[pos] == '1' || t[pos] == 'e')) {
            ++pos;
            continue;
          }
          if (pos >= t.size() || t[pos] != 'x') fail("expected a generator 'x<i>'", start);
          ++pos;
          const std::size_t num_at = pos;
          const std::int64_t gen = parse_int(t, pos);
          if (gen < 1 || gen > param_) fail("generator index out of range", num_at);
          std::int64_t power = 1;
          skip_space(t, pos);
          if (pos < t.size() && t[pos] == '^') {
            ++pos;
            power = parse_int(t, pos);
          }
          const int letter = static_cast<int>(power < 0 ? -gen : gen);
          for (std::int64_t k = 0; k < std::abs(power); ++k) {
            if (!e.word.empty() && e.word.back() == -letter) e.word.pop_back();
            else e.word.push_back(letter);
          }
        }
        return e;
      }
      case Kind::Product: {
        if (pos >= t.size() || t[pos] != '(') fail("expected '('", pos);
        ++pos;
        Element e;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) {
            skip_space(t, pos);
            if (pos >= t.size() || t[pos] != ',') fail("expected ','", pos);
            ++pos;
          }
          e.parts.push_back(factors_[i].parse_at(t, pos));
        }
        skip_space(t, pos);
        if (pos >= t.size() || t[pos] != ')') fail("expected ')'", pos);
        ++pos;
        return e;
      }
    }
    fail("unknown group", pos);
  }

  Kind kind_ = Kind::Trivial;
  int param_ = 0;
  int identity_ = 0;
  std::vector<std::vector<int>> rows_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  std::vector<Group> factors_;
};

// The symmetric group on three letters as a table: 0 = identity,
// 1,2 = 3-cycles, 3,4,5 = transpositions.
inline Group symmetric_group_s3() {
  // permutations of {0,1,2} as images
  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::vector<int>> rows(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      rows[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return Group::table(std::move(rows), 0);
}

}  // namespace gknot
