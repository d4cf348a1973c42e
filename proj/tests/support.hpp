#pragma once

// Shared generators and independent oracles for the test suites.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gknot/framed_graph.hpp"

namespace gtest_support {

using gknot::FramedGraph;

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// "A B A B / C C" -> graph; each '/'-separated word is one strand.
inline FramedGraph gauss(const std::string& code, int circles = 0) {
  std::vector<std::vector<std::string>> words;
  std::string cur;
  std::istringstream in(code);
  std::string part;
  while (std::getline(in, part, '/')) {
    auto w = split_words(part);
    if (!w.empty()) words.push_back(w);
  }
  return gknot::from_gauss_codes(words, circles).graph;
}

inline FramedGraph raw(int n, std::vector<std::pair<int, int>> pairs, int circles = 0) {
  std::vector<int> partner(4 * n, -1);
  for (auto [a, b] : pairs) {
    partner[a] = b;
    partner[b] = a;
  }
  return FramedGraph::from_partners(partner, circles);
}

// Every perfect matching on 4n half-edges (use for n <= 3).
inline void for_each_graph(int n, const std::function<void(const FramedGraph&)>& f) {
  std::vector<int> partner(4 * n, -1);
  std::function<void()> rec = [&] {
    int h = 0;
    while (h < 4 * n && partner[h] >= 0) ++h;
    if (h == 4 * n) {
      f(FramedGraph::from_partners(partner, 0));
      return;
    }
    for (int k = h + 1; k < 4 * n; ++k) {
      if (partner[k] >= 0) continue;
      partner[h] = k;
      partner[k] = h;
      rec();
      partner[h] = partner[k] = -1;
    }
  };
  rec();
}

inline FramedGraph random_graph(std::mt19937& rng, int n, int circles = 0) {
  std::vector<int> hs(4 * n);
  for (int i = 0; i < 4 * n; ++i) hs[i] = i;
  std::shuffle(hs.begin(), hs.end(), rng);
  std::vector<int> partner(4 * n);
  for (int i = 0; i < 4 * n; i += 2) {
    partner[hs[i]] = hs[i + 1];
    partner[hs[i + 1]] = hs[i];
  }
  return FramedGraph::from_partners(partner, circles);
}

// Double-occurrence words on symbols 0..k-1 up to renaming by first
// appearance (every symbol introduced in order).
inline std::vector<std::vector<int>> double_occurrence_words(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> word;
  std::vector<int> used(k, 0);
  std::function<void(int)> rec = [&](int introduced) {
    if (static_cast<int>(word.size()) == 2 * k) {
      out.push_back(word);
      return;
    }
    for (int s = 0; s < introduced; ++s) {
      if (used[s] == 1) {
        used[s] = 2;
        word.push_back(s);
        rec(introduced);
        word.pop_back();
        used[s] = 1;
      }
    }
    if (introduced < k) {
      used[introduced] = 1;
      word.push_back(introduced);
      rec(introduced + 1);
      word.pop_back();
      used[introduced] = 0;
    }
  };
  rec(0);
  return out;
}

inline FramedGraph graph_of_word(const std::vector<int>& word) {
  std::vector<std::string> w;
  for (int s : word) w.push_back(gknot::default_vertex_name(s));
  if (w.empty()) return FramedGraph::circles(1);
  return gknot::from_gauss_codes({w}, 0).graph;
}

}  // namespace gtest_support
