#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "gknot/surface.hpp"
#include "support.hpp"

using namespace gknot;
using gtest_support::gauss;

namespace {

RotationSystem rot(std::vector<std::uint8_t> bits) { return RotationSystem{std::move(bits)}; }

bool connected(const FramedGraph& g) {
  int c = 0;
  vertex_components(g, &c);
  return c == 1 && g.free_circles() == 0;
}

long long det3(const std::vector<std::vector<long long>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST(Faces, FigureEight) {
  const auto g = gauss("A A");
  for (std::uint8_t b : {0, 1}) {
    const auto fs = faces(g, rot({b}));
    EXPECT_EQ(fs.size(), 3u);
    EXPECT_EQ(genus(g, rot({b})), 0);
  }
  const auto fs = faces(g, rot({0}));
  std::vector<std::size_t> lengths;
  for (const auto& f : fs) lengths.push_back(f.size());
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{1, 1, 2}));
}

TEST(Faces, OneVertexTorus) {
  // both loops join opposite slots: not good, one face on the torus
  const auto g = gtest_support::raw(1, {{0, 2}, {1, 3}});
  for (std::uint8_t b : {0, 1}) {
    EXPECT_EQ(faces(g, rot({b})).size(), 1u);
    EXPECT_EQ(genus(g, rot({b})), 1);
    EXPECT_FALSE(checkerboard_coloring(g, rot({b})).has_value());
  }
  EXPECT_FALSE(is_good(g));
}

TEST(Faces, Preconditions) {
  EXPECT_THROW(faces(FramedGraph::circles(1), rot({})), NotApplicable);
  EXPECT_THROW(faces(gauss("A A / B B"), rot({0, 0})), NotApplicable);
  EXPECT_THROW(faces(gauss("A A", 1), rot({0})), NotApplicable);
  EXPECT_THROW(faces(gauss("A A"), rot({0, 1})), DomainError);
}

TEST(Faces, IncidenceAndGenusExhaustive) {
  int embeddings = 0;
  for (int n = 1; n <= 3; ++n)
    gtest_support::for_each_graph(n, [&](const FramedGraph& g) {
      if (!connected(g)) return;
      for (const auto& r : all_rotations(n)) {
        const auto fs = faces(g, r);
        std::size_t total = 0;
        std::vector<int> seen(g.half_edge_count(), 0);
        for (const auto& f : fs) {
          total += f.size();
          for (int h : f) ++seen[h];
        }
        EXPECT_EQ(total, static_cast<std::size_t>(4 * n));
        for (int c : seen) EXPECT_EQ(c, 1);
        const int euler = n - 2 * n + static_cast<int>(fs.size());
        EXPECT_EQ(euler % 2, 0);
        EXPECT_GE(genus(g, r), 0);
        ++embeddings;
      }
    });
  EXPECT_GT(embeddings, 1000);
}

TEST(Checkerboard, FigureEight) {
  const auto c = checkerboard_coloring(gauss("A A"), rot({0}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ((*c)[0], 0);
  // the two loop faces share the color opposite to the outer face
  const auto fs = faces(gauss("A A"), rot({0}));
  for (std::size_t i = 0; i < fs.size(); ++i) EXPECT_EQ((*c)[i], fs[i].size() == 1 ? 0 : 1);
}

TEST(Checkerboard, EquivalentToGoodnessExhaustive) {
  int good = 0, colorable = 0;
  for (int n = 1; n <= 3; ++n)
    gtest_support::for_each_graph(n, [&](const FramedGraph& g) {
      if (!connected(g)) return;
      const bool is_g = is_good(g);
      good += is_g;
      for (const auto& r : all_rotations(n)) {
        const bool col = checkerboard_coloring(g, r).has_value();
        colorable += col;
        if (col) EXPECT_TRUE(is_g);
        if (is_g) EXPECT_TRUE(col);
      }
    });
  EXPECT_GT(good, 0);
  EXPECT_GT(colorable, 0);
}

TEST(Presentation, FigureEight) {
  const auto g = gauss("A A");
  const auto pol = base_polarity(g);
  ASSERT_TRUE(pol);
  const auto p = presentation(g, rot({0}), *pol);
  EXPECT_EQ(p.generators, std::vector<std::string>{"a"});
  EXPECT_EQ(p.relators, (std::vector<std::vector<int>>{{0}, {0}, {0, 0}}));
  EXPECT_EQ(print_presentation(p), "gens: a\nrel: a\nrel: a\nrel: a a\n");
  EXPECT_TRUE(abelianization(p).trivial());
  EXPECT_EQ(abelianization(p).to_string(), "1");
}

TEST(Presentation, OccurrencesAndCoherence) {
  int checked = 0;
  for (int n = 1; n <= 3; ++n)
    gtest_support::for_each_graph(n, [&](const FramedGraph& g) {
      if (!connected(g) || !is_good(g)) return;
      for (const auto& s : source_sink_structures(g))
        for (const auto& r : all_rotations(n)) {
          const auto p = presentation(g, r, s.polarity);
          std::size_t total = 0;
          for (const auto& rel : p.relators) total += rel.size();
          EXPECT_EQ(total, static_cast<std::size_t>(4 * n));
          ++checked;
        }
    });
  EXPECT_GT(checked, 100);
}

TEST(Presentation, RejectsBadInput) {
  const auto g = gtest_support::raw(1, {{0, 2}, {1, 3}});
  EXPECT_THROW(presentation(g, rot({0}), std::vector<std::uint8_t>{0}), DomainError);
}

TEST(Abelianization, Examples) {
  Presentation free2{{"a", "b"}, {}};
  EXPECT_EQ(abelianization(free2).free_rank, 2);
  EXPECT_EQ(abelianization(free2).to_string(), "Z^2");
  Presentation z2{{"a"}, {{0, 0}}};
  EXPECT_EQ(abelianization(z2).torsion, std::vector<long long>{2});
  EXPECT_EQ(abelianization(z2).to_string(), "Z/2");
  // a^2 b^4, a^2 b^2 -> diag(2, 2)
  Presentation z22{{"a", "b"}, {{0, 0, 1, 1, 1, 1}, {0, 0, 1, 1}}};
  EXPECT_EQ(abelianization(z22).torsion, (std::vector<long long>{2, 2}));
  EXPECT_EQ(smith_diagonal({{2, 0}, {0, 3}}), (std::vector<long long>{1, 6}));
}

TEST(Abelianization, SmithMatchesDeterminantAndGcd) {
  std::mt19937 rng(8);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::vector<long long>> m(3, std::vector<long long>(3));
    long long g = 0;
    for (auto& row : m)
      for (auto& x : row) {
        x = static_cast<long long>(rng() % 13) - 6;
        g = std::gcd(g, std::llabs(x));
      }
    const auto d = smith_diagonal(m);
    const long long det = std::llabs(det3(m));
    if (det != 0) {
      ASSERT_EQ(d.size(), 3u);
      EXPECT_EQ(d[0] * d[1] * d[2], det);
    }
    if (g != 0) EXPECT_EQ(d[0], g);
    for (std::size_t i = 1; i < d.size(); ++i) EXPECT_EQ(d[i] % d[i - 1], 0);
  }
}

TEST(LabelViaQuotient, Examples) {
  const auto g = gauss("A A");
  const auto p = presentation(g, rot({0}), *base_polarity(g));
  const auto k = label_via_quotient(g, p, Group::trivial(), {Element{}});
  EXPECT_TRUE(k.group().is_identity(k.label(0)));
  const auto z3 = Group::cyclic(3);
  EXPECT_THROW(label_via_quotient(g, p, z3, {z3.parse("1")}), DomainError);
  EXPECT_NO_THROW(label_via_quotient(g, p, z3, {z3.parse("0")}));
}

TEST(LabelViaQuotient, TorusEmbeddingOfGoodGraph) {
  // two circles crossing twice, embedded in the torus: two square faces
  const auto g = gtest_support::raw(2, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
  ASSERT_TRUE(is_good(g));
  const auto r = rot({0, 0});
  EXPECT_EQ(genus(g, r), 1);
  const auto p = presentation(g, r, *base_polarity(g));
  EXPECT_EQ(p.relators, (std::vector<std::vector<int>>{{0, 1, 0, 1}, {0, 1, 0, 1}}));
  EXPECT_EQ(abelianization(p).to_string(), "Z x Z/2");
  // a -> r, b -> s in Z6 is allowed iff 2r + 2s = 0 mod 6
  const auto z6 = Group::cyclic(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const std::vector<Element> images{z6.parse(std::to_string(a)), z6.parse(std::to_string(b))};
      if ((2 * a + 2 * b) % 6 == 0) EXPECT_NO_THROW(label_via_quotient(g, p, z6, images));
      else EXPECT_THROW(label_via_quotient(g, p, z6, images), DomainError);
    }
}
