#include <gtest/gtest.h>

#include <random>

#include "gknot/invariants.hpp"
#include "gknot/search.hpp"
#include "support.hpp"

using namespace gknot;
using gtest_support::gauss;

namespace {

GGraph labeled(const std::string& code, const Group& G, const std::vector<std::string>& labels, int circles = 0) {
  std::vector<Element> ls;
  for (const auto& l : labels) ls.push_back(G.parse(l));
  return GGraph(gauss(code, circles), G, ls);
}

GGraph unknot(const Group& G) { return GGraph(FramedGraph::circles(1), G, {}); }

std::vector<GGraph> sample_knots(const Group& G, int max_k, std::size_t per_word, std::mt19937& rng) {
  std::vector<GGraph> out;
  out.push_back(unknot(G));
  const auto els = G.elements();
  for (int k = 1; k <= max_k; ++k)
    for (const auto& w : gtest_support::double_occurrence_words(k)) {
      const auto g = gtest_support::graph_of_word(w);
      std::vector<std::optional<std::vector<std::uint8_t>>> pols;
      if (G.is_abelian()) pols.push_back(std::nullopt);
      else
        for (const auto& s : source_sink_structures(g)) pols.push_back(s.polarity);
      for (const auto& p : pols)
        for (std::size_t i = 0; i < per_word; ++i) {
          std::vector<Element> ls;
          for (int v = 0; v < k; ++v) ls.push_back(els[rng() % els.size()]);
          out.emplace_back(g, G, ls, p);
        }
    }
  return out;
}

}  // namespace

TEST(ReduceBigons, Examples) {
  const auto g = gauss("A B A B");
  // unlabeled: both vertices go
  EXPECT_EQ(reduce_bigons(g).vertex_count(), 0);
  // labeled with non-inverse labels: nothing to remove
  const auto k = labeled("A B A B", Group::cyclic(3), {"1", "1"});
  EXPECT_EQ(reduce_bigons(k).vertex_count(), 2);
  EXPECT_EQ(reduce_bigons(gauss("A B B A")).vertex_count(), 0);
}

TEST(ReduceBigons, NestedBigonsBothOrders) {
  // two R2 pairs stacked on the unknot
  const auto g = gauss("A B C D D C B A");
  const auto bs = find_bigons(g);
  ASSERT_GE(bs.size(), 2u);
  std::set<std::string> results;
  for (const auto& b : bs) {
    auto r = resolve(g, std::vector<Junction>{{b.v1, Joining::Opposite}, {b.v2, Joining::Opposite}});
    results.insert(canonical_code(reduce_bigons(r.graph)));
  }
  EXPECT_EQ(results.size(), 1u);
  EXPECT_EQ(reduce_bigons(g).vertex_count(), 0);
}

TEST(ReduceBigons, ConfluentUnderRandomOrders) {
  std::mt19937 rng(77);
  int reducible = 0;
  for (int k = 2; k <= 5; ++k)
    for (const auto& w : gtest_support::double_occurrence_words(k)) {
      const auto g = gtest_support::graph_of_word(w);
      if (find_bigons(g).empty()) continue;
      ++reducible;
      const auto expect = canonical_code(reduce_bigons(g));
      for (int trial = 0; trial < 10; ++trial) {
        FramedGraph cur = g;
        while (true) {
          const auto bs = find_bigons(cur);
          if (bs.empty()) break;
          const auto& b = bs[rng() % bs.size()];
          cur = resolve(cur, std::vector<Junction>{{b.v1, Joining::Opposite}, {b.v2, Joining::Opposite}}).graph;
        }
        EXPECT_EQ(canonical_code(cur), expect);
      }
    }
  EXPECT_GT(reducible, 0);
}

TEST(Parity, OddAndIrreducible) {
  const auto z2 = Group::cyclic(2);
  const auto k = labeled("A B A B", z2, {"1", "1"});
  EXPECT_TRUE(is_odd(k));
  EXPECT_FALSE(is_irreducible(k));  // the two-chord diagram has bigons
  EXPECT_FALSE(is_odd(labeled("A A", z2, {"0"})));
  EXPECT_TRUE(is_odd(unknot(z2)));
  EXPECT_TRUE(is_irreducible(unknot(z2)));
}

TEST(ParityBracket, Examples) {
  const auto z2 = Group::cyclic(2);
  const auto u = parity_bracket(unknot(z2));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u.keys()[0], canonical_code(FramedGraph::circles(1)));

  // one even kink: ParallelA leaves one circle (kept), ParallelB two (dropped)
  const auto kink = parity_bracket(labeled("A A", z2, {"0"}));
  EXPECT_EQ(kink, u);

  // odd two-chord diagram: no even vertex, the diagram itself reduced mod R2
  const auto b = parity_bracket(labeled("A B A B", z2, {"1", "1"}));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.keys()[0], g2_canonical(gauss("A B A B")).key);

  EXPECT_THROW(parity_bracket(labeled("A B / A B", z2, {"1", "1"})), DomainError);
}

TEST(ParityBracket, SelfReproductionOddIrreducible) {
  const auto z2 = Group::cyclic(2);
  int found = 0;
  for (int k = 1; k <= 6; ++k)
    for (const auto& w : gtest_support::double_occurrence_words(k)) {
      const auto g = gtest_support::graph_of_word(w);
      if (!find_bigons(g).empty()) continue;
      ++found;
      const GGraph K(g, z2, std::vector<Element>(k, z2.parse("1")));
      const auto b = parity_bracket(K);
      ASSERT_EQ(b.size(), 1u);
      EXPECT_EQ(b.keys()[0], GGraph::unlabeled(g).key());
    }
  EXPECT_GT(found, 0);
}

TEST(GroupBracket, Examples) {
  const auto z3 = Group::cyclic(3);
  const auto a = labeled("A A", z3, {"1"});
  const auto b = group_bracket(a);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.keys()[0], a.key());
  EXPECT_EQ(group_bracket(unknot(z3)).keys(), std::vector<std::string>{unknot(z3).key()});
  EXPECT_EQ(group_bracket(labeled("A A", z3, {"0"})), group_bracket(unknot(z3)));
}

TEST(GroupBracket, SelfReproduction) {
  std::mt19937 rng(4);
  for (const auto& G : {Group::cyclic(3), Group::cyclic(5), symmetric_group_s3()})
    for (const auto& K : sample_knots(G, 4, 3, rng)) {
      if (!detail::unit_vertices(K).empty()) continue;
      MoveOptions opt;
      opt.kinds = kind_bit(MoveKind::R2Minus);
      if (!enumerate_moves(K, opt).empty()) continue;
      const auto b = group_bracket(K);
      ASSERT_EQ(b.size(), 1u);
      EXPECT_EQ(b.keys()[0], sg_canonical(K).key);
    }
}

TEST(Delta, Examples) {
  EXPECT_TRUE(delta(GGraph::unlabeled(gauss("A A"))).empty());
  EXPECT_TRUE(delta(GGraph::unlabeled(gauss("A B A B"))).empty());
  const auto z3 = Group::cyclic(3);
  EXPECT_TRUE(delta(labeled("A A", z3, {"0"})).empty());
  EXPECT_EQ(delta(labeled("A A", z3, {"0"})), delta(unknot(z3)));
}

TEST(Delta, ExactlyOneQuotientKeepsTwoCircles) {
  DeltaOptions opt;
  opt.quotient = TrivialQuotient::ExactlyOne;
  const auto d = delta(GGraph::unlabeled(gauss("A A")), opt);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.terms.begin()->second.shadow().free_circles(), 2);
}

TEST(Delta, SplitByInversionPair) {
  const auto z5 = Group::cyclic(5);
  const auto k = labeled("A B A B", z5, {"1", "2"});
  // smoothing either vertex leaves two components crossing once at the other
  const auto full = delta_full(k);
  ASSERT_EQ(full.size(), 2u);
  for (const auto& [p, c] : full) {
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(max_vertices(c), 1);
  }
  EXPECT_EQ(full.at("1~4").keys(), full.at("2~3").keys());
  // the two terms cancel in the unsplit sum
  EXPECT_TRUE(delta_nontrivial(k).empty());
  EXPECT_EQ(crossing_lower_bound(k), 2);
  EXPECT_TRUE(delta_full(labeled("A B A B", z5, {"0", "0"})).empty());
}

TEST(Delta, SplittingIdentity) {
  std::mt19937 rng(9);
  for (const auto& G : {Group::cyclic(3), Group::cyclic(4), symmetric_group_s3()})
    for (const auto& K : sample_knots(G, 4, 2, rng)) {
      Combination sum;
      sum.space = Space::L2;
      for (const auto& [p, c] : delta_full(K)) sum.add(c);
      EXPECT_EQ(sum, delta_nontrivial(K));
    }
}

TEST(LowerBound, Examples) {
  const auto z3 = Group::cyclic(3);
  EXPECT_EQ(crossing_lower_bound(labeled("A A", z3, {"1"})), 1);
  EXPECT_EQ(crossing_lower_bound(labeled("A B A B", z3, {"1", "1"})), 2);
  EXPECT_EQ(crossing_lower_bound(unknot(z3)), 0);
}

TEST(LowerBound, SoundAgainstSearch) {
  std::mt19937 rng(13);
  const auto z3 = Group::cyclic(3);
  const auto pool = sample_knots(z3, 2, 2, rng);
  int proven = 0;
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const auto r = equivalence_search(a, b, {4, 300});
      if (!r.proven) continue;
      ++proven;
      EXPECT_LE(crossing_lower_bound(a), b.vertex_count());
    }
  EXPECT_GT(proven, 0);
}

TEST(MoveInvariance, SmallDiagrams) {
  std::mt19937 rng(21);
  int pairs = 0;
  for (const auto& G : {Group::trivial(), Group::cyclic(2), Group::cyclic(3), symmetric_group_s3()})
    for (const auto& K : sample_knots(G, 3, 2, rng)) {
      const auto pb = G.order() == 2 ? parity_bracket(K) : Combination{};
      const auto gb = group_bracket(K);
      const auto d = delta(K);
      const auto df = delta_full(K);
      for (const auto& s : enumerate_moves(K)) {
        if (K.vertex_count() + detail::vertex_change(s.kind) > 4) continue;
        const auto M = apply_move(K, s);
        if (G.order() == 2) EXPECT_EQ(parity_bracket(M), pb) << describe(s) << " " << K.key();
        EXPECT_EQ(group_bracket(M), gb) << describe(s) << " " << K.key();
        EXPECT_EQ(delta(M), d) << describe(s) << " " << K.key();
        const auto mf = delta_full(M);
        EXPECT_EQ(mf.size(), df.size()) << describe(s) << " " << K.key();
        for (const auto& [p, c] : df) {
          auto it = mf.find(p);
          ASSERT_TRUE(it != mf.end()) << describe(s) << " " << K.key();
          EXPECT_EQ(it->second, c);
        }
        ++pairs;
      }
    }
  EXPECT_GT(pairs, 200);
}

TEST(Enumeration, SmallCases) {
  const auto triv = na_enumeration(Group::trivial(), 0);
  ASSERT_EQ(triv.size(), 1u);
  EXPECT_EQ(triv[0].status, MinimalityStatus::CertifiedMinimal);

  const auto z3 = Group::cyclic(3);
  const auto one = na_enumeration(z3, 1);
  const auto target = labeled("A A", z3, {"1"}).key();
  bool seen = false;
  for (const auto& e : one)
    if (e.key == target) {
      seen = true;
      EXPECT_EQ(e.status, MinimalityStatus::CertifiedMinimal);
    }
  EXPECT_TRUE(seen);

  EXPECT_THROW(na_enumeration(Group::cyclic(7), 1), ScaleLimit);
  EXPECT_THROW(na_enumeration(z3, 5), ScaleLimit);
}
