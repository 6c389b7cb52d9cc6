#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "oramlab/graph.hpp"
#include "test_support.hpp"

using namespace oramlab;
using oramlab::testing::naive_crossing;
using oramlab::testing::naive_edges;

namespace {

std::vector<Edge> edges_of(std::vector<Address> a) { return build_access_graph(std::span(a)).edges(); }

TEST(AccessGraph, Examples) {
  EXPECT_EQ(edges_of({5, 7, 5, 7}), (std::vector<Edge>{{0, 2}, {1, 3}}));
  EXPECT_EQ(edges_of({3, 3, 3}), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(edges_of({}).empty());
  EXPECT_TRUE(edges_of({1, 2, 3}).empty());
}

TEST(AccessGraph, CrossingExamples) {
  std::vector<Address> a{5, 7, 5, 7};
  auto g = build_access_graph(std::span(a));
  EXPECT_EQ(crossing_edge_count(g, 0, 2, 4), 2u);
  EXPECT_EQ(crossing_edge_count(g, 0, 1, 4), 1u);
  EXPECT_EQ(crossing_edge_count(g, 2, 3, 4), 0u);
  EXPECT_EQ(crossing_edge_count(g, 0, 0, 4), 0u);
  EXPECT_THROW(crossing_edge_count(g, 3, 2, 4), SpecError);
  EXPECT_THROW(crossing_edge_count(g, 0, 2, 5), SpecError);
}

TEST(AccessGraph, FromEdgesValidates) {
  std::vector<Edge> ok{{0, 2}, {1, 3}};
  auto g = AccessGraph::from_edges(4, ok);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges(), ok);
  std::vector<Edge> backwards{{2, 1}};
  EXPECT_THROW(AccessGraph::from_edges(3, backwards), SpecError);
  std::vector<Edge> out_of_range{{0, 3}};
  EXPECT_THROW(AccessGraph::from_edges(3, out_of_range), SpecError);
  std::vector<Edge> two_out{{0, 1}, {0, 2}};
  EXPECT_THROW(AccessGraph::from_edges(3, two_out), SpecError);
  std::vector<Edge> two_in{{0, 2}, {1, 2}};
  EXPECT_THROW(AccessGraph::from_edges(3, two_in), SpecError);
}

TEST(AccessGraph, MatchesDefinitionOnRandomSequences) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 3000; ++round) {
    const std::size_t n = rng() % 13;
    auto a = oramlab::testing::random_addresses(rng, n, 1 + rng() % 6);
    auto g = build_access_graph(std::span(a));
    auto raw = naive_edges(a);
    ASSERT_EQ(g.edge_count(), raw.size());
    auto edges = g.edges();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      EXPECT_EQ(edges[i].from, raw[i].from);
      EXPECT_EQ(edges[i].to, raw[i].to);
    }
    std::set<Address> distinct(a.begin(), a.end());
    EXPECT_EQ(g.edge_count(), n - distinct.size());

    for (std::size_t x = 0; x <= n; ++x) {
      for (std::size_t m = x; m <= n; ++m) {
        for (std::size_t b = m; b <= n; ++b) {
          const auto c = crossing_edge_count(g, x, m, b);
          ASSERT_EQ(c, naive_crossing(raw, x, m, b));
          // Same as the number of distinct addresses seen on both sides.
          std::set<Address> left(a.begin() + x, a.begin() + m);
          std::set<Address> right(a.begin() + m, a.begin() + b);
          std::size_t both = 0;
          for (auto v : left) both += right.contains(v);
          ASSERT_EQ(c, both);
        }
      }
    }
  }
}

TEST(AccessGraph, DegreeBoundsOnRandomSequences) {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 200; ++round) {
    auto a = oramlab::testing::random_addresses(rng, 500, 1 + rng() % 50);
    auto g = build_access_graph(std::span(a));
    std::vector<int> in(a.size()), out(a.size());
    for (const auto& e : g.edges()) {
      ASSERT_LT(e.from, e.to);
      ASSERT_EQ(a[e.from], a[e.to]);
      ++out[e.from];
      ++in[e.to];
    }
    for (std::size_t v = 0; v < a.size(); ++v) {
      EXPECT_LE(in[v], 1);
      EXPECT_LE(out[v], 1);
    }
  }
}

TEST(AccessGraph, ExportFormats) {
  std::vector<Address> a{5, 7, 5};
  auto g = build_access_graph(std::span(a));
  std::ostringstream edges;
  write_edge_list(edges, g);
  EXPECT_EQ(edges.str(), "# N=3 E=1\n0 2\n");
  std::ostringstream dot;
  write_dot(dot, g);
  EXPECT_EQ(dot.str(), "digraph access {\n  rankdir=LR;\n  0;\n  1;\n  2;\n  0 -> 2;\n}\n");
}

}  // namespace
