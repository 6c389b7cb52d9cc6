#include <gtest/gtest.h>

#include <random>

#include "oramlab/engines.hpp"
#include "oramlab/partition.hpp"
#include "test_support.hpp"

using namespace oramlab;
using oramlab::testing::naive_has_dense_partition;
using oramlab::testing::RawEdge;

namespace {

AccessGraph graph(std::size_t n, std::vector<Edge> edges) { return AccessGraph::from_edges(n, edges); }

std::vector<RawEdge> raw(const AccessGraph& g) {
  std::vector<RawEdge> out;
  for (const auto& e : g.edges()) out.push_back({e.from, e.to});
  return out;
}

AccessGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  auto a = oramlab::testing::random_addresses(rng, n, 1 + rng() % (n + 1));
  return build_access_graph(std::span(a));
}

TEST(Greedy, Examples) {
  auto path = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  auto p = greedy_dense_partition(path, 2, Rational(1));
  ASSERT_TRUE(p);
  EXPECT_TRUE(verify_partition(path, *p, Rational(1)));
  EXPECT_FALSE(greedy_dense_partition(path, 1, Rational(2)));

  auto crossed = graph(4, {{0, 2}, {1, 3}});
  EXPECT_FALSE(greedy_dense_partition(crossed, 2, Rational(1)));
  EXPECT_TRUE(greedy_dense_partition(crossed, 1, Rational(2)));

  for (const auto* g : {&path, &crossed}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (int ell = 1; ell <= 3; ++ell) {
        EXPECT_EQ(greedy_dense_partition(*g, k, Rational(ell)).has_value(),
                  naive_has_dense_partition(4, raw(*g), k, Rational(ell)));
      }
    }
  }
}

TEST(Greedy, TrivialThresholdAndBadK) {
  auto empty = graph(5, {});
  auto p = greedy_dense_partition(empty, 3, Rational(0));
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->well_formed(5));
  EXPECT_THROW(greedy_dense_partition(empty, 0, Rational(1)), SpecError);
}

TEST(BruteForce, Examples) {
  auto empty = graph(6, {});
  auto p = brute_force_dense_partition(empty, 1, Rational(0));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->bounds, (std::vector<std::size_t>{0, 6}));
  EXPECT_EQ(p->splits, (std::vector<std::size_t>{0}));
  EXPECT_FALSE(brute_force_dense_partition(empty, 1, Rational(1)));
  EXPECT_THROW(brute_force_dense_partition(graph(19, {}), 1, Rational(1)), SpecError);
}

TEST(BruteForce, AgreesWithUnprunedEnumeration) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = rng() % 9;
    auto g = random_graph(rng, n);
    for (std::size_t k = 1; k <= 3; ++k) {
      for (const Rational ell : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
        auto p = brute_force_dense_partition(g, k, ell);
        ASSERT_EQ(p.has_value(), naive_has_dense_partition(n, raw(g), k, ell));
        if (p) {
          EXPECT_TRUE(verify_partition(g, *p, ell));
        }
      }
    }
  }
}

TEST(Greedy, AgreesWithBruteForceAndIsSound) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 3000; ++round) {
    const std::size_t n = rng() % 15;
    auto g = random_graph(rng, n);
    BruteForcePartitioner brute(g);
    for (std::size_t k = 1; k <= 4; ++k) {
      for (int ell = 1; ell <= 4; ++ell) {
        auto p = greedy_dense_partition(g, k, Rational(ell));
        ASSERT_EQ(p.has_value(), brute.find(k, Rational(ell)).has_value()) << "n=" << n << " k=" << k;
        if (p) {
          EXPECT_EQ(p->k(), k);
          EXPECT_TRUE(verify_partition(g, *p, Rational(ell)));
        }
      }
    }
  }
}

// Existence is monotone: a lower threshold or fewer parts never hurts.
TEST(Greedy, MonotoneInEllAndK) {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 500; ++round) {
    auto g = random_graph(rng, 10 + rng() % 60);
    for (std::size_t k = 1; k <= 6; ++k) {
      for (int ell = 1; ell <= 6; ++ell) {
        if (!greedy_dense_partition(g, k, Rational(ell))) continue;
        EXPECT_TRUE(greedy_dense_partition(g, k, Rational(ell - 1)));
        if (k > 1) {
          EXPECT_TRUE(greedy_dense_partition(g, k - 1, Rational(ell)));
        }
      }
    }
  }
}

TEST(BestSplit, SmallestMaximizer) {
  auto g = graph(6, {{0, 3}, {1, 4}, {2, 5}});
  auto s = best_split(g, 0, 6);
  EXPECT_EQ(s.crossing, 3u);
  EXPECT_EQ(s.split, 3u);
  auto path = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(best_split(path, 0, 4).split, 1u);
  EXPECT_EQ(best_split(path, 2, 2).crossing, 0u);
}

TEST(Log4, Helpers) {
  EXPECT_TRUE(is_power_of_4(1));
  EXPECT_TRUE(is_power_of_4(16));
  EXPECT_FALSE(is_power_of_4(2));
  EXPECT_FALSE(is_power_of_4(8));
  EXPECT_FALSE(is_power_of_4(0));
  EXPECT_EQ(floor_log4(1), 0);
  EXPECT_EQ(floor_log4(15), 1);
  EXPECT_EQ(floor_log4(16), 2);
  EXPECT_EQ(ceil_log4(1), 0);
  EXPECT_EQ(ceil_log4(5), 2);
  EXPECT_EQ(ceil_log4(16), 2);
}

TEST(EdgeBound, Examples) {
  PartitionCertificate cert{Rational(20), {}, {}};
  EXPECT_EQ(edge_lower_bound(cert, 3), 30);
  EXPECT_EQ(edge_lower_bound(cert, 0), 0);
  PartitionCertificate ten{Rational(10), {}, {}};
  EXPECT_EQ(edge_lower_bound(ten, 1), 5);
  PartitionCertificate odd{Rational(64, 5), {}, {}};
  EXPECT_EQ(edge_lower_bound(odd, 1), 7);  // ceil(32/5)
}

TEST(EdgeBound, CertificateIsReverified) {
  auto path = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  PartitionCertificate cert{Rational(2), {1, 2}, {}};
  cert.witnessed.emplace(2, Partition{{0, 2, 4}, {1, 3}});
  EXPECT_THROW(edge_lower_bound_from_certificate(path, cert), SpecError);  // 2 is not a power of 4

  PartitionCertificate bad{Rational(4), {1}, {}};
  bad.witnessed.emplace(1, Partition{{0, 4}, {2}});
  EXPECT_THROW(edge_lower_bound_from_certificate(path, bad), SpecError);  // crossing 1 < 4

  PartitionCertificate good{Rational(1), {1}, {}};
  good.witnessed.emplace(1, Partition{{0, 4}, {2}});
  EXPECT_EQ(edge_lower_bound_from_certificate(path, good), 1);
}

TEST(ExpectedBound, Examples) {
  EXPECT_EQ(expected_edge_lower_bound(Rational(100), 1, 16, Rational(1)), Rational(100));
  EXPECT_EQ(expected_edge_lower_bound(Rational(100), 4, 4, Rational(1)), Rational(0));
  EXPECT_EQ(expected_edge_lower_bound(Rational(51), 1, 64, Rational(3, 5)), Rational(459, 10));
  EXPECT_EQ(expected_edge_lower_bound(Rational(100), 16, 17, Rational(1)), Rational(0));
  EXPECT_THROW(expected_edge_lower_bound(Rational(1), 5, 4, Rational(1)), SpecError);
  EXPECT_THROW(expected_edge_lower_bound(Rational(1), 1, 4, Rational(3, 2)), SpecError);
}

TEST(Certify, EmptyGraphHasNoWitnesses) {
  auto cert = certify(graph(10, {}), Rational(2), 16);
  EXPECT_TRUE(cert.witnessed.empty());
  EXPECT_EQ(cert.queried, (std::vector<std::size_t>{1, 4, 16}));
  EXPECT_EQ(edge_lower_bound_from_certificate(graph(10, {}), cert), 0);
}

TEST(Certify, LinearScanBlocksWitnessKOne) {
  for (std::size_t k : {1u, 2u, 4u}) {
    auto [y, layout] = write_read_blocks(64, k, 32, 5);
    auto run = run_sequence(EngineKind::LinearScan, {1, 64, 32}, y, 0, RecordMode::AddressesOnly);
    auto g = build_access_graph(adversary_view(run.server));
    auto cert = certify(g, Rational(64, 5), 4);
    EXPECT_TRUE(cert.witnessed.contains(1));
    EXPECT_LE(edge_lower_bound_from_certificate(g, cert), static_cast<std::int64_t>(g.edge_count()));
  }
}

// For every witnessed set K of powers of 4, the certified bound never
// exceeds the edge count, and finer partitions have at least k - k' parts
// whose crossing edges avoid a coarser partition's.
TEST(Certify, BoundAndDisjointnessProperties) {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 16 + rng() % 200;
    auto g = random_graph(rng, n);
    const Rational ell(static_cast<std::int64_t>(1 + rng() % 32));
    auto cert = certify(g, ell, 64);
    EXPECT_LE(edge_lower_bound_from_certificate(g, cert), static_cast<std::int64_t>(g.edge_count()));
    for (const auto& [kf, pf] : cert.witnessed) {
      for (const auto& [kc, pc] : cert.witnessed) {
        if (kc >= kf) continue;
        EXPECT_GE(disjoint_part_count(g, pf, pc), kf - kc);
      }
    }
  }
}

}  // namespace
