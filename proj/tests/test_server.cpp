#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oramlab/server.hpp"

using namespace oramlab;

namespace {

TEST(Server, ReadAfterWrite) {
  Server s(8);
  EXPECT_EQ(s.probe(OpKind::Write, 5, 0xAB), 0u);
  EXPECT_EQ(s.probe(OpKind::Read, 5, 0), 0xABu);
}

TEST(Server, UninitializedReadIsZero) {
  Server s(8);
  EXPECT_EQ(s.probe(OpKind::Read, 7, 0), 0u);
}

TEST(Server, AddressRange) {
  Server s(8);
  EXPECT_NO_THROW(s.probe(OpKind::Write, 256, 1));
  EXPECT_THROW(s.probe(OpKind::Write, 257, 1), ModelViolation);
  EXPECT_THROW(s.probe(OpKind::Read, 0, 0), ModelViolation);
  EXPECT_THROW(s.probe(OpKind::Write, 3, 0x100), ModelViolation);
}

TEST(Server, AdversaryViewProjectsAddresses) {
  Server s(16);
  EXPECT_TRUE(adversary_view(s).empty());
  s.probe(OpKind::Write, 3, 1);
  s.probe(OpKind::Write, 9, 2);
  s.probe(OpKind::Read, 3, 0);
  EXPECT_EQ(adversary_view(s).addrs, (std::vector<Address>{3, 9, 3}));

  Server t(16);
  t.probe(OpKind::Write, 5, 0);
  t.probe(OpKind::Read, 5, 0);
  EXPECT_EQ(adversary_view(t).addrs, (std::vector<Address>{5, 5}));
}

TEST(Server, LogRecordsTimestampsAndOps) {
  Server s(16);
  s.set_op_index(0);
  s.probe(OpKind::Write, 2, 7);
  s.set_op_index(1);
  s.probe(OpKind::Read, 2, 0);
  s.probe(OpKind::Read, 4, 0);
  ASSERT_EQ(s.log().size(), 3u);
  EXPECT_EQ(s.log()[0], (ProbeRecord{0, OpKind::Write, 2, 7, 0}));
  EXPECT_EQ(s.log()[1], (ProbeRecord{1, OpKind::Read, 2, 7, 1}));
  EXPECT_EQ(s.log()[2], (ProbeRecord{2, OpKind::Read, 4, 0, 1}));
}

TEST(Server, AddressesOnlyModeKeepsView) {
  Server s(16, RecordMode::AddressesOnly);
  s.probe(OpKind::Write, 2, 7);
  s.probe(OpKind::Read, 2, 0);
  EXPECT_TRUE(s.log().empty());
  EXPECT_EQ(adversary_view(s).addrs, (std::vector<Address>{2, 2}));
}

// Random probe streams against a map reference; the per-op probe counts
// sum to N.
TEST(Server, RandomReadAfterWriteProperty) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 50; ++round) {
    Server s(12);
    std::map<Address, Word> ref;
    std::map<std::size_t, std::size_t> per_op;
    for (std::size_t i = 0; i < 200; ++i) {
      const std::size_t op = i / 3;
      s.set_op_index(op);
      ++per_op[op];
      const Address a = 1 + rng() % 20;
      if (rng() & 1) {
        const Word d = rng() & 0xfff;
        s.probe(OpKind::Write, a, d);
        ref[a] = d;
      } else {
        EXPECT_EQ(s.probe(OpKind::Read, a, 0), ref.contains(a) ? ref[a] : 0);
      }
    }
    std::size_t total = 0;
    for (auto [_, c] : per_op) total += c;
    EXPECT_EQ(total, adversary_view(s).size());
    for (std::size_t t = 0; t < s.log().size(); ++t) EXPECT_EQ(s.log()[t].t, t);
  }
}

}  // namespace
