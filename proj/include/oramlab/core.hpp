#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oramlab/error.hpp"

namespace oramlab {

using Word = std::uint64_t;     // one w-bit cell, w <= 64, high bits zero
using Address = std::uint64_t;  // 1-based, logical or server-side

enum class OpKind : std::uint8_t { Write, Read };

inline char to_char(OpKind k) { return k == OpKind::Write ? 'W' : 'R'; }

inline Word word_mask(unsigned bits) {
  return bits >= 64 ? std::numeric_limits<Word>::max() : (Word{1} << bits) - 1;
}

// Model parameters of an online ORAM: m cells of w bits of client memory over
// a logical address range [1, M]. Correctness is perfect (p_fail = 0).
struct OramConfig {
  std::uint64_t internal_cells = 1;  // m
  std::uint64_t address_range = 1;   // M
  unsigned word_bits = 32;           // w

  static constexpr double failure_probability = 0.0;

  Word mask() const { return word_mask(word_bits); }

  // Largest server address, 2^w (saturated at 2^64 - 1 for w = 64).
  Address max_server_address() const {
    return word_bits >= 64 ? std::numeric_limits<Address>::max() : Address{1} << word_bits;
  }

  void validate() const {
    if (word_bits < 1 || word_bits > 64) {
      throw ModelViolation("cell width w must be in [1, 64], got " + std::to_string(word_bits));
    }
    if (internal_cells < 1) throw ModelViolation("internal memory m must be at least 1");
    if (address_range < 1) throw ModelViolation("address range M must be at least 1");
    if (address_range > max_server_address()) {
      throw ModelViolation("address range M=" + std::to_string(address_range) +
                           " exceeds 2^w for w=" + std::to_string(word_bits));
    }
  }

  // Workload-binding constraints m <= sqrt(n) and n <= M.
  void bind(std::size_t n) const {
    validate();
    if (internal_cells > n / internal_cells) {
      throw ModelViolation("internal memory m=" + std::to_string(internal_cells) +
                           " exceeds sqrt(n) for n=" + std::to_string(n));
    }
    if (n > address_range) {
      throw ModelViolation("workload length n=" + std::to_string(n) + " exceeds address range M=" +
                           std::to_string(address_range));
    }
  }
};

struct InputOp {
  OpKind kind = OpKind::Read;
  Address addr = 1;
  Word data = 0;

  friend bool operator==(const InputOp&, const InputOp&) = default;
};

struct InputSequence {
  std::vector<InputOp> ops;

  std::size_t size() const { return ops.size(); }
  bool empty() const { return ops.empty(); }
  const InputOp& operator[](std::size_t i) const { return ops[i]; }

  void validate(const OramConfig& config) const {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& op = ops[i];
      if (op.addr < 1 || op.addr > config.address_range) {
        throw ModelViolation("op " + std::to_string(i) + ": address " + std::to_string(op.addr) +
                             " outside [1, " + std::to_string(config.address_range) + "]");
      }
      if ((op.data & ~config.mask()) != 0) {
        throw ModelViolation("op " + std::to_string(i) + ": data wider than w bits");
      }
    }
  }

  friend bool operator==(const InputSequence&, const InputSequence&) = default;
};

// Half-open index range into an InputSequence.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return begin <= i && i < end; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Positions of the write blocks W_i and read blocks R_i inside a
// write/read block workload, ordered W_1 R_1 W_2 R_2 ... and followed by
// alternating padding from pad_start on.
struct BlockLayout {
  std::size_t k = 0;
  std::size_t block_len = 0;
  std::vector<IndexRange> write_ranges;
  std::vector<IndexRange> read_ranges;
  std::size_t pad_start = 0;

  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

// SplitMix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream = 0) {
  return mix64(mix64(base ^ mix64(stream)) + index);
}

// [(W,1,0^w),(R,1,0^w)]^(n/2)
inline InputSequence alternating_workload(std::size_t n) {
  if (n % 2 != 0) throw SpecError("odd length " + std::to_string(n) + ": alternating workload needs even n");
  InputSequence y;
  y.ops.reserve(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    y.ops.push_back({OpKind::Write, 1, 0});
    y.ops.push_back({OpKind::Read, 1, 0});
  }
  return y;
}

inline BlockLayout block_layout(std::size_t n, std::size_t k) {
  if (n % 2 != 0) throw SpecError("odd length " + std::to_string(n) + ": block workload needs even n");
  if (k < 1 || k > n / 2) {
    throw SpecError("block count k=" + std::to_string(k) + " outside [1, " + std::to_string(n / 2) + "]");
  }
  BlockLayout layout;
  layout.k = k;
  layout.block_len = n / (2 * k);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    layout.write_ranges.push_back({pos, pos + layout.block_len});
    pos += layout.block_len;
    layout.read_ranges.push_back({pos, pos + layout.block_len});
    pos += layout.block_len;
  }
  layout.pad_start = pos;
  return layout;
}

// One sample of the k-block write/read workload: W_i writes fresh uniform
// w-bit words to 1..l, R_i reads 1..l back, l = floor(n/2k); the tail is
// padded with (W,1,0^w),(R,1,0^w) pairs up to length n.
inline std::pair<InputSequence, BlockLayout> write_read_blocks(std::size_t n, std::size_t k, unsigned word_bits,
                                                               std::uint64_t seed) {
  auto layout = block_layout(n, k);
  std::mt19937_64 rng(seed);
  const Word mask = word_mask(word_bits);
  InputSequence y;
  y.ops.reserve(n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 1; j <= layout.block_len; ++j) y.ops.push_back({OpKind::Write, j, rng() & mask});
    for (std::size_t j = 1; j <= layout.block_len; ++j) y.ops.push_back({OpKind::Read, j, 0});
  }
  while (y.ops.size() < n) {
    y.ops.push_back({OpKind::Write, 1, 0});
    y.ops.push_back({OpKind::Read, 1, 0});
  }
  return {std::move(y), std::move(layout)};
}

// Replaces the data of write block `block` (1-based) with `data`.
inline InputSequence with_block_data(InputSequence y, const BlockLayout& layout, std::size_t block,
                                     const std::vector<Word>& data) {
  if (block < 1 || block > layout.k) throw SpecError("block index " + std::to_string(block) + " out of range");
  const auto& range = layout.write_ranges[block - 1];
  if (data.size() != range.size()) throw SpecError("block data has wrong length");
  for (std::size_t j = 0; j < range.size(); ++j) y.ops[range.begin + j].data = data[j];
  return y;
}

}  // namespace oramlab
