#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oramlab/core.hpp"
#include "oramlab/engines.hpp"
#include "oramlab/error.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

// Everything Alice and Bob share in advance: the engine, the workload with
// all data outside block `block` fixed, and the engine's random seed.
struct CodecContext {
  EngineKind kind = EngineKind::Passthrough;
  OramConfig config;
  InputSequence y_template;
  BlockLayout layout;
  std::size_t block = 1;  // 1-based
  std::uint64_t shared_seed = 0;

  const IndexRange& writes() const { return layout.write_ranges.at(block - 1); }
  const IndexRange& reads() const { return layout.read_ranges.at(block - 1); }

  void validate() const {
    if (block < 1 || block > layout.k) {
      throw SpecError("block index " + std::to_string(block) + " outside [1, " + std::to_string(layout.k) + "]");
    }
    config.bind(y_template.size());
    y_template.validate(config);
  }
};

// Alice's single message: the engine's client state right after W_i, plus
// (address, content) for every probe in R_i that reads a cell last written
// during W_i. Only the m*w bits of declared client memory and 2w bits per
// matched probe are charged.
struct TransferMessage {
  Engine client_state;
  std::vector<std::pair<Address, Word>> matched_probes;
  std::uint64_t internal_cells = 0;
  unsigned word_bits = 0;
  std::optional<std::uint64_t> checksum;  // debug aid, not charged

  std::uint64_t bit_length() const {
    return internal_cells * word_bits + 2 * static_cast<std::uint64_t>(word_bits) * matched_probes.size();
  }
};

inline std::uint64_t block_checksum(const std::vector<Word>& b) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Word v : b) h = mix64(h ^ v);
  return h;
}

inline TransferMessage alice_encode(const CodecContext& ctx, const std::vector<Word>& b, bool with_checksum = false) {
  ctx.validate();
  const auto y = with_block_data(ctx.y_template, ctx.layout, ctx.block, b);
  const auto& writes = ctx.writes();
  const auto& reads = ctx.reads();

  Simulation sim(ctx.kind, ctx.config, ctx.shared_seed, y.size(), RecordMode::Full);
  sim.run(y, {0, writes.begin});
  const std::size_t first_write_probe = sim.server().probe_count();
  sim.run(y, writes);
  Engine snapshot = sim.engine();
  sim.run(y, reads);

  TransferMessage msg{std::move(snapshot), {}, ctx.config.internal_cells, ctx.config.word_bits, std::nullopt};
  // Writes before W_i never qualify, so tracking can start at W_i.
  std::unordered_map<Address, std::size_t> last_writer;
  const auto& log = sim.server().log();
  for (std::size_t t = first_write_probe; t < log.size(); ++t) {
    const auto& rec = log[t];
    if (rec.kind == OpKind::Write) {
      last_writer[rec.addr] = rec.op_index;
    } else if (reads.contains(rec.op_index)) {
      auto it = last_writer.find(rec.addr);
      if (it != last_writer.end() && writes.contains(it->second)) msg.matched_probes.emplace_back(rec.addr, rec.data);
    }
  }
  if (with_checksum) msg.checksum = block_checksum(b);
  return msg;
}

// Bob runs the shared prefix up to W_i on his own, installs Alice's client
// state, serves the matched reads from her list and every other probe from
// his server copy. The answers to R_i are the transmitted block.
inline std::vector<Word> bob_decode(const TransferMessage& msg, const CodecContext& ctx) {
  ctx.validate();
  const auto& writes = ctx.writes();
  const auto& reads = ctx.reads();

  Simulation prefix(ctx.kind, ctx.config, ctx.shared_seed, ctx.y_template.size(), RecordMode::Full);
  prefix.run(ctx.y_template, {0, writes.begin});
  Server server = std::move(prefix.server());
  for (const auto& [addr, value] : msg.matched_probes) server.install(addr, value);

  Simulation replay(msg.client_state, std::move(server));
  const std::size_t first_read_probe = replay.server().probe_count();
  std::vector<Word> decoded;
  replay.run(ctx.y_template, reads, &decoded);

  // The list must reappear, in order, among the replay's reads of cells not
  // yet rewritten during R_i.
  std::size_t next = 0;
  std::unordered_map<Address, bool> rewritten;
  const auto& log = replay.server().log();
  for (std::size_t t = first_read_probe; t < log.size(); ++t) {
    const auto& rec = log[t];
    if (rec.kind == OpKind::Write) {
      rewritten[rec.addr] = true;
    } else if (next < msg.matched_probes.size() && !rewritten.contains(rec.addr) &&
               msg.matched_probes[next].first == rec.addr && msg.matched_probes[next].second == rec.data) {
      ++next;
    }
  }
  if (next != msg.matched_probes.size()) {
    throw DecodeError("replay diverged: " + std::to_string(msg.matched_probes.size() - next) +
                      " matched probes were never replayed");
  }
  if (msg.checksum && *msg.checksum != block_checksum(decoded)) throw DecodeError("decoded block fails checksum");
  return decoded;
}

// w*l - 2w*log2(n) - 10w: the least average message length any correct
// engine can achieve on uniform blocks, up to the slack of the counting
// argument.
inline double pigeonhole_floor(std::size_t n, std::size_t block_len, unsigned word_bits) {
  const double w = word_bits;
  return w * static_cast<double>(block_len) - 2 * w * std::log2(static_cast<double>(n)) - 10 * w;
}

}  // namespace oramlab
