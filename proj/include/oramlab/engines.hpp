#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "oramlab/core.hpp"
#include "oramlab/error.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

enum class EngineKind { Passthrough, LinearScan, TreeOram, DummyLengthEncoder, DummyLengthLeaker };

inline std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Passthrough: return "passthrough";
    case EngineKind::LinearScan: return "linear-scan";
    case EngineKind::TreeOram: return "tree";
    case EngineKind::DummyLengthEncoder: return "dummy-encoder";
    case EngineKind::DummyLengthLeaker: return "dummy-leaker";
  }
  return "?";
}

inline EngineKind parse_engine(std::string_view name) {
  for (auto kind : {EngineKind::Passthrough, EngineKind::LinearScan, EngineKind::TreeOram,
                    EngineKind::DummyLengthEncoder, EngineKind::DummyLengthLeaker}) {
    if (to_string(kind) == name) return kind;
  }
  throw SpecError("unknown engine '" + std::string(name) +
                  "' (expected passthrough | linear-scan | tree | dummy-encoder | dummy-leaker)");
}

// Declared departures from the model constraints, surfaced in reports.
inline std::vector<std::string> engine_deviations(EngineKind kind) {
  if (kind == EngineKind::TreeOram) {
    return {"tree: position map and slot tags held in client memory (exceeds m <= sqrt(n) cells)"};
  }
  return {};
}

// Executes every op as a single probe. Leaks everything.
class PassthroughEngine {
 public:
  explicit PassthroughEngine(const OramConfig&) {}

  Word step(Server& server, const InputOp& op) {
    Word v = server.probe(op.kind, op.addr, op.kind == OpKind::Write ? op.data : 0);
    return op.kind == OpKind::Read ? v : 0;
  }
  void finish(Server&) {}
};

// Reads and rewrites every cell 1..M for each op. The address trace depends
// only on (n, M).
class LinearScanEngine {
 public:
  explicit LinearScanEngine(const OramConfig& config) : range_(config.address_range) {}

  Word step(Server& server, const InputOp& op) {
    Word answer = 0;
    for (Address j = 1; j <= range_; ++j) {
      Word v = server.probe(OpKind::Read, j, 0);
      if (j == op.addr) {
        if (op.kind == OpKind::Write) {
          v = op.data;
        } else {
          answer = v;
        }
      }
      server.probe(OpKind::Write, j, v);
    }
    return answer;
  }
  void finish(Server&) {}

 private:
  Address range_;
};

// Non-recursive Path-ORAM-style engine: complete binary tree with
// 2^ceil(log2 M) leaves and buckets of Z slots, one server cell per slot.
// Every access reads one root-to-leaf path and writes it back.
class TreeOramEngine {
 public:
  static constexpr std::size_t kBucketSlots = 4;
  static constexpr std::size_t kStashLimit = 64;

  TreeOramEngine(const OramConfig& config, std::uint64_t seed) : rng_(seed) {
    while ((std::uint64_t{1} << levels_) < config.address_range) ++levels_;
    leaves_ = std::uint64_t{1} << levels_;
    const std::uint64_t buckets = 2 * leaves_ - 1;
    if (buckets * kBucketSlots > config.max_server_address()) {
      throw ModelViolation("tree with " + std::to_string(buckets) + " buckets does not fit in 2^w server cells");
    }
    slot_tags_.assign(buckets * kBucketSlots, 0);
    position_.resize(config.address_range + 1);
    std::uniform_int_distribution<std::uint64_t> leaf(0, leaves_ - 1);
    for (std::size_t a = 1; a < position_.size(); ++a) position_[a] = leaf(rng_);
  }

  Word step(Server& server, const InputOp& op) {
    const std::uint64_t leaf = position_[op.addr];
    position_[op.addr] = std::uniform_int_distribution<std::uint64_t>(0, leaves_ - 1)(rng_);

    for (unsigned depth = 0; depth <= levels_; ++depth) {
      const std::uint64_t bucket = bucket_on_path(leaf, depth);
      for (std::size_t s = 0; s < kBucketSlots; ++s) {
        const std::size_t slot = bucket * kBucketSlots + s;
        Word v = server.probe(OpKind::Read, slot_address(slot), 0);
        if (slot_tags_[slot] != 0) {
          stash_.emplace_back(slot_tags_[slot], v);
          slot_tags_[slot] = 0;
        }
      }
    }

    auto it = std::find_if(stash_.begin(), stash_.end(), [&](const auto& e) { return e.first == op.addr; });
    Word answer = it == stash_.end() ? 0 : it->second;
    if (op.kind == OpKind::Write) {
      if (it == stash_.end()) {
        stash_.emplace_back(op.addr, op.data);
      } else {
        it->second = op.data;
      }
    }

    // Fill deepest buckets first, then issue the writes root to leaf.
    std::vector<std::array<std::optional<std::pair<Address, Word>>, kBucketSlots>> fill(levels_ + 1);
    for (unsigned depth = levels_ + 1; depth-- > 0;) {
      std::size_t used = 0;
      for (auto e = stash_.begin(); e != stash_.end() && used < kBucketSlots;) {
        if (bucket_on_path(position_[e->first], depth) == bucket_on_path(leaf, depth)) {
          fill[depth][used++] = *e;
          e = stash_.erase(e);
        } else {
          ++e;
        }
      }
    }
    for (unsigned depth = 0; depth <= levels_; ++depth) {
      const std::uint64_t bucket = bucket_on_path(leaf, depth);
      for (std::size_t s = 0; s < kBucketSlots; ++s) {
        const std::size_t slot = bucket * kBucketSlots + s;
        const auto& entry = fill[depth][s];
        server.probe(OpKind::Write, slot_address(slot), entry ? entry->second : 0);
        slot_tags_[slot] = entry ? entry->first : 0;
      }
    }

    max_stash_ = std::max(max_stash_, stash_.size());
    if (stash_.size() > kStashLimit) {
      throw ModelViolation("tree stash overflow: " + std::to_string(stash_.size()) + " blocks > " +
                           std::to_string(kStashLimit));
    }
    return op.kind == OpKind::Read ? answer : 0;
  }
  void finish(Server&) {}

  unsigned levels() const { return levels_; }
  std::size_t probes_per_op() const { return 2 * kBucketSlots * (levels_ + 1); }
  std::size_t stash_size() const { return stash_.size(); }
  std::size_t max_stash() const { return max_stash_; }

 private:
  // Heap-ordered bucket index (root = 0) of the depth-`depth` node on the
  // path to `leaf`.
  std::uint64_t bucket_on_path(std::uint64_t leaf, unsigned depth) const {
    return ((leaves_ + leaf) >> (levels_ - depth)) - 1;
  }
  static Address slot_address(std::size_t slot) { return slot + 1; }

  unsigned levels_ = 0;
  std::uint64_t leaves_ = 1;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> position_;
  std::vector<Address> slot_tags_;
  std::vector<std::pair<Address, Word>> stash_;
  std::size_t max_stash_ = 0;
};

// Executes each op followed by a read of address 1. Alongside the input it
// streams a uniform random sequence r and, once the input ends, performs one
// extra read iff r is lexicographically smaller than y. The length
// distribution thus encodes y while every op costs exactly two probes.
class DummyLengthEncoderEngine {
 public:
  enum class Order { Equal, Less, Greater };  // r compared with y so far

  DummyLengthEncoderEngine(const OramConfig& config, std::uint64_t seed)
      : range_(config.address_range), mask_(config.mask()), rng_(seed) {}

  Word step(Server& server, const InputOp& op) { return step_with_sample(server, op, draw_sample()); }

  Word step_with_sample(Server& server, const InputOp& op, const InputOp& sample) {
    Word v = server.probe(op.kind, op.addr, op.kind == OpKind::Write ? op.data : 0);
    server.probe(OpKind::Read, 1, 0);
    if (order_ == Order::Equal) {
      auto key = [](const InputOp& o) { return std::tuple(o.kind, o.addr, o.data); };
      if (key(sample) < key(op)) {
        order_ = Order::Less;
      } else if (key(op) < key(sample)) {
        order_ = Order::Greater;
      }
    }
    return op.kind == OpKind::Read ? v : 0;
  }

  void finish(Server& server) {
    if (finished_) return;
    finished_ = true;
    if (order_ == Order::Less) server.probe(OpKind::Read, 1, 0);
  }

  // Uniform over {W,R} x [M] x {0,1}^w; W orders before R.
  InputOp draw_sample() {
    InputOp r;
    r.kind = std::uniform_int_distribution<int>(0, 1)(rng_) == 0 ? OpKind::Write : OpKind::Read;
    r.addr = std::uniform_int_distribution<Address>(1, range_)(rng_);
    r.data = rng_() & mask_;
    return r;
  }

  Order order() const { return order_; }

 private:
  Address range_;
  Word mask_;
  std::mt19937_64 rng_;
  Order order_ = Order::Equal;
  bool finished_ = false;
};

// Picks i in [n] and r in [M] up front. Ops before i get two extra reads of
// address 1, op i gets two if r <= a_i and one otherwise, later ops none.
// Hence Pr[|A| = n + 2i] = a_i / (nM).
class DummyLengthLeakerEngine {
 public:
  DummyLengthLeakerEngine(const OramConfig& config, std::size_t n, std::uint64_t seed) : n_(n) {
    if (n < 1) throw SpecError("dummy-leaker needs n >= 1");
    std::mt19937_64 rng(seed);
    pivot_ = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    threshold_ = std::uniform_int_distribution<Address>(1, config.address_range)(rng);
  }

  DummyLengthLeakerEngine(std::size_t n, std::size_t pivot, Address threshold)
      : n_(n), pivot_(pivot), threshold_(threshold) {
    if (pivot < 1 || pivot > n) throw SpecError("pivot outside [1, n]");
  }

  Word step(Server& server, const InputOp& op) {
    if (++steps_ > n_) throw ModelViolation("dummy-leaker received more than n=" + std::to_string(n_) + " ops");
    Word v = server.probe(op.kind, op.addr, op.kind == OpKind::Write ? op.data : 0);
    std::size_t extra = 0;
    if (steps_ < pivot_) {
      extra = 2;
    } else if (steps_ == pivot_) {
      extra = threshold_ <= op.addr ? 2 : 1;
    }
    for (std::size_t e = 0; e < extra; ++e) server.probe(OpKind::Read, 1, 0);
    return op.kind == OpKind::Read ? v : 0;
  }
  void finish(Server&) {}

  std::size_t pivot() const { return pivot_; }
  Address threshold() const { return threshold_; }

 private:
  std::size_t n_;
  std::size_t pivot_ = 1;
  Address threshold_ = 1;
  std::size_t steps_ = 0;
};

// Value-semantic engine handle. Copying an Engine snapshots its entire
// client state, including the random source.
class Engine {
 public:
  using Impl = std::variant<PassthroughEngine, LinearScanEngine, TreeOramEngine, DummyLengthEncoderEngine,
                            DummyLengthLeakerEngine>;

  static Engine create(EngineKind kind, const OramConfig& config, std::uint64_t seed,
                       std::optional<std::size_t> n = std::nullopt) {
    switch (kind) {
      case EngineKind::Passthrough: return Engine(kind, PassthroughEngine(config));
      case EngineKind::LinearScan: return Engine(kind, LinearScanEngine(config));
      case EngineKind::TreeOram: return Engine(kind, TreeOramEngine(config, seed));
      case EngineKind::DummyLengthEncoder: return Engine(kind, DummyLengthEncoderEngine(config, seed));
      case EngineKind::DummyLengthLeaker:
        if (!n) throw SpecError("dummy-leaker needs the workload length n in advance");
        return Engine(kind, DummyLengthLeakerEngine(config, *n, seed));
    }
    throw SpecError("unknown engine kind");
  }

  Engine(EngineKind kind, Impl impl) : kind_(kind), impl_(std::move(impl)) {}

  Word step(Server& server, const InputOp& op) {
    return std::visit([&](auto& e) { return e.step(server, op); }, impl_);
  }
  void finish(Server& server) {
    std::visit([&](auto& e) { e.finish(server); }, impl_);
  }

  EngineKind kind() const { return kind_; }

  template <class T>
  T* get_if() { return std::get_if<T>(&impl_); }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&impl_); }

 private:
  EngineKind kind_;
  Impl impl_;
};

// One engine driving one server, op by op.
class Simulation {
 public:
  Simulation(Engine engine, unsigned word_bits, RecordMode mode = RecordMode::Full)
      : engine_(std::move(engine)), server_(word_bits, mode) {}

  Simulation(EngineKind kind, const OramConfig& config, std::uint64_t seed, std::size_t n,
             RecordMode mode = RecordMode::Full)
      : Simulation(Engine::create(kind, config, seed, n), config.word_bits, mode) {}

  Simulation(Engine engine, Server server) : engine_(std::move(engine)), server_(std::move(server)) {}

  Word step(const InputOp& op, std::size_t index) {
    server_.set_op_index(index);
    return engine_.step(server_, op);
  }

  // Steps y[range); appends Read answers to `read_answers` when given.
  void run(const InputSequence& y, IndexRange range, std::vector<Word>* read_answers = nullptr) {
    for (std::size_t i = range.begin; i < range.end; ++i) {
      Word v = step(y[i], i);
      if (read_answers && y[i].kind == OpKind::Read) read_answers->push_back(v);
    }
  }

  void finish(std::size_t last_index) {
    server_.set_op_index(last_index);
    engine_.finish(server_);
  }

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  Server& server() { return server_; }
  const Server& server() const { return server_; }

 private:
  Engine engine_;
  Server server_;
};

struct RunResult {
  std::vector<Word> answers;  // Read answers, in input order
  Server server;
};

inline std::size_t expected_probe_hint(EngineKind kind, const OramConfig& config, std::size_t n) {
  switch (kind) {
    case EngineKind::LinearScan: return 2 * config.address_range * n;
    case EngineKind::DummyLengthEncoder: return 2 * n + 1;
    case EngineKind::DummyLengthLeaker: return 3 * n;
    default: return n;
  }
}

// Fresh engine and server; steps every op of y, then lets the engine finish.
inline RunResult run_sequence(EngineKind kind, const OramConfig& config, const InputSequence& y, std::uint64_t seed,
                              RecordMode mode = RecordMode::Full) {
  config.bind(y.size());
  y.validate(config);
  Simulation sim(kind, config, seed, y.size(), mode);
  sim.server().reserve(expected_probe_hint(kind, config, y.size()));
  std::vector<Word> answers;
  sim.run(y, {0, y.size()}, &answers);
  sim.finish(y.empty() ? 0 : y.size() - 1);
  return {std::move(answers), std::move(sim.server())};
}

}  // namespace oramlab
