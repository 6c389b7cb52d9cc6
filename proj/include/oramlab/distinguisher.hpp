#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>

#include "oramlab/core.hpp"
#include "oramlab/engines.hpp"
#include "oramlab/error.hpp"
#include "oramlab/graph.hpp"
#include "oramlab/parallel.hpp"
#include "oramlab/partition.hpp"
#include "oramlab/rational.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

struct BlockStructure {
  std::size_t k = 0;
  std::size_t block_len = 0;
};

// Recovers k from a sequence shaped like a write/read block workload:
// blocks W(1..l) R(1..l) from the start, l = floor(n/2k), then alternating
// (W,1,0^w),(R,1,0^w) padding. For l = 1 zero-data blocks look exactly like
// padding; the largest consistent k is taken.
inline BlockStructure parse_block_structure(const InputSequence& y) {
  const std::size_t n = y.size();
  if (n == 0 || n % 2 != 0) throw SpecError("sequence of length " + std::to_string(n) + " is not block-shaped");
  std::size_t len = 0;
  while (len < n && y[len].kind == OpKind::Write && y[len].addr == len + 1) ++len;
  if (len == 0) throw SpecError("sequence does not start with a write block");

  auto is_block = [&](std::size_t pos) {
    if (pos + 2 * len > n) return false;
    for (std::size_t j = 0; j < len; ++j) {
      const auto& w = y[pos + j];
      const auto& r = y[pos + len + j];
      if (w.kind != OpKind::Write || w.addr != j + 1) return false;
      if (r.kind != OpKind::Read || r.addr != j + 1 || r.data != 0) return false;
    }
    return true;
  };
  auto is_padding_from = [&](std::size_t pos) {
    if ((n - pos) % 2 != 0) return false;
    for (std::size_t i = pos; i < n; i += 2) {
      if (y[i] != InputOp{OpKind::Write, 1, 0} || y[i + 1] != InputOp{OpKind::Read, 1, 0}) return false;
    }
    return true;
  };

  std::size_t blocks = 0;
  while (is_block(blocks * 2 * len)) ++blocks;
  for (std::size_t k = blocks; k >= 1; --k) {
    if (n / (2 * k) == len && is_padding_from(2 * k * len)) return {k, len};
  }
  throw SpecError("sequence is not a write/read block workload");
}

enum class GuessReason { NoPartition, CoinFlip };

struct DistinguisherVerdict {
  int guess = 1;  // 1: trace came from y, 2: from y'
  GuessReason reason = GuessReason::NoPartition;
};

// Answers 1 when the trace has no (n/5k')-dense k'-partition, where k' is
// the block count of y'; otherwise flips a fair coin. Sees addresses only.
template <std::uniform_random_bit_generator Coin>
DistinguisherVerdict distinguish(const InputSequence& y, const InputSequence& y_prime, std::span<const Address> trace,
                                 Coin& coin) {
  if (y.size() != y_prime.size()) throw SpecError("distinguisher inputs differ in length");
  const std::size_t n = y.size();
  const auto k = parse_block_structure(y_prime).k;
  const Rational threshold(static_cast<std::int64_t>(n), static_cast<std::int64_t>(5 * k));
  const auto g = build_access_graph(trace);
  if (!greedy_dense_partition(g, k, threshold)) return {1, GuessReason::NoPartition};
  return {(coin() & 1) != 0 ? 1 : 2, GuessReason::CoinFlip};
}

template <std::uniform_random_bit_generator Coin>
DistinguisherVerdict distinguish(const InputSequence& y, const InputSequence& y_prime, const AccessSequence& trace,
                                 Coin& coin) {
  return distinguish(y, y_prime, std::span(trace.addrs), coin);
}

// Sees every trace an estimator generates, together with its access graph.
// Invoked from worker threads when jobs > 1.
using TraceObserver = std::function<void(std::span<const Address>, const AccessGraph&)>;

struct AdvantageEstimate {
  std::size_t trials = 0;
  double p1_on_y = 0;
  double p1_on_yprime = 0;
  double advantage = 0;
  double half_width = 0;  // 95% normal approximation, floored at 1/trials
};

inline double confidence_half_width(double p1, double p2, std::size_t trials) {
  const double t = static_cast<double>(trials);
  const double hw = 1.96 * std::sqrt(p1 * (1 - p1) / t + p2 * (1 - p2) / t);
  return std::max(hw, 1.0 / t);
}

// Trial t runs the engine on y and on y' with the same derived engine seed
// and the same coin seed (common random numbers), so an engine whose trace
// ignores its input scores an advantage of exactly zero.
inline AdvantageEstimate estimate_advantage(EngineKind kind, const OramConfig& config, const InputSequence& y,
                                            const InputSequence& y_prime, std::size_t trials, std::uint64_t seed,
                                            std::size_t jobs = 1, const TraceObserver& observe = {}) {
  if (trials < 1) throw SpecError("estimate_advantage needs at least one trial");
  if (y.size() != y_prime.size()) throw SpecError("distinguisher inputs differ in length");
  parse_block_structure(y_prime);
  struct Outcome {
    bool one_on_y = false;
    bool one_on_yprime = false;
  };
  auto outcomes = run_trials<Outcome>(trials, jobs, [&](std::size_t t) {
    const auto engine_seed = derive_seed(seed, t, 1);
    const auto coin_seed = derive_seed(seed, t, 2);
    auto verdict_on = [&](const InputSequence& z) {
      auto run = run_sequence(kind, config, z, engine_seed, RecordMode::AddressesOnly);
      if (observe) observe(run.server.addresses(), build_access_graph(run.server.addresses()));
      std::mt19937_64 coin(coin_seed);
      return distinguish(y, y_prime, run.server.addresses(), coin).guess == 1;
    };
    return Outcome{verdict_on(y), verdict_on(y_prime)};
  });
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  for (const auto& o : outcomes) {
    c1 += o.one_on_y;
    c2 += o.one_on_yprime;
  }
  AdvantageEstimate est;
  est.trials = trials;
  est.p1_on_y = static_cast<double>(c1) / static_cast<double>(trials);
  est.p1_on_yprime = static_cast<double>(c2) / static_cast<double>(trials);
  est.advantage = std::abs(est.p1_on_y - est.p1_on_yprime);
  est.half_width = confidence_half_width(est.p1_on_y, est.p1_on_yprime, trials);
  return est;
}

struct FrequencyEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double frequency = 0;
};

enum class FrequencyWorkload { Blocks, Alternating };

// Fraction of trials (fresh workload sample, fresh engine run) whose access
// graph has an (n/5k)-dense k-partition. FrequencyWorkload::Alternating swaps
// in the alternating sequence as a control.
inline FrequencyEstimate dense_partition_frequency(EngineKind kind, const OramConfig& config, std::size_t n,
                                                   std::size_t k, std::size_t trials, std::uint64_t seed,
                                                   std::size_t jobs = 1,
                                                   FrequencyWorkload workload = FrequencyWorkload::Blocks,
                                                   const TraceObserver& observe = {}) {
  if (trials < 1) throw SpecError("dense_partition_frequency needs at least one trial");
  block_layout(n, k);
  const Rational threshold(static_cast<std::int64_t>(n), static_cast<std::int64_t>(5 * k));
  auto hits = run_trials<char>(trials, jobs, [&](std::size_t t) -> char {
    InputSequence y = workload == FrequencyWorkload::Blocks
                          ? write_read_blocks(n, k, config.word_bits, derive_seed(seed, t, 3)).first
                          : alternating_workload(n);
    AccessSequence trace;
    {
      auto run = run_sequence(kind, config, y, derive_seed(seed, t, 1), RecordMode::AddressesOnly);
      trace = std::move(run.server).take_view();
    }
    const auto g = build_access_graph(trace);
    if (observe) observe(trace.addrs, g);
    trace = {};
    return greedy_dense_partition(g, k, threshold).has_value() ? 1 : 0;
  });
  FrequencyEstimate est;
  est.trials = trials;
  for (char h : hits) est.hits += static_cast<std::size_t>(h);
  est.frequency = static_cast<double>(est.hits) / static_cast<double>(trials);
  return est;
}

}  // namespace oramlab
