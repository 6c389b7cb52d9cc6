#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "oramlab/core.hpp"
#include "oramlab/error.hpp"

namespace oramlab {

struct ProbeRecord {
  std::uint64_t t = 0;
  OpKind kind = OpKind::Read;
  Address addr = 0;
  Word data = 0;              // payload written, or value returned by a read
  std::size_t op_index = 0;   // ground truth; never part of the adversary's view

  friend bool operator==(const ProbeRecord&, const ProbeRecord&) = default;
};

// The adversary's entire view: server addresses in probe order.
struct AccessSequence {
  std::vector<Address> addrs;

  std::size_t size() const { return addrs.size(); }
  bool empty() const { return addrs.empty(); }

  friend bool operator==(const AccessSequence&, const AccessSequence&) = default;
};

// Full keeps every ProbeRecord; AddressesOnly keeps the address projection,
// which is all the analyses need and 5x smaller on multi-million probe runs.
enum class RecordMode { Full, AddressesOnly };

// Array Maintenance server with parameters (2^w, w): sparse cells, exact
// read-after-write semantics, and an append-only probe log.
class Server {
 public:
  explicit Server(unsigned word_bits, RecordMode mode = RecordMode::Full)
      : word_bits_(word_bits), mask_(word_mask(word_bits)), mode_(mode) {
    if (word_bits < 1 || word_bits > 64) throw ModelViolation("cell width w must be in [1, 64]");
    max_addr_ = word_bits >= 64 ? ~Address{0} : Address{1} << word_bits;
  }

  // Writes return 0^w; reads return the last value written, 0^w if none.
  Word probe(OpKind kind, Address addr, Word data) {
    if (addr < 1 || addr > max_addr_) {
      throw ModelViolation("server address " + std::to_string(addr) + " outside [1, 2^" +
                           std::to_string(word_bits_) + "]");
    }
    if ((data & ~mask_) != 0) throw ModelViolation("probe data wider than w bits");
    Word result = 0;
    if (kind == OpKind::Write) {
      cells_[addr] = data;
    } else if (auto it = cells_.find(addr); it != cells_.end()) {
      result = it->second;
    }
    if (mode_ == RecordMode::Full) {
      log_.push_back({addrs_.size(), kind, addr, kind == OpKind::Write ? data : result, op_index_});
    }
    addrs_.push_back(addr);
    return result;
  }

  // Attributes subsequent probes to input operation `i`.
  void set_op_index(std::size_t i) { op_index_ = i; }
  std::size_t op_index() const { return op_index_; }

  // Stores a value without probing; used to seed a replica of another
  // party's server state.
  void install(Address addr, Word data) { cells_[addr] = data & mask_; }

  Word peek(Address addr) const {
    auto it = cells_.find(addr);
    return it == cells_.end() ? 0 : it->second;
  }

  std::size_t probe_count() const { return addrs_.size(); }
  std::size_t cell_count() const { return cells_.size(); }
  unsigned word_bits() const { return word_bits_; }
  RecordMode mode() const { return mode_; }

  // Empty in AddressesOnly mode.
  const std::vector<ProbeRecord>& log() const { return log_; }
  std::span<const Address> addresses() const { return addrs_; }

  void reserve(std::size_t probes) {
    addrs_.reserve(probes);
    if (mode_ == RecordMode::Full) log_.reserve(probes);
  }

  AccessSequence take_view() && { return AccessSequence{std::move(addrs_)}; }

 private:
  unsigned word_bits_;
  Word mask_;
  Address max_addr_ = 0;
  RecordMode mode_;
  std::size_t op_index_ = 0;
  std::unordered_map<Address, Word> cells_;
  std::vector<Address> addrs_;
  std::vector<ProbeRecord> log_;
};

inline AccessSequence adversary_view(const Server& server) {
  auto addrs = server.addresses();
  return AccessSequence{{addrs.begin(), addrs.end()}};
}

}  // namespace oramlab
