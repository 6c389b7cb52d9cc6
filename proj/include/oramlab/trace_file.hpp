#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oramlab/error.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

inline constexpr std::string_view kTraceFormat = "oramlab-trace/1";

struct TraceHeader {
  std::size_t n = 0;
  std::uint64_t internal_cells = 1;
  std::uint64_t address_range = 1;
  unsigned word_bits = 32;
  std::string engine;
  std::string workload;
  std::uint64_t seed = 0;
  std::size_t probes = 0;  // N

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

// Op boundary annotation: op `op_index` issued its first probe at position
// `probe` of the body. Debug only; analyses read addrs and nothing else.
struct OpBoundary {
  std::size_t op_index = 0;
  std::size_t probe = 0;

  friend bool operator==(const OpBoundary&, const OpBoundary&) = default;
};

struct TraceFile {
  TraceHeader header;
  std::vector<Address> addrs;
  std::vector<OpBoundary> boundaries;

  AccessSequence view() const { return AccessSequence{addrs}; }

  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

// Line-oriented text: `#key=value` header lines in fixed order, then one
// decimal address per line, with optional `#op <index>` lines before the
// first probe of each op.
inline void write_trace(std::ostream& out, const TraceFile& trace) {
  const auto& h = trace.header;
  out << "#format=" << kTraceFormat << "\n"
      << "#n=" << h.n << "\n"
      << "#m=" << h.internal_cells << "\n"
      << "#M=" << h.address_range << "\n"
      << "#w=" << h.word_bits << "\n"
      << "#engine=" << h.engine << "\n"
      << "#workload=" << h.workload << "\n"
      << "#seed=" << h.seed << "\n"
      << "#N=" << h.probes << "\n";
  std::size_t next = 0;
  for (std::size_t t = 0; t <= trace.addrs.size(); ++t) {
    while (next < trace.boundaries.size() && trace.boundaries[next].probe == t) {
      out << "#op " << trace.boundaries[next].op_index << "\n";
      ++next;
    }
    if (t < trace.addrs.size()) out << trace.addrs[t] << "\n";
  }
}

namespace detail {
template <class T>
T parse_trace_number(std::string_view s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw IoError("trace line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}
}  // namespace detail

inline TraceFile read_trace(std::istream& in) {
  static constexpr std::string_view kKeys[] = {"format", "n", "m", "M", "w", "engine", "workload", "seed", "N"};
  TraceFile trace;
  auto& h = trace.header;
  std::string line;
  std::size_t lineno = 0;
  std::size_t header_fields = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    if (header_fields < std::size(kKeys)) {
      const auto key = kKeys[header_fields];
      if (s.size() < key.size() + 2 || s[0] != '#' || s.substr(1, key.size()) != key || s[key.size() + 1] != '=') {
        throw IoError("trace line " + std::to_string(lineno) + ": expected header '#" + std::string(key) + "='");
      }
      const auto value = s.substr(key.size() + 2);
      switch (header_fields) {
        case 0:
          if (value != kTraceFormat) throw IoError("unsupported trace format '" + std::string(value) + "'");
          break;
        case 1: h.n = detail::parse_trace_number<std::size_t>(value, lineno); break;
        case 2: h.internal_cells = detail::parse_trace_number<std::uint64_t>(value, lineno); break;
        case 3: h.address_range = detail::parse_trace_number<std::uint64_t>(value, lineno); break;
        case 4: h.word_bits = detail::parse_trace_number<unsigned>(value, lineno); break;
        case 5: h.engine = std::string(value); break;
        case 6: h.workload = std::string(value); break;
        case 7: h.seed = detail::parse_trace_number<std::uint64_t>(value, lineno); break;
        case 8: h.probes = detail::parse_trace_number<std::size_t>(value, lineno); break;
      }
      ++header_fields;
      continue;
    }
    if (s.starts_with("#op ")) {
      trace.boundaries.push_back({detail::parse_trace_number<std::size_t>(s.substr(4), lineno), trace.addrs.size()});
      continue;
    }
    trace.addrs.push_back(detail::parse_trace_number<Address>(s, lineno));
  }
  if (header_fields < std::size(kKeys)) throw IoError("trace header truncated");
  if (trace.addrs.size() != h.probes) {
    throw IoError("trace body has " + std::to_string(trace.addrs.size()) + " probes but header says N=" +
                  std::to_string(h.probes));
  }
  return trace;
}

inline TraceFile load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace '" + path + "'");
  return read_trace(in);
}

inline void save_trace(const std::string& path, const TraceFile& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace '" + path + "'");
  write_trace(out, trace);
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline std::string trace_to_string(const TraceFile& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

}  // namespace oramlab
