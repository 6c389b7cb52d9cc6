#pragma once

// Subcommand bodies of the oramlab CLI. Each takes a parsed option struct
// and an output stream and throws the oramlab error types on failure.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "oramlab/codec.hpp"
#include "oramlab/core.hpp"
#include "oramlab/distinguisher.hpp"
#include "oramlab/engines.hpp"
#include "oramlab/error.hpp"
#include "oramlab/graph.hpp"
#include "oramlab/rational.hpp"
#include "oramlab/report.hpp"
#include "oramlab/trace_file.hpp"
#include "oramlab/workload.hpp"

namespace oramlab::cli {

struct ModelFlags {
  std::uint64_t internal_cells = 1;           // --m
  std::optional<std::uint64_t> address_range; // --M, defaults to n
  unsigned word_bits = 32;                    // --w

  OramConfig config_for(std::size_t n) const {
    OramConfig c{internal_cells, address_range.value_or(n < 1 ? 1 : n), word_bits};
    c.validate();
    return c;
  }
};

inline bool is_randomized(EngineKind kind) {
  return kind == EngineKind::TreeOram || kind == EngineKind::DummyLengthEncoder ||
         kind == EngineKind::DummyLengthLeaker;
}

inline std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& command) {
  if (!seed) throw SpecError(command + " is randomized: pass --seed or set ORAMLAB_SEED");
  return *seed;
}

struct TraceOptions {
  std::string engine;
  std::string workload;
  ModelFlags model;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;  // required by dummy-leaker
  bool with_boundaries = false;
};

inline TraceFile make_trace(const TraceOptions& opt) {
  const auto kind = parse_engine(opt.engine);
  const auto spec = parse_workload(opt.workload);
  if (kind == EngineKind::DummyLengthLeaker) {
    if (!opt.n) throw SpecError("engine dummy-leaker needs --n (the workload length, fixed in advance)");
    if (*opt.n != spec.n) throw SpecError("--n does not match the workload length");
  }
  const std::uint64_t seed = is_randomized(kind) ? require_seed(opt.seed, "trace") : opt.seed.value_or(0);
  const auto config = opt.model.config_for(spec.n);
  const auto workload = materialize(spec, config.word_bits);
  const auto& y = workload.ops;
  config.bind(y.size());
  y.validate(config);

  Simulation sim(kind, config, seed, y.size(), RecordMode::AddressesOnly);
  TraceFile trace;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (opt.with_boundaries) trace.boundaries.push_back({i, sim.server().probe_count()});
    sim.step(y[i], i);
  }
  sim.finish(y.empty() ? 0 : y.size() - 1);
  trace.addrs.assign(sim.server().addresses().begin(), sim.server().addresses().end());
  trace.header = {y.size(), config.internal_cells, config.address_range, config.word_bits,
                  std::string(to_string(kind)), to_string(spec), seed, trace.addrs.size()};
  return trace;
}

inline void cmd_trace(const TraceOptions& opt, const std::string& out_path, std::ostream& out) {
  auto trace = make_trace(opt);
  if (out_path.empty() || out_path == "-") {
    write_trace(out, trace);
  } else {
    save_trace(out_path, trace);
  }
}

struct AnalyzeOptions {
  std::string trace_path;
  std::optional<std::string> ell;
  std::optional<std::size_t> k_max;
  bool json = false;
};

inline ExperimentReport analyze(const TraceFile& trace, const std::optional<std::string>& ell,
                                std::optional<std::size_t> k_max) {
  const auto& h = trace.header;
  const Rational base = ell ? parse_rational(*ell) : default_ell(h.n);
  const std::size_t kmax = k_max.value_or(default_k_max(h.n, h.internal_cells));
  if (kmax < 1) throw SpecError("--k-max must be at least 1");
  return analyze_trace(trace.addrs, h.n, base, kmax, h.engine, h.workload);
}

inline void cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  const auto report = analyze(load_trace(opt.trace_path), opt.ell, opt.k_max);
  if (opt.json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    write_verdicts_csv(out, report);
  }
}

struct ReportOptions {
  TraceOptions run;
  std::optional<std::string> ell;
  std::optional<std::size_t> k_max;
};

inline void cmd_report(const ReportOptions& opt, std::ostream& out) {
  const auto trace = make_trace(opt.run);
  out << to_json(analyze(trace, opt.ell, opt.k_max)).dump(2) << "\n";
}

struct DistinguishOptions {
  std::string engine;
  std::string y;
  std::string y_prime;
  ModelFlags model;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
};

inline void cmd_distinguish(const DistinguishOptions& opt, std::ostream& out) {
  const auto kind = parse_engine(opt.engine);
  const auto seed = require_seed(opt.seed, "distinguish");
  const auto ys = parse_workload(opt.y);
  const auto yps = parse_workload(opt.y_prime);
  if (ys.n != yps.n) throw SpecError("--y and --yprime must have equal length");
  const auto config = opt.model.config_for(ys.n);
  const auto y = materialize(ys, config.word_bits).ops;
  const auto y_prime = materialize(yps, config.word_bits).ops;
  const auto est = estimate_advantage(kind, config, y, y_prime, opt.trials, seed, opt.jobs);
  nlohmann::ordered_json j;
  j["p1_on_y"] = est.p1_on_y;
  j["p1_on_yprime"] = est.p1_on_yprime;
  j["advantage"] = est.advantage;
  j["half_width"] = est.half_width;
  j["trials"] = est.trials;
  out << j.dump(2) << "\n";
}

struct FrequencyOptions {
  std::string engine;
  std::size_t n = 0;
  std::size_t k = 1;
  ModelFlags model;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool alternating_control = false;
};

inline void cmd_frequency(const FrequencyOptions& opt, std::ostream& out) {
  const auto kind = parse_engine(opt.engine);
  const auto seed = require_seed(opt.seed, "frequency");
  const auto config = opt.model.config_for(opt.n);
  const auto est = dense_partition_frequency(
      kind, config, opt.n, opt.k, opt.trials, seed, opt.jobs,
      opt.alternating_control ? FrequencyWorkload::Alternating : FrequencyWorkload::Blocks);
  nlohmann::ordered_json j;
  j["engine"] = std::string(to_string(kind));
  j["n"] = opt.n;
  j["k"] = opt.k;
  j["threshold"] = to_string(Rational(static_cast<std::int64_t>(opt.n), static_cast<std::int64_t>(5 * opt.k)));
  j["workload"] = opt.alternating_control ? "alt" : "blocks";
  j["hits"] = est.hits;
  j["trials"] = est.trials;
  j["frequency"] = est.frequency;
  out << j.dump(2) << "\n";
}

struct CodecOptions {
  std::string engine;
  std::size_t n = 0;
  std::size_t k = 1;
  std::size_t block = 1;
  ModelFlags model;
  std::optional<std::uint64_t> seed;
  bool checksum = false;
};

inline void cmd_codec(const CodecOptions& opt, std::ostream& out) {
  const auto kind = parse_engine(opt.engine);
  const auto seed = require_seed(opt.seed, "codec");
  const auto config = opt.model.config_for(opt.n);
  auto [y, layout] = write_read_blocks(opt.n, opt.k, config.word_bits, derive_seed(seed, 0, 3));
  CodecContext ctx{kind, config, y, layout, opt.block, derive_seed(seed, 0, 4)};
  ctx.validate();
  std::vector<Word> b;
  for (std::size_t i = ctx.writes().begin; i < ctx.writes().end; ++i) b.push_back(y[i].data);

  const auto msg = alice_encode(ctx, b, opt.checksum);
  bool round_trip = false;
  std::string failure;
  try {
    round_trip = bob_decode(msg, ctx) == b;
  } catch (const DecodeError& e) {
    failure = e.what();
  }
  nlohmann::ordered_json j;
  j["engine"] = std::string(to_string(kind));
  j["n"] = opt.n;
  j["k"] = opt.k;
  j["block"] = opt.block;
  j["block_len"] = layout.block_len;
  j["matched_probes"] = msg.matched_probes.size();
  j["bit_length"] = msg.bit_length();
  j["payload_bits"] = static_cast<std::uint64_t>(layout.block_len) * config.word_bits;
  j["pigeonhole_floor"] = pigeonhole_floor(opt.n, layout.block_len, config.word_bits);
  j["round_trip"] = round_trip;
  if (!failure.empty()) j["error"] = failure;
  out << j.dump(2) << "\n";
}

struct GraphExportOptions {
  std::string trace_path;
  std::string format = "edges";  // edges | dot
};

inline void cmd_graph_export(const GraphExportOptions& opt, std::ostream& out) {
  const auto trace = load_trace(opt.trace_path);
  const auto g = build_access_graph(trace.addrs);
  if (opt.format == "dot") {
    write_dot(out, g);
  } else if (opt.format == "edges") {
    write_edge_list(out, g);
  } else {
    throw SpecError("unknown graph format '" + opt.format + "' (expected edges | dot)");
  }
}

}  // namespace oramlab::cli
