// oramlab: trace generation, access-graph analysis and adversarial
// experiments against simulated ORAM engines.
//
// Exit codes: 0 success, 1 usage, 2 model violation, 3 I/O.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oramlab/commands.hpp"

namespace {

using namespace oramlab;

void add_model_flags(CLI::App* app, cli::ModelFlags& model) {
  app->add_option("--m", model.internal_cells, "client memory cells m")->capture_default_str();
  app->add_option("--M", model.address_range, "logical address range M (default: n)");
  app->add_option("--w", model.word_bits, "cell width w in bits")->capture_default_str();
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("ORAMLAB_SEED");
  if (!s || !*s) return std::nullopt;
  auto v = detail::parse_int(s, "ORAMLAB_SEED");
  if (v < 0) throw SpecError("ORAMLAB_SEED must be non-negative");
  return static_cast<std::uint64_t>(v);
}

int run(int argc, char** argv) {
  CLI::App app{"oramlab: online ORAM access-pattern laboratory"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;

  cli::TraceOptions trace_opt;
  std::string trace_out = "-";
  auto* trace = app.add_subcommand("trace", "simulate an engine on a workload and write its trace");
  trace->add_option("--engine", trace_opt.engine, "passthrough | linear-scan | tree | dummy-encoder | dummy-leaker")
      ->required();
  trace->add_option("--workload", trace_opt.workload, "alt:n=<N> | blocks:n=<N>,k=<K>,seed=<S>")->required();
  trace->add_option("--seed", seed, "engine seed");
  trace->add_option("--n", trace_opt.n, "workload length (required by dummy-leaker)");
  trace->add_option("--out,-o", trace_out, "output path, '-' for stdout");
  trace->add_flag("--with-boundaries", trace_opt.with_boundaries, "annotate op boundaries as '#op' comment lines");
  add_model_flags(trace, trace_opt.model);

  cli::AnalyzeOptions analyze_opt;
  auto* analyze = app.add_subcommand("analyze", "certify dense partitions of a trace's access graph");
  analyze->add_option("trace", analyze_opt.trace_path, "trace file")->required();
  analyze->add_option("--ell", analyze_opt.ell, "density base ell, e.g. 64/5 (default: floor(n/5))");
  analyze->add_option("--k-max", analyze_opt.k_max, "largest k tested (default: floor(n/(10(m+2log n+11))))");
  analyze->add_flag("--json", analyze_opt.json, "emit the full JSON report instead of CSV");

  cli::ReportOptions report_opt;
  auto* report = app.add_subcommand("report", "simulate and analyze in one step; JSON report");
  report->add_option("--engine", report_opt.run.engine)->required();
  report->add_option("--workload", report_opt.run.workload)->required();
  report->add_option("--seed", seed);
  report->add_option("--n", report_opt.run.n);
  report->add_option("--ell", report_opt.ell);
  report->add_option("--k-max", report_opt.k_max);
  add_model_flags(report, report_opt.run.model);

  cli::DistinguishOptions dist_opt;
  auto* dist = app.add_subcommand("distinguish", "estimate the dense-partition distinguisher's advantage");
  dist->add_option("--engine", dist_opt.engine)->required();
  dist->add_option("--y", dist_opt.y, "workload spec of y")->required();
  dist->add_option("--yprime", dist_opt.y_prime, "block workload spec of y'")->required();
  dist->add_option("--trials", dist_opt.trials)->capture_default_str();
  dist->add_option("--seed", seed);
  dist->add_option("--jobs,-j", dist_opt.jobs)->capture_default_str();
  add_model_flags(dist, dist_opt.model);

  cli::FrequencyOptions freq_opt;
  auto* freq = app.add_subcommand("frequency", "fraction of block-workload runs with an (n/5k)-dense k-partition");
  freq->add_option("--engine", freq_opt.engine)->required();
  freq->add_option("--n", freq_opt.n)->required();
  freq->add_option("--k", freq_opt.k)->required();
  freq->add_option("--trials", freq_opt.trials)->capture_default_str();
  freq->add_option("--seed", seed);
  freq->add_option("--jobs,-j", freq_opt.jobs)->capture_default_str();
  freq->add_flag("--alternating-control", freq_opt.alternating_control,
                 "run the alternating workload instead (debug control)");
  add_model_flags(freq, freq_opt.model);

  cli::CodecOptions codec_opt;
  auto* codec = app.add_subcommand("codec", "run the information-transfer encoder/decoder on one block");
  codec->add_option("--engine", codec_opt.engine)->required();
  codec->add_option("--n", codec_opt.n)->required();
  codec->add_option("--k", codec_opt.k)->required();
  codec->add_option("--i", codec_opt.block, "1-based block index")->required();
  codec->add_option("--seed", seed);
  codec->add_flag("--checksum", codec_opt.checksum, "attach a debug checksum of the block");
  add_model_flags(codec, codec_opt.model);

  cli::GraphExportOptions graph_opt;
  auto* graph = app.add_subcommand("graph-export", "export a trace's access graph");
  graph->add_option("trace", graph_opt.trace_path)->required();
  graph->add_option("--format", graph_opt.format, "edges | dot")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (!seed) seed = env_seed();

  if (trace->parsed()) {
    trace_opt.seed = seed;
    cli::cmd_trace(trace_opt, trace_out, std::cout);
  } else if (analyze->parsed()) {
    cli::cmd_analyze(analyze_opt, std::cout);
  } else if (report->parsed()) {
    report_opt.run.seed = seed;
    cli::cmd_report(report_opt, std::cout);
  } else if (dist->parsed()) {
    dist_opt.seed = seed;
    cli::cmd_distinguish(dist_opt, std::cout);
  } else if (freq->parsed()) {
    freq_opt.seed = seed;
    cli::cmd_frequency(freq_opt, std::cout);
  } else if (codec->parsed()) {
    codec_opt.seed = seed;
    cli::cmd_codec(codec_opt, std::cout);
  } else if (graph->parsed()) {
    cli::cmd_graph_export(graph_opt, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const oramlab::SpecError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const oramlab::ModelViolation& e) {
    std::cerr << "model violation: " << e.what() << "\n";
    return 2;
  } catch (const oramlab::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
