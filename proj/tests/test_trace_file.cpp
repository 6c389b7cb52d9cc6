#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oramlab/commands.hpp"
#include "oramlab/trace_file.hpp"

using namespace oramlab;

namespace {

TraceFile sample_trace(bool with_boundaries) {
  cli::TraceOptions opt;
  opt.engine = "dummy-encoder";
  opt.workload = "blocks:n=12,k=2,seed=3";
  opt.seed = 7;
  opt.with_boundaries = with_boundaries;
  return cli::make_trace(opt);
}

TEST(TraceFile, HeaderLayout) {
  auto t = sample_trace(false);
  auto text = trace_to_string(t);
  EXPECT_TRUE(text.starts_with("#format=oramlab-trace/1\n#n=12\n#m=1\n#M=12\n#w=32\n#engine=dummy-encoder\n"
                               "#workload=blocks:n=12,k=2,seed=3\n#seed=7\n#N="));
  EXPECT_EQ(t.header.probes, t.addrs.size());
  EXPECT_TRUE(t.addrs.size() == 24 || t.addrs.size() == 25);
}

TEST(TraceFile, RoundTripIsByteIdentical) {
  for (bool annotated : {false, true}) {
    auto t = sample_trace(annotated);
    auto text = trace_to_string(t);
    std::istringstream in(text);
    auto back = read_trace(in);
    EXPECT_EQ(back, t);
    EXPECT_EQ(trace_to_string(back), text);
  }
}

TEST(TraceFile, BoundariesDoNotChangeAddresses) {
  auto plain = sample_trace(false);
  auto annotated = sample_trace(true);
  EXPECT_EQ(plain.addrs, annotated.addrs);
  ASSERT_EQ(annotated.boundaries.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(annotated.boundaries[i], (OpBoundary{i, 2 * i}));
}

TEST(TraceFile, EmptyBody) {
  TraceFile t;
  t.header.engine = "passthrough";
  t.header.workload = "alt:n=0";
  std::istringstream in(trace_to_string(t));
  EXPECT_EQ(read_trace(in), t);
}

TEST(TraceFile, MalformedInputs) {
  const std::string good = trace_to_string(sample_trace(false));
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_trace(in);
  };
  EXPECT_NO_THROW(parse(good));
  EXPECT_THROW(parse(""), IoError);
  EXPECT_THROW(parse("#format=other/1\n"), IoError);
  std::string swapped = good;
  swapped.replace(swapped.find("#m="), 3, "#x=");
  EXPECT_THROW(parse(swapped), IoError);
  EXPECT_THROW(parse(good + "12\n"), IoError);           // N mismatch
  EXPECT_THROW(parse(good.substr(0, good.rfind('\n', good.size() - 2) + 1)), IoError);
  std::string garbage = good;
  garbage.replace(garbage.rfind('\n', garbage.size() - 2) + 1, std::string::npos, "1x\n");
  EXPECT_THROW(parse(garbage), IoError);
  EXPECT_THROW(load_trace("/nonexistent/trace.txt"), IoError);
}

TEST(Analyze, EmptyTraceHasZeroBound) {
  TraceFile t;
  t.header.engine = "passthrough";
  t.header.workload = "alt:n=0";
  auto r = cli::analyze(t, std::nullopt, std::nullopt);
  EXPECT_EQ(r.certified_edge_bound, 0);
  ASSERT_EQ(r.verdicts.size(), 1u);
  EXPECT_EQ(r.verdicts[0].bound_cumulative, 0);  // ell = 0 is met vacuously
}

TEST(Analyze, CsvColumns) {
  cli::TraceOptions opt;
  opt.engine = "linear-scan";
  opt.workload = "blocks:n=64,k=1,seed=2";
  auto r = cli::analyze(cli::make_trace(opt), std::string("64/5"), 4);
  std::ostringstream csv;
  write_verdicts_csv(csv, r);
  EXPECT_TRUE(csv.str().starts_with("k,ell_over_k,found,bound_cumulative\n1,64/5,1,7\n4,16/5,"));
  EXPECT_LE(r.certified_probe_bound, static_cast<std::int64_t>(r.measured_probes));
}

TEST(Analyze, DefaultParameters) {
  EXPECT_EQ(default_ell(1024), Rational(204));
  EXPECT_EQ(default_k_max(1024, 4), 2u);   // 1024 / (10 * 35)
  EXPECT_EQ(default_k_max(16384, 4), 38u);  // 16384 / (10 * 43)
  EXPECT_EQ(default_k_max(10, 1), 1u);
}

}  // namespace
