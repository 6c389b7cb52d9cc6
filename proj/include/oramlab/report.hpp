#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oramlab/engines.hpp"
#include "oramlab/graph.hpp"
#include "oramlab/partition.hpp"
#include "oramlab/rational.hpp"

namespace oramlab {

struct KVerdict {
  std::size_t k = 0;
  Rational ell_over_k;
  bool found = false;
  std::int64_t bound_cumulative = 0;  // certified edge bound over witnesses with key <= k
};

struct ExperimentReport {
  std::string engine;
  std::string workload;
  std::size_t n = 0;
  std::size_t measured_probes = 0;
  std::size_t edges = 0;
  Rational ell;
  std::size_t k_max = 1;
  std::int64_t certified_edge_bound = 0;
  std::int64_t certified_probe_bound = 0;  // probes >= edges, so equal to the edge bound
  double overhead_ratio = 0;
  std::vector<KVerdict> verdicts;
  std::vector<std::string> deviations;
};

// Default density base floor(n/5).
inline Rational default_ell(std::size_t n) { return Rational(static_cast<std::int64_t>(n / 5)); }

// floor(n / (10(m + 2 log2 n + 11))), at least 1.
inline std::size_t default_k_max(std::size_t n, std::uint64_t internal_cells) {
  if (n < 2) return 1;
  const double denom = 10.0 * (static_cast<double>(internal_cells) + 2.0 * std::log2(static_cast<double>(n)) + 11.0);
  const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(n) / denom));
  return k < 1 ? 1 : k;
}

inline ExperimentReport analyze_trace(std::span<const Address> addrs, std::size_t n, const Rational& ell,
                                      std::size_t k_max, const std::string& engine, const std::string& workload) {
  const auto g = build_access_graph(addrs);
  const auto cert = certify(g, ell, k_max);
  ExperimentReport r;
  r.engine = engine;
  r.workload = workload;
  r.n = n;
  r.measured_probes = addrs.size();
  r.edges = g.edge_count();
  r.ell = ell;
  r.k_max = k_max;
  r.certified_edge_bound = edge_lower_bound_from_certificate(g, cert);
  r.certified_probe_bound = r.certified_edge_bound;
  r.overhead_ratio = n == 0 ? 0.0 : static_cast<double>(addrs.size()) / static_cast<double>(n);
  std::size_t found_so_far = 0;
  for (std::size_t k : cert.queried) {
    const bool found = cert.witnessed.contains(k);
    found_so_far += found;
    r.verdicts.push_back({k, ell / static_cast<std::int64_t>(k), found, edge_lower_bound(cert, found_so_far)});
  }
  try {
    r.deviations = engine_deviations(parse_engine(engine));
  } catch (const SpecError&) {
    r.deviations = {"unknown engine '" + engine + "'"};
  }
  if (r.certified_probe_bound > static_cast<std::int64_t>(r.measured_probes)) {
    throw std::logic_error("certified probe bound exceeds measured probes");
  }
  return r;
}

inline void write_verdicts_csv(std::ostream& out, const ExperimentReport& r) {
  out << "k,ell_over_k,found,bound_cumulative\n";
  for (const auto& v : r.verdicts) {
    out << v.k << "," << to_string(v.ell_over_k) << "," << (v.found ? 1 : 0) << "," << v.bound_cumulative << "\n";
  }
}

inline nlohmann::ordered_json to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["engine"] = r.engine;
  j["workload"] = r.workload;
  j["n"] = r.n;
  j["measured_probes"] = r.measured_probes;
  j["edges"] = r.edges;
  j["ell"] = to_string(r.ell);
  j["k_max"] = r.k_max;
  j["certified_edge_bound"] = r.certified_edge_bound;
  j["certified_probe_bound"] = r.certified_probe_bound;
  j["overhead_ratio"] = r.overhead_ratio;
  auto& rows = j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    rows.push_back({{"k", v.k},
                    {"ell_over_k", to_string(v.ell_over_k)},
                    {"found", v.found},
                    {"bound_cumulative", v.bound_cumulative}});
  }
  j["deviations"] = r.deviations;
  return j;
}

}  // namespace oramlab
