#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "oramlab/core.hpp"
#include "oramlab/rational.hpp"

namespace oramlab {

// CLI workload strings: `alt:n=<N>` and `blocks:n=<N>,k=<K>,seed=<S>`
// (seed defaults to 0).
struct WorkloadSpec {
  enum class Family { Alternating, Blocks };

  Family family = Family::Alternating;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct Workload {
  InputSequence ops;
  std::optional<BlockLayout> layout;
};

inline WorkloadSpec parse_workload(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw SpecError("workload spec needs '<family>:...': " + std::string(text));
  auto family = text.substr(0, colon);
  std::map<std::string, std::string, std::less<>> params;
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw SpecError("expected key=value in workload spec: " + std::string(item));
    auto [it, inserted] = params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (!inserted) throw SpecError("duplicate key in workload spec: " + it->first);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  auto take = [&](std::string_view key) -> std::int64_t {
    auto it = params.find(key);
    if (it == params.end()) throw SpecError("workload spec missing '" + std::string(key) + "'");
    auto v = detail::parse_int(it->second, key);
    params.erase(it);
    if (v < 0) throw SpecError("negative '" + std::string(key) + "' in workload spec");
    return v;
  };

  WorkloadSpec spec;
  if (family == "alt") {
    spec.family = WorkloadSpec::Family::Alternating;
    spec.n = static_cast<std::size_t>(take("n"));
  } else if (family == "blocks") {
    spec.family = WorkloadSpec::Family::Blocks;
    spec.n = static_cast<std::size_t>(take("n"));
    spec.k = static_cast<std::size_t>(take("k"));
    spec.seed = params.contains("seed") ? static_cast<std::uint64_t>(take("seed")) : 0;
  } else {
    throw SpecError("unknown workload family '" + std::string(family) + "'");
  }
  if (!params.empty()) throw SpecError("unexpected key '" + params.begin()->first + "' in workload spec");
  return spec;
}

inline std::string to_string(const WorkloadSpec& spec) {
  if (spec.family == WorkloadSpec::Family::Alternating) return "alt:n=" + std::to_string(spec.n);
  return "blocks:n=" + std::to_string(spec.n) + ",k=" + std::to_string(spec.k) + ",seed=" + std::to_string(spec.seed);
}

inline Workload materialize(const WorkloadSpec& spec, unsigned word_bits) {
  if (spec.family == WorkloadSpec::Family::Alternating) return {alternating_workload(spec.n), std::nullopt};
  auto [ops, layout] = write_read_blocks(spec.n, spec.k, word_bits, spec.seed);
  return {std::move(ops), std::move(layout)};
}

}  // namespace oramlab
