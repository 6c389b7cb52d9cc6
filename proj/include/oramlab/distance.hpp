#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oramlab/error.hpp"
#include "oramlab/rational.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

// Explicit finite distribution: outcome -> probability.
template <class Outcome>
using Distribution = std::map<Outcome, Rational>;

struct ExactDistance {
  Rational half_l1;    // (1/2) sum_s |Pr[X=s] - Pr[Y=s]|
  Rational one_sided;  // Pr[X in S_X] - Pr[Y in S_X], S_X = {s : Pr[X=s] > Pr[Y=s]}
};

template <class Outcome>
void check_normalized(const Distribution<Outcome>& d) {
  Rational total(0);
  for (const auto& [_, p] : d) {
    if (p < Rational(0)) throw SpecError("negative probability in distribution");
    total += p;
  }
  if (total != Rational(1)) throw SpecError("distribution sums to " + to_string(total) + ", not 1");
}

template <class Outcome>
ExactDistance statistical_distance_exact(const Distribution<Outcome>& x, const Distribution<Outcome>& y) {
  check_normalized(x);
  check_normalized(y);
  std::set<Outcome> support;
  for (const auto& [s, _] : x) support.insert(s);
  for (const auto& [s, _] : y) support.insert(s);
  auto prob = [](const Distribution<Outcome>& d, const Outcome& s) {
    auto it = d.find(s);
    return it == d.end() ? Rational(0) : it->second;
  };
  Rational l1(0);
  Rational px_in_sx(0);
  Rational py_in_sx(0);
  for (const auto& s : support) {
    const Rational px = prob(x, s);
    const Rational py = prob(y, s);
    l1 += px > py ? px - py : py - px;
    if (px > py) {
      px_in_sx += px;
      py_in_sx += py;
    }
  }
  ExactDistance d{l1 / 2, px_in_sx - py_in_sx};
  if (d.half_l1 != d.one_sided) throw std::logic_error("half-L1 and one-sided distance disagree");
  return d;
}

// Trace digest for the plug-in estimator: (length, FNV-1a of the addresses).
struct TraceDigest {
  std::size_t length = 0;
  std::uint64_t hash = 0;

  friend auto operator<=>(const TraceDigest&, const TraceDigest&) = default;
};

inline TraceDigest digest(std::span<const Address> addrs) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Address a : addrs) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (a >> (8 * byte)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  return {addrs.size(), h};
}

inline TraceDigest digest(const AccessSequence& a) { return digest(std::span(a.addrs)); }

struct EmpiricalDistance {
  Rational estimate;  // total variation between the two empirical digest laws
  std::size_t samples_x = 0;
  std::size_t samples_y = 0;
};

// Plug-in estimate over digests. Digesting can only merge outcomes, so this
// never exceeds the plug-in distance of the raw traces; both are biased
// upward at small sample sizes.
inline EmpiricalDistance statistical_distance_empirical(std::span<const TraceDigest> xs,
                                                        std::span<const TraceDigest> ys) {
  if (xs.empty() || ys.empty()) throw SpecError("empirical distance needs non-empty sample sets");
  std::map<TraceDigest, std::pair<std::int64_t, std::int64_t>> counts;
  for (const auto& d : xs) ++counts[d].first;
  for (const auto& d : ys) ++counts[d].second;
  const auto nx = static_cast<std::int64_t>(xs.size());
  const auto ny = static_cast<std::int64_t>(ys.size());
  std::int64_t total = 0;
  for (const auto& [_, c] : counts) {
    const std::int64_t diff = c.first * ny - c.second * nx;
    total += diff < 0 ? -diff : diff;
  }
  return {Rational(total, 2 * nx * ny), xs.size(), ys.size()};
}

inline EmpiricalDistance statistical_distance_empirical(std::span<const AccessSequence> xs,
                                                        std::span<const AccessSequence> ys) {
  std::vector<TraceDigest> dx;
  std::vector<TraceDigest> dy;
  for (const auto& a : xs) dx.push_back(digest(a));
  for (const auto& a : ys) dy.push_back(digest(a));
  return statistical_distance_empirical(std::span<const TraceDigest>(dx), std::span<const TraceDigest>(dy));
}

}  // namespace oramlab
