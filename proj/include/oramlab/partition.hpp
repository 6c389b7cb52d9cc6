#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oramlab/error.hpp"
#include "oramlab/graph.hpp"
#include "oramlab/rational.hpp"

namespace oramlab {

// A k-partition 0 = b_0 <= m_0 <= b_1 <= ... <= m_{k-1} <= b_k = N.
// Part i spans [b_i, b_{i+1}) and is cut at m_i.
struct Partition {
  std::vector<std::size_t> bounds;  // b_0..b_k
  std::vector<std::size_t> splits;  // m_0..m_{k-1}

  std::size_t k() const { return splits.size(); }

  bool well_formed(std::size_t vertex_count) const {
    if (bounds.size() != splits.size() + 1 || splits.empty()) return false;
    if (bounds.front() != 0 || bounds.back() != vertex_count) return false;
    for (std::size_t i = 0; i < splits.size(); ++i) {
      if (!(bounds[i] <= splits[i] && splits[i] <= bounds[i + 1])) return false;
    }
    return true;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline bool verify_partition(const AccessGraph& g, const Partition& p, const Rational& ell) {
  if (!p.well_formed(g.vertex_count())) return false;
  for (std::size_t i = 0; i < p.k(); ++i) {
    auto count = crossing_edge_count(g, p.bounds[i], p.splits[i], p.bounds[i + 1]);
    if (!meets(static_cast<std::int64_t>(count), ell)) return false;
  }
  return true;
}

struct BestSplit {
  std::size_t split = 0;     // smallest maximizer
  std::size_t crossing = 0;  // max over m in [begin, end] of E(begin, m, end)
};

// Single sweep over the cut position; O(end - begin).
inline BestSplit best_split(const AccessGraph& g, std::size_t begin, std::size_t end) {
  BestSplit best{begin, 0};
  std::size_t count = 0;
  for (std::size_t m = begin; m < end; ++m) {
    // Moving the cut from m to m + 1 moves vertex m to the left side.
    const Vertex p = g.pred(m);
    if (p != kNoVertex && p >= begin) --count;
    const Vertex s = g.succ(m);
    if (s != kNoVertex && s < end) ++count;
    if (count > best.crossing) best = {m + 1, count};
  }
  return best;
}

// Tests for an ell-dense k-partition by closing parts left to right as early
// as possible. A part that is dense stays dense when it grows, so the
// earliest close leaves the longest suffix for the remaining parts. The
// smallest feasible end is located by galloping and bisection, which keeps
// the whole test within O(N log N) sweeps.
inline std::optional<Partition> greedy_dense_partition(const AccessGraph& g, std::size_t k, const Rational& ell) {
  if (k < 1) throw SpecError("partition needs k >= 1");
  const std::size_t n = g.vertex_count();
  Partition p;
  p.bounds.push_back(0);
  std::size_t begin = 0;
  auto feasible = [&](std::size_t end) {
    return meets(static_cast<std::int64_t>(best_split(g, begin, end).crossing), ell);
  };
  for (std::size_t part = 0; part + 1 < k; ++part) {
    std::size_t end = begin;
    if (!feasible(begin)) {
      std::size_t lo = begin;
      std::size_t step = 1;
      std::size_t hi = std::min(n, begin + step);
      while (!feasible(hi)) {
        if (hi == n) return std::nullopt;
        lo = hi;
        step *= 2;
        hi = std::min(n, begin + step);
      }
      while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      end = hi;
    }
    p.splits.push_back(best_split(g, begin, end).split);
    p.bounds.push_back(end);
    begin = end;
  }
  auto last = best_split(g, begin, n);
  if (!meets(static_cast<std::int64_t>(last.crossing), ell)) return std::nullopt;
  p.splits.push_back(last.split);
  p.bounds.push_back(n);
  return p;
}

// Exhaustive search over every monotone boundary sequence, with a full
// table of crossing counts. Failed (part, start) states are memoized; no
// assumption about which boundary to prefer is made.
class BruteForcePartitioner {
 public:
  static constexpr std::size_t kMaxVertices = 18;

  explicit BruteForcePartitioner(const AccessGraph& g) : n_(g.vertex_count()) {
    if (n_ > kMaxVertices) {
      throw SpecError("brute-force partition search limited to N <= " + std::to_string(kMaxVertices));
    }
    const std::size_t side = n_ + 1;
    table_.assign(side * side * side, 0);
    for (std::size_t a = 0; a <= n_; ++a) {
      for (std::size_t m = a; m <= n_; ++m) {
        for (std::size_t b = m; b <= n_; ++b) table_[index(a, m, b)] = crossing_edge_count(g, a, m, b);
      }
    }
  }

  std::optional<Partition> find(std::size_t k, const Rational& ell) const {
    if (k < 1) throw SpecError("partition needs k >= 1");
    std::vector<char> failed(k * (n_ + 1), 0);
    Partition p;
    p.bounds.push_back(0);
    if (!search(0, 0, k, ell, failed, p)) return std::nullopt;
    return p;
  }

 private:
  std::size_t index(std::size_t a, std::size_t m, std::size_t b) const {
    return (a * (n_ + 1) + m) * (n_ + 1) + b;
  }

  bool search(std::size_t part, std::size_t begin, std::size_t k, const Rational& ell, std::vector<char>& failed,
              Partition& p) const {
    if (failed[part * (n_ + 1) + begin]) return false;
    const bool last = part + 1 == k;
    for (std::size_t end = last ? n_ : begin; end <= n_; ++end) {
      for (std::size_t m = begin; m <= end; ++m) {
        if (!meets(static_cast<std::int64_t>(table_[index(begin, m, end)]), ell)) continue;
        p.splits.push_back(m);
        p.bounds.push_back(end);
        if (last || search(part + 1, end, k, ell, failed, p)) return true;
        p.splits.pop_back();
        p.bounds.pop_back();
      }
    }
    failed[part * (n_ + 1) + begin] = 1;
    return false;
  }

  std::size_t n_;
  std::vector<std::size_t> table_;
};

inline std::optional<Partition> brute_force_dense_partition(const AccessGraph& g, std::size_t k, const Rational& ell) {
  return BruteForcePartitioner(g).find(k, ell);
}

inline bool is_power_of_4(std::size_t k) {
  return k != 0 && (k & (k - 1)) == 0 && (k & 0x5555555555555555ULL) != 0;
}

inline std::int64_t floor_log4(std::uint64_t t) {
  if (t == 0) throw SpecError("log4 of zero");
  std::int64_t e = 0;
  while (t >= 4) {
    t /= 4;
    ++e;
  }
  return e;
}

inline std::int64_t ceil_log4(std::uint64_t s) {
  if (s == 0) throw SpecError("log4 of zero");
  std::int64_t e = 0;
  std::uint64_t p = 1;
  while (p < s) {
    p *= 4;
    ++e;
  }
  return e;
}

// Witnessed (ell/k)-dense k-partitions for k in K, a set of powers of 4.
struct PartitionCertificate {
  Rational base_ell;
  std::vector<std::size_t> queried;            // every k that was tested
  std::map<std::size_t, Partition> witnessed;  // the k that succeeded

  std::vector<std::size_t> keys() const {
    std::vector<std::size_t> out;
    for (const auto& [k, _] : witnessed) out.push_back(k);
    return out;
  }
};

inline PartitionCertificate certify(const AccessGraph& g, const Rational& ell, std::size_t k_max) {
  if (k_max < 1) throw SpecError("certify needs k_max >= 1");
  PartitionCertificate cert{ell, {}, {}};
  for (std::size_t k = 1; k <= k_max; k *= 4) {
    cert.queried.push_back(k);
    if (auto p = greedy_dense_partition(g, k, ell / static_cast<std::int64_t>(k))) cert.witnessed.emplace(k, *p);
    if (k > k_max / 4) break;
  }
  return cert;
}

// ceil(ell/2 * |K|): any graph carrying an (ell/k)-dense k-partition for
// every k in a set K of powers of 4 has at least this many edges.
inline std::int64_t edge_lower_bound(const PartitionCertificate& cert, std::size_t witness_count) {
  return ceil(cert.base_ell / 2 * static_cast<std::int64_t>(witness_count));
}

// Re-verifies every witness against g before reporting the bound.
inline std::int64_t edge_lower_bound_from_certificate(const AccessGraph& g, const PartitionCertificate& cert) {
  for (const auto& [k, p] : cert.witnessed) {
    if (!is_power_of_4(k)) throw SpecError("certificate key " + std::to_string(k) + " is not a power of 4");
    if (p.k() != k || !verify_partition(g, p, cert.base_ell / static_cast<std::int64_t>(k))) {
      throw SpecError("certificate witness for k=" + std::to_string(k) + " does not verify");
    }
  }
  return edge_lower_bound(cert, cert.witnessed.size());
}

// (p*ell/2) * (floor(log4 t) - ceil(log4 s)), clamped below at 0.
inline Rational expected_edge_lower_bound(const Rational& ell, std::uint64_t s, std::uint64_t t, const Rational& p) {
  if (s < 1 || s > t) throw SpecError("expected_edge_lower_bound needs 1 <= s <= t");
  if (p < Rational(0) || p > Rational(1)) throw SpecError("probability outside [0, 1]");
  const std::int64_t span = floor_log4(t) - ceil_log4(s);
  if (span <= 0) return Rational(0);
  return p * ell / 2 * span;
}

// Edge sources in E(b_i, m_i, b_{i+1}).
inline std::vector<Vertex> part_edges(const AccessGraph& g, const Partition& p, std::size_t i) {
  std::vector<Vertex> out;
  for (std::size_t u = p.bounds[i]; u < p.splits[i]; ++u) {
    Vertex v = g.succ(u);
    if (v != kNoVertex && v >= p.splits[i] && v < p.bounds[i + 1]) out.push_back(static_cast<Vertex>(u));
  }
  return out;
}

// Number of parts of `finer` whose crossing edges avoid every crossing edge
// of every part of `coarser`. At least finer.k() - coarser.k().
inline std::size_t disjoint_part_count(const AccessGraph& g, const Partition& finer, const Partition& coarser) {
  std::vector<char> used(g.vertex_count(), 0);
  for (std::size_t j = 0; j < coarser.k(); ++j) {
    for (Vertex u : part_edges(g, coarser, j)) used[u] = 1;
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < finer.k(); ++i) {
    auto edges = part_edges(g, finer, i);
    if (std::none_of(edges.begin(), edges.end(), [&](Vertex u) { return used[u] != 0; })) ++count;
  }
  return count;
}

}  // namespace oramlab
