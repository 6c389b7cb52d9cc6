#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oramlab/core.hpp"
#include "oramlab/error.hpp"
#include "oramlab/server.hpp"

namespace oramlab {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Ordered graph on probe timestamps 0..N-1 with an edge (i, j) whenever
// probe j is the next probe after i to hit the same address. Every vertex
// has in- and outdegree at most one, so the edge set is stored as successor
// and predecessor arrays; edges() lists it in source order.
class AccessGraph {
 public:
  AccessGraph() = default;

  // Builds from an explicit edge list; rejects edges that are not forward or
  // that break the degree bounds.
  static AccessGraph from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
    AccessGraph g(vertex_count);
    for (const auto& e : edges) {
      if (e.from >= e.to || e.to >= vertex_count) {
        throw SpecError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ") is not ordered");
      }
      if (g.succ_[e.from] != kNoVertex || g.pred_[e.to] != kNoVertex) {
        throw SpecError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ") breaks degree bound");
      }
      g.succ_[e.from] = e.to;
      g.pred_[e.to] = e.from;
      ++g.edge_count_;
    }
    return g;
  }

  std::size_t vertex_count() const { return succ_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  Vertex succ(std::size_t v) const { return succ_[v]; }
  Vertex pred(std::size_t v) const { return pred_[v]; }
  std::span<const Vertex> successors() const { return succ_; }
  std::span<const Vertex> predecessors() const { return pred_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t v = 0; v < succ_.size(); ++v) {
      if (succ_[v] != kNoVertex) out.push_back({static_cast<Vertex>(v), succ_[v]});
    }
    return out;
  }

  friend bool operator==(const AccessGraph&, const AccessGraph&) = default;

 private:
  explicit AccessGraph(std::size_t n) {
    if (n >= kNoVertex) throw ModelViolation("access sequence too long for 32-bit vertex ids");
    succ_.assign(n, kNoVertex);
    pred_.assign(n, kNoVertex);
  }

  friend AccessGraph build_access_graph(std::span<const Address>);

  std::vector<Vertex> succ_;
  std::vector<Vertex> pred_;
  std::size_t edge_count_ = 0;
};

inline AccessGraph build_access_graph(std::span<const Address> addrs) {
  AccessGraph g(addrs.size());
  std::unordered_map<Address, Vertex> last_seen;
  for (std::size_t j = 0; j < addrs.size(); ++j) {
    auto [it, inserted] = last_seen.try_emplace(addrs[j], static_cast<Vertex>(j));
    if (!inserted) {
      g.succ_[it->second] = static_cast<Vertex>(j);
      g.pred_[j] = it->second;
      it->second = static_cast<Vertex>(j);
      ++g.edge_count_;
    }
  }
  return g;
}

inline AccessGraph build_access_graph(const AccessSequence& a) { return build_access_graph(std::span(a.addrs)); }

// |E({a..m-1}, {m..b-1})|: edges leaving [a, m) and landing in [m, b).
inline std::size_t crossing_edge_count(const AccessGraph& g, std::size_t a, std::size_t m, std::size_t b) {
  if (!(a <= m && m <= b && b <= g.vertex_count())) {
    throw SpecError("crossing_edge_count needs a <= m <= b <= N, got (" + std::to_string(a) + "," +
                    std::to_string(m) + "," + std::to_string(b) + ") with N=" + std::to_string(g.vertex_count()));
  }
  std::size_t count = 0;
  for (std::size_t u = a; u < m; ++u) {
    const Vertex v = g.succ(u);
    if (v != kNoVertex && v >= m && v < b) ++count;
  }
  return count;
}

inline void write_edge_list(std::ostream& out, const AccessGraph& g) {
  out << "# N=" << g.vertex_count() << " E=" << g.edge_count() << "\n";
  for (const auto& e : g.edges()) out << e.from << " " << e.to << "\n";
}

inline void write_dot(std::ostream& out, const AccessGraph& g) {
  out << "digraph access {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const auto& e : g.edges()) out << "  " << e.from << " -> " << e.to << ";\n";
  out << "}\n";
}

}  // namespace oramlab
