#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossforest/rational.hpp"

namespace crossforest {

/// Unordered pair, stored with first < second.
struct Edge {
  Index first = 0;
  Index second = 0;

  Edge() = default;
  Edge(Index a, Index b) : first(std::min(a, b)), second(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Position of edge (i,j), i<j, in lexicographic order over the complete graph on n vertices.
inline Index pair_index(Index n, Index i, Index j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

inline std::vector<Edge> all_pairs(Index n) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

enum class EdgeSource { Randomized, DeterministicPlanar, Explicit };

/// Sorted, duplicate-free set of edges over a ground set.
struct EdgeSet {
  std::vector<Edge> edges;
  EdgeSource source = EdgeSource::Explicit;
  std::optional<std::uint64_t> seed;

  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> e, EdgeSource src = EdgeSource::Explicit,
                   std::optional<std::uint64_t> s = std::nullopt)
      : edges(std::move(e)), source(src), seed(s) {
    normalize();
  }

  void normalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
};

inline const char* to_string(EdgeSource s) {
  switch (s) {
    case EdgeSource::Randomized: return "randomized";
    case EdgeSource::DeterministicPlanar: return "deterministic-planar";
    case EdgeSource::Explicit: return "explicit";
  }
  return "explicit";
}

/// Number of connected components of (0..n-1, edges).
Index count_components(Index n, const std::vector<Edge>& edges);

/// Component label per vertex; labels are the lowest vertex index of each component.
std::vector<Index> component_roots(Index n, const std::vector<Edge>& edges);

}  // namespace crossforest
