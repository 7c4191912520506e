#include "crossforest/edges.hpp"

#include <numeric>
#include <stdexcept>

namespace crossforest {

namespace {

struct DisjointSets {
  std::vector<Index> parent;

  explicit DisjointSets(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }

  Index find(Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  // The lower index becomes the root, so roots are component minima.
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

std::vector<Index> component_roots(Index n, const std::vector<Edge>& edges) {
  DisjointSets sets(n);
  for (const auto& e : edges) {
    if (e.first < 0 || e.second >= n || e.first == e.second)
      throw std::out_of_range("edge endpoint outside the ground set");
    sets.unite(e.first, e.second);
  }
  std::vector<Index> roots(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = sets.find(i);
  return roots;
}

Index count_components(Index n, const std::vector<Edge>& edges) {
  const auto roots = component_roots(n, edges);
  Index c = 0;
  for (Index i = 0; i < n; ++i)
    if (roots[static_cast<std::size_t>(i)] == i) ++c;
  return c;
}

}  // namespace crossforest
