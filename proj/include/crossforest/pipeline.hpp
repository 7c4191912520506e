#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "crossforest/rounding.hpp"

namespace crossforest {

struct SpanningTree {
  Index n = 0;
  std::vector<Edge> edges;  // sorted
  Index root = 0;
  std::vector<Index> parent;  // parent[root] == -1
};

struct LevelTrace {
  Index level = 0;
  std::vector<Index> points;  // surviving indices, ascending
  Rational t;
  EdgeSet edges;              // in original indices
  Index components = 0;
  Index crossing = 0;         // against the restricted range space
  Index retries = 0;
  double millis = 0;
};

enum class Mode { Randomized, DeterministicPlanar };
const char* to_string(Mode mode);

struct RunReport {
  Mode mode = Mode::Randomized;
  std::uint64_t seed = 0;
  std::vector<LevelTrace> levels;
  EdgeSet edges;  // union of the level edge sets
  Index total_crossing = 0;  // crossing number of the returned tree
  double millis = 0;
};

struct BuildResult {
  SpanningTree tree;
  RunReport report;
};

/// Per-level LP results keyed by (mode, surviving indices). The LPs at a level do not depend
/// on the seed, so repeated runs on one instance can share them. Thread-safe.
class LevelCache {
 public:
  struct Entry {
    Rational t;
    FractionalSolution solution;
  };
  std::optional<Entry> find(Mode mode, const std::vector<Index>& points) const;
  void store(Mode mode, const std::vector<Index>& points, Entry entry);

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<Mode, std::vector<Index>>, Entry> entries_;
};

/// Recursive driver: per level, restrict to the survivors, take the least feasible t,
/// solve, round, keep the lowest index of each component. Throws std::invalid_argument on
/// an empty ground set and DimensionMismatch for planar mode outside the plane.
BuildResult build_tree(const RangeSpace& space, Mode mode, std::uint64_t seed,
                       Index max_retries = kDefaultMaxRetries, LevelCache* cache = nullptr);

/// BFS tree from index 0, neighbors in ascending order. Throws AlgorithmFailure when the
/// edges do not connect the ground set.
SpanningTree extract_spanning_tree(Index n, const EdgeSet& edges);

/// Walks the doubled tree from the lowest index of `subset` (children ascending) and keeps
/// first visits of subset members. Returns the cycle order. Throws AlgorithmFailure if the
/// cycle's crossing number exceeds twice the tree's.
std::vector<Index> euler_shortcut(const SpanningTree& tree, std::span<const Index> subset, const RangeSpace& space);

/// Distinct edges of a closed walk (a 2-cycle is one edge, a 1-cycle none).
std::vector<Edge> cycle_edges(std::span<const Index> cycle);

/// Upper bound on the number of levels: ceil(log_{20/19} n) + 1.
Index max_levels(Index n);

}  // namespace crossforest
