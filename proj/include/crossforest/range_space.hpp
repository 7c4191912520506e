#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossforest/edges.hpp"
#include "crossforest/geometry.hpp"
#include "crossforest/membership.hpp"

namespace crossforest {

/// One side of a partition of the ground set. Stored on the side that excludes index 0,
/// so a partition and its complement share one representation.
struct Range {
  Membership members;
  std::optional<Hyperplane> rep;
};

/// A ground set of size n plus explicit ranges. Geometric spaces keep their points and a
/// representative hyperplane per range; abstract spaces carry only bitsets.
class RangeSpace {
 public:
  RangeSpace() = default;
  RangeSpace(Index ground_size, std::vector<Range> ranges, std::optional<PointSet> points = {});

  Index ground_size() const { return ground_size_; }
  const std::vector<Range>& ranges() const { return ranges_; }
  Index size() const { return static_cast<Index>(ranges_.size()); }
  bool is_geometric() const { return points_.has_value(); }
  const PointSet& points() const;

  /// Edge positions (in all_pairs order) crossing each range.
  std::vector<std::vector<Index>> crossing_pairs() const;

  /// One bitset per line, hex encoded.
  std::string dump_hex() const;

 private:
  Index ground_size_ = 0;
  std::vector<Range> ranges_;
  std::optional<PointSet> points_;
};

/// Every distinct nontrivial partition of P cut out by a hyperplane avoiding P, each with
/// a witnessing hyperplane.
RangeSpace canonical_ranges(const PointSet& points);

/// Normalizes the given index sets: canonical orientation, duplicates and trivial sets dropped.
RangeSpace explicit_ranges(Index ground_size, const std::vector<std::vector<Index>>& sets);

/// max over ranges of the number of edges with exactly one endpoint inside.
Index crossing_number(std::span<const Edge> edges, const RangeSpace& space);
inline Index crossing_number(const EdgeSet& edges, const RangeSpace& space) {
  return crossing_number(std::span<const Edge>(edges.edges), space);
}

/// Number of edges crossing one range.
Index crossing_count(std::span<const Edge> edges, const Membership& range);

/// Induced set system on the subset (sorted ascending); local index k is subset[k].
/// Geometric spaces are rebuilt from the sub-point set.
RangeSpace restrict_to(const RangeSpace& space, std::span<const Index> subset);

}  // namespace crossforest
