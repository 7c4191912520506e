#pragma once

#include <span>
#include <vector>

#include "crossforest/errors.hpp"
#include "crossforest/rational.hpp"

namespace crossforest {

struct Point {
  Index id = 0;
  RationalVector coords;

  Index dimension() const { return coords.size(); }
};

/// The hyperplane <normal, x> = offset.
struct Hyperplane {
  RationalVector normal;
  Rational offset;

  Index dimension() const { return normal.size(); }
};

/// Labeled points in R^2 or R^3 in general position (no three collinear in the plane,
/// no four coplanar in space). Construction rejects anything else.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points);

  /// Ids are array positions.
  static PointSet from_coordinates(std::vector<RationalVector> coords);

  Index size() const { return static_cast<Index>(points_.size()); }
  Index dimension() const { return dimension_; }
  bool empty() const { return points_.empty(); }

  const Point& operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return points_; }

  /// Points at the given positions, in the given order (ids are preserved).
  PointSet subset(std::span<const Index> positions) const;

 private:
  std::vector<Point> points_;
  Index dimension_ = 0;
};

/// Sign of <normal,p> - offset.
int side_of(const Hyperplane& h, const RationalVector& p);
inline int side_of(const Hyperplane& h, const Point& p) { return side_of(h, p.coords); }

/// True iff p and q lie strictly on opposite sides of h. Throws DegenerateInput when
/// either endpoint lies on h.
bool edge_crosses(const Hyperplane& h, const Point& p, const Point& q);

/// x + y/2 where x counts hyperplanes strictly separating p and q and y counts the
/// hyperplanes containing p or q.
Rational crossing_distance(std::span<const Hyperplane> lines, const RationalVector& p,
                           const RationalVector& q);

/// Number of distinct arrangement vertices of `lines` within crossing distance r of p.
/// Planar only.
Index crossing_disk_size(std::span<const Hyperplane> lines, const RationalVector& p,
                         const Rational& r);

/// Sign of the orientation determinant of d+1 points in R^d (d = 2 or 3).
int orientation(std::span<const RationalVector* const> simplex);
int orientation(const RationalVector& a, const RationalVector& b, const RationalVector& c);

/// Proper crossing of two planar segments: interiors meet in a single point that is not an
/// endpoint of either. Segments sharing an endpoint never cross.
bool segments_cross(const RationalVector& a0, const RationalVector& a1, const RationalVector& b0,
                    const RationalVector& b1);

/// Hyperplane through d affinely independent points of R^d.
Hyperplane hyperplane_through(std::span<const RationalVector* const> points);

/// Intersection point of two non-parallel lines in the plane.
RationalVector line_intersection(const Hyperplane& a, const Hyperplane& b);

/// Squared Euclidean distance.
Rational squared_distance(const RationalVector& p, const RationalVector& q);

/// True iff no d+1 of the points lie on a common hyperplane.
bool in_general_position(const std::vector<Point>& points);

/// Adds eps*i^1, eps^2*i^2, eps^3*i^3 to the coordinates of point i (eps = 2^-40).
/// Each coordinate gets a different power so lattice lines do not survive.
std::vector<RationalVector> symbolic_perturbation(std::vector<RationalVector> coords);

}  // namespace crossforest
