#include "crossforest/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace crossforest {

namespace {

void require_dimension(Index a, Index b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational det3(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
              const Rational& e, const Rational& f, const Rational& g, const Rational& h,
              const Rational& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) return;
  dimension_ = points_.front().dimension();
  if (dimension_ != 2 && dimension_ != 3)
    throw DimensionMismatch("points must live in R^2 or R^3");
  std::set<Index> ids;
  for (const auto& p : points_) {
    require_dimension(p.dimension(), dimension_, "point set");
    if (!ids.insert(p.id).second)
      throw std::invalid_argument("duplicate point id " + std::to_string(p.id));
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i].coords == points_[j].coords)
        throw DegenerateInput("points " + std::to_string(points_[i].id) + " and " +
                              std::to_string(points_[j].id) + " coincide");
  if (!in_general_position(points_))
    throw DegenerateInput(dimension_ == 2 ? "three or more points are collinear"
                                          : "four or more points are coplanar");
}

PointSet PointSet::from_coordinates(std::vector<RationalVector> coords) {
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    pts.push_back(Point{static_cast<Index>(i), std::move(coords[i])});
  return PointSet(std::move(pts));
}

PointSet PointSet::subset(std::span<const Index> positions) const {
  PointSet out;
  out.dimension_ = dimension_;
  out.points_.reserve(positions.size());
  for (Index i : positions) out.points_.push_back((*this)[i]);
  return out;
}

int side_of(const Hyperplane& h, const RationalVector& p) {
  require_dimension(h.dimension(), p.size(), "side_of");
  return sgn(Rational(dot(h.normal, p) - h.offset));
}

bool edge_crosses(const Hyperplane& h, const Point& p, const Point& q) {
  const int sp = side_of(h, p);
  const int sq = side_of(h, q);
  if (sp == 0 || sq == 0)
    throw DegenerateInput("edge endpoint lies on the hyperplane");
  return sp * sq < 0;
}

Rational crossing_distance(std::span<const Hyperplane> lines, const RationalVector& p,
                           const RationalVector& q) {
  long separating = 0;
  long containing = 0;
  for (const auto& h : lines) {
    const int sp = side_of(h, p);
    const int sq = side_of(h, q);
    if (sp == 0 || sq == 0)
      ++containing;
    else if (sp != sq)
      ++separating;
  }
  Rational d(2 * separating + containing, 2);
  d.canonicalize();
  return d;
}

RationalVector line_intersection(const Hyperplane& a, const Hyperplane& b) {
  require_dimension(a.dimension(), 2, "line_intersection");
  require_dimension(b.dimension(), 2, "line_intersection");
  const Rational det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
  if (sgn(det) == 0) throw DegenerateInput("parallel lines have no intersection vertex");
  RationalVector v(2);
  v[0] = (a.offset * b.normal[1] - a.normal[1] * b.offset) / det;
  v[1] = (a.normal[0] * b.offset - a.offset * b.normal[0]) / det;
  return v;
}

Index crossing_disk_size(std::span<const Hyperplane> lines, const RationalVector& p,
                         const Rational& r) {
  if (p.size() != 2) throw DimensionMismatch("crossing disks are planar only");
  std::vector<RationalVector> vertices;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    require_dimension(lines[i].dimension(), 2, "crossing_disk_size");
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i].normal[0] * lines[j].normal[1] -
                           lines[i].normal[1] * lines[j].normal[0];
      if (sgn(det) == 0) continue;
      vertices.push_back(line_intersection(lines[i], lines[j]));
    }
  }
  auto less = [](const RationalVector& a, const RationalVector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  };
  std::sort(vertices.begin(), vertices.end(), less);
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Index count = 0;
  for (const auto& v : vertices)
    if (crossing_distance(lines, p, v) <= r) ++count;
  return count;
}

int orientation(const RationalVector& a, const RationalVector& b, const RationalVector& c) {
  return sgn(Rational((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])));
}

int orientation(std::span<const RationalVector* const> simplex) {
  if (simplex.size() == 3) return orientation(*simplex[0], *simplex[1], *simplex[2]);
  if (simplex.size() != 4) throw DimensionMismatch("orientation needs d+1 points, d in {2,3}");
  const RationalVector& a = *simplex[0];
  const RationalVector u = *simplex[1] - a;
  const RationalVector v = *simplex[2] - a;
  const RationalVector w = *simplex[3] - a;
  return sgn(det3(u[0], u[1], u[2], v[0], v[1], v[2], w[0], w[1], w[2]));
}

bool segments_cross(const RationalVector& a0, const RationalVector& a1, const RationalVector& b0,
                    const RationalVector& b1) {
  if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) return false;
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

Hyperplane hyperplane_through(std::span<const RationalVector* const> points) {
  Hyperplane h;
  if (points.size() == 2) {
    const RationalVector& p = *points[0];
    const RationalVector& q = *points[1];
    require_dimension(p.size(), 2, "hyperplane_through");
    h.normal.resize(2);
    h.normal[0] = -(q[1] - p[1]);
    h.normal[1] = q[0] - p[0];
  } else if (points.size() == 3) {
    const RationalVector& p = *points[0];
    require_dimension(p.size(), 3, "hyperplane_through");
    const RationalVector u = *points[1] - p;
    const RationalVector v = *points[2] - p;
    h.normal.resize(3);
    h.normal[0] = u[1] * v[2] - u[2] * v[1];
    h.normal[1] = u[2] * v[0] - u[0] * v[2];
    h.normal[2] = u[0] * v[1] - u[1] * v[0];
  } else {
    throw DimensionMismatch("hyperplane_through needs d points, d in {2,3}");
  }
  if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return sgn(x) == 0; }))
    throw DegenerateInput("points do not span a hyperplane");
  h.offset = dot(h.normal, *points[0]);
  return h;
}

Rational squared_distance(const RationalVector& p, const RationalVector& q) {
  Rational s = 0;
  for (Index i = 0; i < p.size(); ++i) {
    Rational d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

bool in_general_position(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  if (n == 0) return true;
  const Index d = pts.front().dimension();
  if (d == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (orientation(pts[i].coords, pts[j].coords, pts[k].coords) == 0) return false;
    return true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        // collinear triples are coplanar with anything; catch them even when n == 3
        const RationalVector u = pts[j].coords - pts[i].coords;
        const RationalVector v = pts[k].coords - pts[i].coords;
        if (sgn(Rational(u[1] * v[2] - u[2] * v[1])) == 0 &&
            sgn(Rational(u[2] * v[0] - u[0] * v[2])) == 0 &&
            sgn(Rational(u[0] * v[1] - u[1] * v[0])) == 0)
          return false;
        for (std::size_t l = k + 1; l < n; ++l) {
          const RationalVector* s[] = {&pts[i].coords, &pts[j].coords, &pts[k].coords,
                                       &pts[l].coords};
          if (orientation(s) == 0) return false;
        }
      }
  return true;
}

std::vector<RationalVector> symbolic_perturbation(std::vector<RationalVector> coords) {
  const Rational eps = power_of_two_inverse(40);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Rational step = eps;
    Rational index_power = static_cast<long>(i);
    for (Index k = 0; k < coords[i].size(); ++k) {
      coords[i][k] += step * index_power;
      step *= eps;
      index_power *= static_cast<long>(i);
    }
  }
  return coords;
}

}  // namespace crossforest
