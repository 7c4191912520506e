#include "crossforest/range_space.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace crossforest {

namespace {

Membership canonical(Membership m) {
  if (m.size() > 0 && m.test(0)) return m.complement();
  return m;
}

bool trivial(const Membership& m) { return m.none() || m.all(); }

/// Solves the small dense system A x = b exactly (A square, nonsingular).
RationalVector solve_small(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw DegenerateInput("points are not affinely independent");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) x[static_cast<Index>(i)] = b[i] / a[i][i];
  return x;
}

/// Tilts `base` so the points in `on_plane` land on the requested sides while every other
/// point keeps its side. The tilt is base + eps*g with g affine, g(p_k) = desired_k, g
/// parallel to base; eps starts at 2^-40 and is squared until the signature is right.
Hyperplane perturb_hyperplane(const Hyperplane& base, const PointSet& points,
                              std::span<const Index> on_plane, std::span<const int> desired) {
  const Index d = points.dimension();
  const std::size_t k = on_plane.size();
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> row(static_cast<std::size_t>(d + 1));
    for (Index c = 0; c < d; ++c) row[static_cast<std::size_t>(c)] = points[on_plane[i]].coords[c];
    row[static_cast<std::size_t>(d)] = -1;
    a.push_back(std::move(row));
    b.emplace_back(desired[i]);
  }
  // Remaining equations pin g's normal inside the base hyperplane directions.
  std::vector<Rational> row(static_cast<std::size_t>(d + 1));
  for (Index c = 0; c < d; ++c) row[static_cast<std::size_t>(c)] = base.normal[c];
  row[static_cast<std::size_t>(d)] = 0;
  a.push_back(std::move(row));
  b.emplace_back(0);
  if (a.size() != static_cast<std::size_t>(d + 1))
    throw std::logic_error("perturb_hyperplane expects exactly d on-plane points");
  const RationalVector g = solve_small(std::move(a), std::move(b));

  std::vector<int> base_side(static_cast<std::size_t>(points.size()));
  for (Index i = 0; i < points.size(); ++i) base_side[static_cast<std::size_t>(i)] = side_of(base, points[i]);

  Rational eps = power_of_two_inverse(40);
  for (;;) {
    Hyperplane h;
    h.normal = base.normal + eps * g.head(d);
    h.offset = base.offset + eps * g[d];
    bool ok = true;
    for (Index i = 0; i < points.size() && ok; ++i) {
      const int s = side_of(h, points[i]);
      int want = base_side[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < k; ++j)
        if (on_plane[j] == i) want = desired[j];
      ok = s == want;
    }
    if (ok) return h;
    eps *= eps;
  }
}

Hyperplane negate(Hyperplane h) {
  h.normal = -h.normal;
  h.offset = -h.offset;
  return h;
}

Membership negative_side(const Hyperplane& h, const PointSet& points) {
  Membership m(points.size());
  for (Index i = 0; i < points.size(); ++i)
    if (side_of(h, points[i]) < 0) m.set(i);
  return m;
}

/// n = 2 with fewer points than the dimension needs: the perpendicular bisector.
Range bisector_range(const PointSet& points) {
  const RationalVector& p = points[0].coords;
  const RationalVector& q = points[1].coords;
  Hyperplane h;
  h.normal = p - q;
  RationalVector mid = p + q;
  Rational offset = 0;
  for (Index i = 0; i < h.normal.size(); ++i) offset += h.normal[i] * mid[i];
  h.offset = offset / 2;
  // p is on the positive side, q on the negative side.
  return Range{negative_side(h, points), h};
}

}  // namespace

RangeSpace::RangeSpace(Index ground_size, std::vector<Range> ranges, std::optional<PointSet> points)
    : ground_size_(ground_size), ranges_(std::move(ranges)), points_(std::move(points)) {}

const PointSet& RangeSpace::points() const {
  if (!points_) throw std::logic_error("abstract range space has no coordinates");
  return *points_;
}

std::vector<std::vector<Index>> RangeSpace::crossing_pairs() const {
  const Index n = ground_size_;
  std::vector<std::vector<Index>> out;
  out.reserve(ranges_.size());
  for (const auto& r : ranges_) {
    std::vector<Index> pairs;
    const auto inside = r.members.indices();
    const auto outside = r.members.complement().indices();
    pairs.reserve(inside.size() * outside.size());
    for (Index a : inside)
      for (Index b : outside) pairs.push_back(a < b ? pair_index(n, a, b) : pair_index(n, b, a));
    std::sort(pairs.begin(), pairs.end());
    out.push_back(std::move(pairs));
  }
  return out;
}

std::string RangeSpace::dump_hex() const {
  std::ostringstream os;
  for (const auto& r : ranges_) os << r.members.to_hex() << '\n';
  return os.str();
}

RangeSpace canonical_ranges(const PointSet& points) {
  const Index n = points.size();
  const Index d = points.dimension();
  if (n < 2) return RangeSpace(n, {}, points);
  if (n < d) return RangeSpace(n, {bisector_range(points)}, points);

  std::vector<Range> ranges;
  std::unordered_set<Membership, MembershipHash> seen;
  std::vector<Index> subset(static_cast<std::size_t>(d));
  std::vector<int> base_side(static_cast<std::size_t>(n));

  auto visit = [&](std::span<const Index> chosen) {
    std::vector<const RationalVector*> coords;
    for (Index i : chosen) coords.push_back(&points[i].coords);
    const Hyperplane base = hyperplane_through(coords);
    for (Index i = 0; i < n; ++i) base_side[static_cast<std::size_t>(i)] = side_of(base, points[i]);
    const unsigned combos = 1u << d;
    for (unsigned mask = 0; mask < combos; ++mask) {
      Membership m(n);
      for (Index i = 0; i < n; ++i)
        if (base_side[static_cast<std::size_t>(i)] < 0) m.set(i);
      std::vector<int> desired(static_cast<std::size_t>(d));
      for (Index j = 0; j < d; ++j) {
        const bool inside = (mask >> j) & 1u;
        desired[static_cast<std::size_t>(j)] = inside ? -1 : 1;
        m.set(chosen[static_cast<std::size_t>(j)], inside);
      }
      if (trivial(m)) continue;
      const bool flip = m.test(0);
      Membership key = canonical(m);
      if (!seen.insert(key).second) continue;
      Hyperplane rep = perturb_hyperplane(base, points, chosen, desired);
      ranges.push_back(Range{std::move(key), flip ? negate(std::move(rep)) : std::move(rep)});
    }
  };

  // Every hyperplane partition can be rotated and translated until it rests on d points
  // with each of them assigned to its original side.
  if (d == 2) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const Index chosen[] = {i, j};
        visit(chosen);
      }
  } else {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        for (Index k = j + 1; k < n; ++k) {
          const Index chosen[] = {i, j, k};
          visit(chosen);
        }
  }
  return RangeSpace(n, std::move(ranges), points);
}

RangeSpace explicit_ranges(Index ground_size, const std::vector<std::vector<Index>>& sets) {
  std::vector<Range> ranges;
  std::unordered_set<Membership, MembershipHash> seen;
  for (const auto& s : sets) {
    Membership m(ground_size);
    for (Index i : s) {
      if (i < 0 || i >= ground_size)
        throw std::out_of_range("range index " + std::to_string(i) + " outside ground set of size " +
                                std::to_string(ground_size));
      m.set(i);
    }
    if (trivial(m)) continue;
    Membership key = canonical(std::move(m));
    if (seen.insert(key).second) ranges.push_back(Range{std::move(key), std::nullopt});
  }
  return RangeSpace(ground_size, std::move(ranges));
}

Index crossing_count(std::span<const Edge> edges, const Membership& range) {
  Index c = 0;
  for (const auto& e : edges)
    if (range.test(e.first) != range.test(e.second)) ++c;
  return c;
}

Index crossing_number(std::span<const Edge> edges, const RangeSpace& space) {
  Index best = 0;
  for (const auto& r : space.ranges()) best = std::max(best, crossing_count(edges, r.members));
  return best;
}

RangeSpace restrict_to(const RangeSpace& space, std::span<const Index> subset) {
  if (subset.empty()) throw std::invalid_argument("cannot restrict to an empty subset");
  std::vector<Index> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("restriction subset has duplicates");
  for (Index i : sorted)
    if (i < 0 || i >= space.ground_size()) throw std::out_of_range("restriction index outside ground set");

  if (space.is_geometric()) return canonical_ranges(space.points().subset(sorted));

  std::vector<std::vector<Index>> sets;
  sets.reserve(space.ranges().size());
  for (const auto& r : space.ranges()) {
    std::vector<Index> local;
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (r.members.test(sorted[k])) local.push_back(static_cast<Index>(k));
    sets.push_back(std::move(local));
  }
  return explicit_ranges(static_cast<Index>(sorted.size()), sets);
}

}  // namespace crossforest
