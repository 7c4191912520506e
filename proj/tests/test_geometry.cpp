#include <doctest.h>

#include "helpers.hpp"

using namespace crossforest;

TEST_CASE("side_of is exact") {
  const auto h = line(1, 0, Rational(1, 2));
  CHECK(side_of(h, vec({0, 0})) == -1);
  CHECK(side_of(h, vec({1, 0})) == 1);
  CHECK(side_of(h, vec({Rational(1, 2), 7})) == 0);
  CHECK_THROWS_AS(side_of(h, vec({0, 0, 0})), DimensionMismatch);
}

TEST_CASE("edge_crosses") {
  const auto h = line(1, 0, Rational(1, 2));
  const Point o{0, vec({0, 0})};
  CHECK(edge_crosses(h, o, Point{1, vec({1, 0})}));
  CHECK_FALSE(edge_crosses(h, o, Point{1, vec({Rational(1, 4), 0})}));
  CHECK(edge_crosses(line(1, 1, 1), o, Point{1, vec({1, 1})}));
  CHECK_THROWS_AS(edge_crosses(h, o, Point{1, vec({Rational(1, 2), 3})}), DegenerateInput);
}

TEST_CASE("crossing distance counts lines through endpoints as half") {
  std::vector<Hyperplane> two{line(1, 0, Rational(1, 2)), line(1, 0, Rational(3, 2))};
  CHECK(crossing_distance(two, vec({0, 0}), vec({2, 0})) == 2);
  std::vector<Hyperplane> one{line(1, 0, Rational(1, 2))};
  CHECK(crossing_distance(one, vec({0, 0}), vec({Rational(1, 2), 0})) == Rational(1, 2));
  CHECK(crossing_distance(one, vec({0, 0}), vec({0, 0})) == 0);
  CHECK(crossing_distance(one, vec({Rational(1, 2), 1}), vec({Rational(1, 2), 1})) == Rational(1, 2));
}

TEST_CASE("crossing distance triangle inequality on random triples") {
  const auto lines_src = generate(GeneratorKind::Uniform, 12, 5);
  std::vector<Hyperplane> ls;
  for (Index k = 0; k + 1 < lines_src.size(); k += 2) {
    const RationalVector* pair[] = {&lines_src[k].coords, &lines_src[k + 1].coords};
    ls.push_back(hyperplane_through(pair));
  }
  const auto q = generate(GeneratorKind::Uniform, 9, 77);
  for (Index a = 0; a < q.size(); ++a)
    for (Index b = 0; b < q.size(); ++b)
      for (Index c = 0; c < q.size(); ++c)
        CHECK(crossing_distance(ls, q[a].coords, q[c].coords) <=
              crossing_distance(ls, q[a].coords, q[b].coords) + crossing_distance(ls, q[b].coords, q[c].coords));
}

TEST_CASE("crossing disk size") {
  std::vector<Hyperplane> ls{line(1, 0, 1), line(0, 1, 1)};
  CHECK(crossing_disk_size(ls, vec({0, 0}), 1) == 1);
  CHECK(crossing_disk_size(ls, vec({0, 0}), Rational(1, 2)) == 0);
}

TEST_CASE("point sets reject degenerate input") {
  CHECK_THROWS_AS(points({{0, 0}, {1, 1}, {2, 2}}), DegenerateInput);
  CHECK_THROWS_AS(points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DegenerateInput);
  CHECK_THROWS_AS(points({{0}, {1}}), DimensionMismatch);
  CHECK_THROWS(points({{0, 0}, {0, 0}}));
  CHECK(triangle().size() == 3);
}

TEST_CASE("symbolic perturbation breaks lattice collinearity") {
  std::vector<RationalVector> g;
  for (int i = 0; i < 9; ++i) g.push_back(vec({i % 3, i / 3}));
  std::vector<Point> raw;
  for (int i = 0; i < 9; ++i) raw.push_back(Point{i, g[static_cast<std::size_t>(i)]});
  CHECK_FALSE(in_general_position(raw));
  CHECK_NOTHROW(PointSet::from_coordinates(symbolic_perturbation(g)));
}

TEST_CASE("segments_cross is proper crossing only") {
  CHECK(segments_cross(vec({0, 0}), vec({1, 1}), vec({0, 1}), vec({1, 0})));
  CHECK_FALSE(segments_cross(vec({0, 0}), vec({1, 1}), vec({1, 1}), vec({2, 0})));
  CHECK_FALSE(segments_cross(vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})));
}
