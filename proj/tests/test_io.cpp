#include <doctest.h>

#include <sstream>

#include "crossforest/io.hpp"
#include "helpers.hpp"

using namespace crossforest;

TEST_CASE("point files") {
  const auto doc = Json::parse(R"([[0, 0], ["1/3", 0.5], [2, "7"]])");
  const auto pts = points_from_json(doc);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1].coords[0] == Rational(1, 3));
  CHECK(pts[1].coords[1] == Rational(1, 2));
  CHECK(pts[2].id == 2);
  CHECK(points_from_json(points_to_json(pts))[1].coords[0] == Rational(1, 3));
  CHECK_THROWS_AS(points_from_json(Json::parse("[[0,0],[1,1],[2,2]]")), DegenerateInput);
  CHECK(points_from_json(Json::parse("[[0,0],[1,1],[2,2]]"), true).size() == 3);
  CHECK_THROWS(points_from_json(Json::parse(R"({"x": 1})")));
}

TEST_CASE("set-system files") {
  const auto s = set_system_from_json(Json::parse(R"({"ground": 4, "sets": [[0], [0, 1], [0, 1, 2, 3]]})"));
  CHECK(s.ground_size() == 4);
  CHECK(s.size() == 2);
  CHECK_FALSE(s.is_geometric());
}

TEST_CASE("generators") {
  const auto grid = generate(GeneratorKind::Grid, 9, 0);
  CHECK(grid.size() == 9);
  CHECK(floor(grid[4].coords[0]) == 1);
  CHECK(floor(grid[5].coords[1]) == 1);
  CHECK(generate(GeneratorKind::Uniform, 1, 3).size() == 1);
  const auto u = generate(GeneratorKind::Uniform, 20, 3, 3);
  CHECK(u.dimension() == 3);
  for (const auto& p : u.points())
    for (Index c = 0; c < 3; ++c) CHECK((p.coords[c] >= 0 && p.coords[c] < 1));
  CHECK(points_to_json(generate(GeneratorKind::Uniform, 10, 3)) == points_to_json(generate(GeneratorKind::Uniform, 10, 3)));

  const auto circle = generate(GeneratorKind::Circle, 4, 0);
  const std::vector<std::pair<int, int>> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Index i = 0; i < 4; ++i) {
    CHECK(circle[i].coords[0] * circle[i].coords[0] + circle[i].coords[1] * circle[i].coords[1] == 1);
    CHECK(abs(circle[i].coords[0] - square[static_cast<std::size_t>(i)].first) < Rational(1, 1000));
    CHECK(abs(circle[i].coords[1] - square[static_cast<std::size_t>(i)].second) < Rational(1, 1000));
  }
  const auto moment = generate(GeneratorKind::MomentCurve, 6, 0, 3);
  CHECK(moment[2].coords[2] == 27);
  CHECK_THROWS_AS(generate(GeneratorKind::Grid, 9, 0, 3), DimensionMismatch);
  CHECK_THROWS(parse_generator_kind("spiral"));
}

TEST_CASE("svg rendering") {
  const auto pts = generate(GeneratorKind::Grid, 9, 0);
  const auto space = canonical_ranges(pts);
  const std::vector<Edge> snake{{0, 1}, {1, 2}, {2, 5}, {4, 5}, {3, 4}, {3, 6}, {6, 7}, {7, 8}};
  auto count = [](const std::string& s, const std::string& what) {
    std::size_t c = 0;
    for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++c;
    return c;
  };
  std::ostringstream a;
  render_svg(a, pts, snake, space);
  CHECK(count(a.str(), "<circle") == 9);
  CHECK(count(a.str(), "<line") == 8);
  std::ostringstream b;
  render_svg(b, pts, snake, space, SvgOptions{3});
  CHECK(count(b.str(), "stroke-dasharray") == 3);
  std::ostringstream c;
  render_svg(c, points({{1, 2}}), {}, canonical_ranges(points({{1, 2}})));
  CHECK(count(c.str(), "<circle") == 1);
  std::ostringstream d;
  CHECK_THROWS_AS(render_svg(d, generate(GeneratorKind::MomentCurve, 4, 0, 3), {}, RangeSpace{}), DimensionMismatch);
}

TEST_CASE("report JSON carries the run parameters") {
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 8, 1));
  const auto r = build_tree(space, Mode::Randomized, 42);
  const auto doc = report_to_json(r);
  CHECK(doc["seed"] == 42);
  CHECK(doc["mode"] == "randomized");
  CHECK(doc["length_bits"] == 60);
  CHECK(doc["tree"].size() == 7);
  CHECK_FALSE(doc.contains("timings_ms"));
  CHECK(report_to_json(r, true).contains("timings_ms"));
  const auto& lv = doc["levels"][0];
  for (const char* key : {"i", "n_i", "t_i", "edges", "components", "crossing_i"}) CHECK(lv.contains(key));
}
