#include <doctest.h>

#include "crossforest/io.hpp"
#include "helpers.hpp"

using namespace crossforest;

TEST_CASE("trivial ground sets") {
  const auto one = canonical_ranges(points({{0, 0}}));
  auto r = build_tree(one, Mode::Randomized, 1);
  CHECK(r.tree.edges.empty());
  CHECK(r.report.levels.empty());

  const auto two = canonical_ranges(points({{0, 0}, {1, 0}}));
  r = build_tree(two, Mode::Randomized, 1);
  CHECK(r.tree.edges == std::vector<Edge>{{0, 1}});
  CHECK(r.report.total_crossing == 1);

  CHECK_THROWS_AS(build_tree(RangeSpace{}, Mode::Randomized, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(canonical_ranges(points({{0, 0, 0}, {1, 0, 0}})), Mode::DeterministicPlanar, 1),
                  DimensionMismatch);
}

TEST_CASE("5x5 grid in both modes") {
  const auto space = canonical_ranges(generate(GeneratorKind::Grid, 25, 0));
  for (Mode mode : {Mode::Randomized, Mode::DeterministicPlanar}) {
    const auto r = build_tree(space, mode, 7);
    CHECK(r.tree.edges.size() == 24);
    CHECK(r.report.total_crossing <= 20);
    CHECK(static_cast<Index>(r.report.levels.size()) <= max_levels(25));

    Index sum = 0;
    for (std::size_t i = 0; i < r.report.levels.size(); ++i) {
      const auto& l = r.report.levels[i];
      sum += l.crossing;
      CHECK(20 * l.components <= 19 * static_cast<Index>(l.points.size()));
      if (i + 1 < r.report.levels.size()) CHECK(r.report.levels[i + 1].points.size() == static_cast<std::size_t>(l.components));
    }
    const Index uni = crossing_number(r.report.edges, space);
    CHECK(sum >= uni);
    CHECK(uni >= r.report.total_crossing);
  }
}

TEST_CASE("abstract set systems") {
  const auto space = explicit_ranges(6, {{0, 1, 2}, {2, 3}, {4}, {0, 5}, {1, 3, 5}});
  const auto r = build_tree(space, Mode::Randomized, 3);
  CHECK(r.tree.edges.size() == 5);
}

TEST_CASE("reports are deterministic for a seed") {
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 14, 2));
  const auto a = report_to_json(build_tree(space, Mode::Randomized, 99)).dump();
  LevelCache cache;
  const auto b = report_to_json(build_tree(space, Mode::Randomized, 99, kDefaultMaxRetries, &cache)).dump();
  const auto c = report_to_json(build_tree(space, Mode::Randomized, 99, kDefaultMaxRetries, &cache)).dump();
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("BFS spanning tree extraction") {
  auto t = extract_spanning_tree(4, EdgeSet({{0, 1}, {1, 2}, {2, 3}}));
  CHECK(t.edges == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(t.parent == std::vector<Index>{-1, 0, 1, 2});

  t = extract_spanning_tree(3, EdgeSet({{0, 1}, {0, 2}, {1, 2}}));
  CHECK(t.edges == std::vector<Edge>{{0, 1}, {0, 2}});

  // path 0-1-2-3 plus a cycle 1-4-5-1: the closing edge 4-5 is dropped
  t = extract_spanning_tree(6, EdgeSet({{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {1, 5}}));
  CHECK(t.edges == std::vector<Edge>{{0, 1}, {1, 2}, {1, 4}, {1, 5}, {2, 3}});

  CHECK_THROWS_AS(extract_spanning_tree(3, EdgeSet({{0, 1}})), AlgorithmFailure);
}

TEST_CASE("Euler shortcut") {
  const auto tri = canonical_ranges(triangle());
  const auto tree = extract_spanning_tree(3, EdgeSet({{0, 1}, {1, 2}}));
  const std::vector<Index> all{0, 1, 2}, ends{0, 2}, one{1};
  CHECK(euler_shortcut(tree, all, tri) == std::vector<Index>{0, 1, 2});
  const auto two = euler_shortcut(tree, ends, tri);
  CHECK(two == std::vector<Index>{0, 2});
  CHECK(cycle_edges(two) == std::vector<Edge>{{0, 2}});
  CHECK(euler_shortcut(tree, one, tri) == std::vector<Index>{1});
  CHECK(cycle_edges(one).empty());
}

TEST_CASE("Euler shortcut stays within twice the tree on random subsets") {
  const auto pts = generate(GeneratorKind::Uniform, 10, 8);
  const auto space = canonical_ranges(pts);
  const auto r = build_tree(space, Mode::Randomized, 4);
  for (unsigned mask = 1; mask < (1u << 10); mask += 37) {
    std::vector<Index> x;
    for (Index i = 0; i < 10; ++i)
      if (mask >> i & 1u) x.push_back(i);
    CHECK_NOTHROW(euler_shortcut(r.tree, x, space));
  }
}
