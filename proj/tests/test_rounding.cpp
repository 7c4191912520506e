#include <doctest.h>

#include "crossforest/rng.hpp"
#include "helpers.hpp"

using namespace crossforest;

TEST_CASE("uniform_below is exact at the boundary") {
  CHECK(uniform_below(0, Rational(1, 1000)));
  CHECK_FALSE(uniform_below(~std::uint64_t{0}, Rational(1, 2)));
  CHECK(uniform_below(std::uint64_t{1} << 63, Rational(1, 2)) == false);
  CHECK(uniform_below((std::uint64_t{1} << 63) - 1, Rational(1, 2)));
  CHECK_FALSE(uniform_below(0, 0));
}

TEST_CASE("integral solutions round to their support") {
  // y on pairs of 4 points: 01, 02, 03, 12, 13, 23
  const std::vector<Rational> y{1, 0, 0, 1, 0, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = randomized_round(y, 4, seed);
    CHECK(f.edges == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  }
}

TEST_CASE("edges with y >= 1 always appear") {
  const std::vector<Rational> y{Rational(3, 2), Rational(1, 3), 1, 0, Rational(1, 5), Rational(1, 7)};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = randomized_round(y, 4, seed);
    CHECK(std::binary_search(f.edges.begin(), f.edges.end(), Edge{0, 1}));
    CHECK(std::binary_search(f.edges.begin(), f.edges.end(), Edge{0, 3}));
    CHECK_FALSE(std::binary_search(f.edges.begin(), f.edges.end(), Edge{1, 2}));
  }
}

TEST_CASE("triangle expectation") {
  const auto tri = canonical_ranges(triangle());
  const auto sol = values({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  double total = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) total += static_cast<double>(randomized_round(sol, tri, seed).size());
  CHECK(total / 10000 == doctest::Approx(1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("round until reduced") {
  const auto sq = canonical_ranges(unit_square());
  // star at 0
  auto [f, stats] = round_until_reduced(values({1, 1, 1, 0, 0, 0}), sq, 5);
  CHECK(stats.components == 1);
  CHECK(stats.retries == 0);
  CHECK(stats.singletons == 0);
  CHECK(f.size() == 3);

  const auto tri = canonical_ranges(triangle());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto [g, s] = round_until_reduced(values({Rational(1, 2), Rational(1, 2), Rational(1, 2)}), tri, seed);
    CHECK(s.components <= 2);
    CHECK(s.retries <= 64);
  }
  CHECK_THROWS_AS(round_until_reduced(values({0, 0, 0}), tri, 1, 0), AlgorithmFailure);
}

TEST_CASE("randomized rounding crossing stays near t") {
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 16, 21));
  const Rational t = min_feasible_t(space);
  const auto sol = solve(build_primal(space, t));
  REQUIRE(sol.optimal());
  const double n = 16;
  const double bound = t.get_d() + std::max(3 * t.get_d(), 8 * std::log(n) / std::log(std::log(n)));
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK(static_cast<double>(crossing_number(randomized_round(sol, space, seed), space)) <= bound);
}

TEST_CASE("deterministic planar rounding") {
  const auto sq = unit_square();
  // path 0-1-2-3
  auto f = deterministic_planar_round(values({1, 0, 0, 1, 0, 1}), sq);
  CHECK(f.edges == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});

  const auto space = canonical_ranges(sq);
  const auto sol = solve(build_weighted_primal(space, 1));
  f = deterministic_planar_round(sol, sq);
  CHECK(f.edges == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK(count_components(4, f.edges) == 1);
  CHECK(crossing_number(f, space) <= 12);

  // diagonals 0-2 and 1-3 cross
  CHECK_THROWS_AS(deterministic_planar_round(values({0, Rational(1, 2), 0, 0, Rational(1, 2), 0}), sq), DegenerateInput);
  CHECK_THROWS_AS(deterministic_planar_round(values({1, 1, 1, 1, 1, 1}), points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})),
                  DimensionMismatch);
}

TEST_CASE("planar support degree and cover properties") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto pts = generate(GeneratorKind::Uniform, 12, seed);
    const auto space = canonical_ranges(pts);
    const Rational t = min_feasible_t(space);
    const auto sol = solve(build_weighted_primal(space, t));
    REQUIRE(sol.optimal());
    const auto f = deterministic_planar_round(sol, pts);
    std::vector<int> degree(12, 0), in_f(12, 0);
    const auto pairs = all_pairs(12);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (sgn(sol.values[k]) > 0) ++degree[static_cast<std::size_t>(pairs[k].first)], ++degree[static_cast<std::size_t>(pairs[k].second)];
    for (const auto& e : f.edges) in_f[static_cast<std::size_t>(e.first)] = in_f[static_cast<std::size_t>(e.second)] = 1;
    int low = 0;
    for (int p = 0; p < 12; ++p) {
      CHECK(degree[static_cast<std::size_t>(p)] >= 1);
      if (degree[static_cast<std::size_t>(p)] <= 12) {
        ++low;
        CHECK(in_f[static_cast<std::size_t>(p)] == 1);
      }
    }
    CHECK(2 * low >= 12);
    CHECK(crossing_number(f, space) <= 12 * t);
    CHECK(4 * count_components(12, f.edges) <= 3 * 12);
  }
}
