#include <doctest.h>

#include "helpers.hpp"

using namespace crossforest;

TEST_CASE("Pruefer decoding") {
  const std::vector<Index> seq{3, 3, 3, 4};
  CHECK(pruefer_decode(seq, 6) == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  const std::vector<Index> none;
  CHECK(pruefer_decode(none, 2) == std::vector<Edge>{{0, 1}});
}

TEST_CASE("oracle values") {
  CHECK(brute_force_opt_tree(canonical_ranges(points({{0, 0}, {1, 0}}))).t_opt == 1);
  const auto tri = brute_force_opt_tree(canonical_ranges(triangle()));
  CHECK(tri.t_opt == 2);
  CHECK(tri.trees_examined == 3);
  const auto sq = brute_force_opt_tree(canonical_ranges(unit_square()));
  CHECK(sq.t_opt == 2);
  CHECK(sq.trees_examined == 16);
  CHECK(crossing_number(std::span<const Edge>(sq.witness.edges), canonical_ranges(unit_square())) == 2);
  CHECK_THROWS(brute_force_opt_tree(explicit_ranges(9, {{0}})));
}

TEST_CASE("oracle is independent of the worker count") {
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 7, 12));
  setenv("CROSSING_FOREST_THREADS", "1", 1);
  const auto a = brute_force_opt_tree(space);
  setenv("CROSSING_FOREST_THREADS", "3", 1);
  const auto b = brute_force_opt_tree(space);
  unsetenv("CROSSING_FOREST_THREADS");
  CHECK(a.t_opt == b.t_opt);
  CHECK(a.witness.edges == b.witness.edges);
  CHECK(a.trees_examined == 16807);
}

TEST_CASE("duality certificates") {
  const auto tri = canonical_ranges(triangle());
  const auto p = solve(build_primal(tri, 1));
  const auto d = solve(build_dual(tri, 1));
  CHECK(p.objective == Rational(3, 2));
  CHECK(check_duality_certificate(tri, 1, p, d));
  // primal solved at t = 1, dual at t = 2
  CHECK_FALSE(check_duality_certificate(tri, 2, p, solve(build_dual(tri, 2))));
  CHECK_FALSE(check_duality_certificate(tri, Rational(1, 2), solve(build_primal(tri, Rational(1, 2))),
                                        solve(build_dual(tri, Rational(1, 2)))));
}

TEST_CASE("separation lower bound") {
  auto c = check_separation_lower_bound(unit_square());
  CHECK(c.holds);
  CHECK(c.optimum == 2);
  c = check_separation_lower_bound(points({{0, 0}, {1, 0}}));
  CHECK(c.holds);
  CHECK(c.optimum == 1);
  c = check_separation_lower_bound(generate(GeneratorKind::Grid, 25, 0));
  CHECK(c.holds);
  CHECK(c.optimum >= Rational(5, 2));
}

TEST_CASE("crossing disk lemma") {
  const std::vector<Hyperplane> two{line(1, 0, 1), line(0, 1, 1)};
  const auto p = points({{0, 0}, {3, 2}, {-1, 5}});
  CHECK(check_crossing_disk_lemma(two, p, 1));
  CHECK(check_crossing_disk_lemma(two, p, 0));
  CHECK_THROWS(check_crossing_disk_lemma(two, p, 2));
  const std::vector<Hyperplane> parallel{line(1, 0, 1), line(1, 0, 2)};
  CHECK_THROWS_AS(check_crossing_disk_lemma(parallel, p, 1), DegenerateInput);
  const std::vector<Hyperplane> concurrent{line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)};
  CHECK_THROWS_AS(check_crossing_disk_lemma(concurrent, points({{5, 7}}), 1), DegenerateInput);
  CHECK_THROWS_AS(check_crossing_disk_lemma(two, points({{1, 0}}), 1), DegenerateInput);
}
