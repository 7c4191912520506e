#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace crossforest;

namespace {

LPInstance toy(Relation rel, Rational rhs, Sense sense = Sense::Maximize) {
  LPInstance lp;
  lp.sense = sense;
  lp.add_variable("x", 1);
  lp.add_row({"c", {0}, {1}, rel, rhs});
  return lp;
}

}  // namespace

TEST_CASE("toy programs") {
  auto lp = toy(Relation::LessEqual, 2);
  auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 2);

  lp.add_row({"d", {0}, {1}, Relation::GreaterEqual, 2});
  lp.rows[0].rhs = 1;
  sol = solve(lp);
  CHECK(sol.status == LPStatus::Infeasible);
  CHECK(is_farkas_certificate(lp, sol.duals));

  sol = solve(toy(Relation::GreaterEqual, 1));
  CHECK(sol.status == LPStatus::Unbounded);

  sol = solve(toy(Relation::Equal, Rational(7, 3), Sense::Minimize));
  REQUIRE(sol.optimal());
  CHECK(sol.objective == Rational(7, 3));
}

TEST_CASE("primal shape") {
  const auto two = canonical_ranges(points({{0, 0}, {1, 0}}));
  const auto lp = build_primal(two, 1);
  CHECK(lp.num_variables() == 1);
  CHECK(lp.num_rows() == 3);
  CHECK(lp.rows[0].relation == Relation::LessEqual);
  CHECK(lp.rows[1].relation == Relation::GreaterEqual);
  CHECK_NOTHROW(lp.validate());
  CHECK(lp.variable_names[0] == "y_0_1");
}

TEST_CASE("triangle primal") {
  const auto tri = canonical_ranges(triangle());
  auto sol = solve(build_primal(tri, 1));
  REQUIRE(sol.optimal());
  CHECK(sol.objective == Rational(3, 2));
  for (const auto& v : sol.values) CHECK(v == Rational(1, 2));

  sol = solve(build_primal(tri, Rational(1, 2)));
  CHECK(sol.status == LPStatus::Infeasible);
  CHECK(is_farkas_certificate(build_primal(tri, Rational(1, 2)), sol.duals));
}

TEST_CASE("dual and separation") {
  const auto two = canonical_ranges(points({{0, 0}, {1, 0}}));
  auto sol = solve(build_dual(two, 1));
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 1);
  sol = solve(build_separation(two));
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 1);

  const auto tri = canonical_ranges(triangle());
  const auto dual = build_dual(tri, 1);
  std::vector<Rational> unit(static_cast<std::size_t>(dual.num_variables()), 0);
  for (Index k = 0; k < tri.size(); ++k) unit[static_cast<std::size_t>(k)] = 1;
  CHECK(is_primal_feasible(dual, unit));
  sol = solve(dual);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == Rational(3, 2));

  // fractional separation of the square: 4 singletons at 1/2 cover every pair twice over
  const auto sq = solve(build_separation(canonical_ranges(unit_square())));
  REQUIRE(sq.optimal());
  CHECK(sq.objective == 2);
}

TEST_CASE("weighted primal") {
  const auto two = canonical_ranges(points({{0, 0}, {3, 4}}));
  auto sol = solve(build_weighted_primal(two, 2));
  REQUIRE(sol.optimal());
  CHECK(sol.values[0] == 1);
  CHECK(sol.objective == 5);

  const auto sq = canonical_ranges(unit_square());
  sol = solve(build_weighted_primal(sq, 1));
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 2);
  for (const auto& e : all_pairs(4)) {
    const bool side = (e.second - e.first == 1) || (e.first == 0 && e.second == 3);
    CHECK(sol.values[static_cast<std::size_t>(pair_index(4, e.first, e.second))] == (side ? Rational(1, 2) : 0));
  }

  sol = solve(build_weighted_primal(canonical_ranges(triangle()), 1));
  REQUIRE(sol.optimal());
  for (const auto& v : sol.values) CHECK(v == Rational(1, 2));

  CHECK_THROWS(build_weighted_primal(explicit_ranges(3, {{0}, {1}}), 1));
}

TEST_CASE("edge lengths are 60-bit lower approximations") {
  const auto pts = points({{0, 0}, {1, 0}, {0, 1}});
  const auto len = edge_lengths(pts);
  CHECK(len[0] == 1);
  CHECK(len[2] * len[2] <= 2);
  CHECK((len[2] + power_of_two_inverse(60)) * (len[2] + power_of_two_inverse(60)) > 2);
}

TEST_CASE("minimal feasible t") {
  CHECK(min_feasible_t(canonical_ranges(points({{0, 0}, {1, 0}}))) == 1);
  CHECK(min_feasible_t(canonical_ranges(triangle())) == 1);
  CHECK(min_feasible_t(canonical_ranges(unit_square())) == 1);
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 9, 4));
  const Rational exact = min_feasible_t(space);
  const Rational integer = min_feasible_t(space, ThresholdMode::Integer);
  CHECK(integer == ceil(exact));
  CHECK(solve(build_primal(space, exact)).optimal());
  CHECK(solve(build_primal(space, exact - Rational(1, 1000))).status == LPStatus::Infeasible);
}

TEST_CASE("strong duality and agreement with the dense exact solver") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto space = canonical_ranges(generate(GeneratorKind::Uniform, 6, seed));
    const Rational t = 2;
    const auto p = build_primal(space, t);
    const auto d = build_dual(space, t);
    const auto ps = solve(p);
    const auto ds = solve(d);
    REQUIRE(ps.optimal());
    REQUIRE(ds.optimal());
    CHECK(ps.objective == ds.objective);
    CHECK(is_primal_feasible(p, ps.values));
    CHECK(is_dual_feasible(p, ps.duals));
    CHECK(dual_objective_value(p, ps.duals) == ps.objective);
    CHECK(solve_dense_exact(p).objective == ps.objective);
    CHECK(solve_dense_exact(build_separation(space)).objective == solve(build_separation(space)).objective);
  }
}

TEST_CASE("solver is deterministic") {
  const auto space = canonical_ranges(generate(GeneratorKind::Grid, 16, 0));
  const auto a = solve(build_primal(space, 3));
  const auto b = solve(build_primal(space, 3));
  CHECK(a.values == b.values);
}

TEST_CASE("LP text export") {
  std::ostringstream os;
  write_lp_text(os, build_primal(canonical_ranges(triangle()), Rational(3, 2)));
  const auto text = os.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("range_0:") != std::string::npos);
  CHECK(text.find("<= 3/2") != std::string::npos);
  CHECK(text.find("cover_2:") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("primal at the exact threshold of a degenerate grid subset") {
  const auto grid = canonical_ranges(generate(GeneratorKind::Grid, 64, 0));
  const std::vector<Index> keep{0,  5,  6,  7,  11, 12, 13, 14, 19, 22, 23, 24, 25, 26, 29, 30, 35,
                                36, 37, 38, 39, 41, 42, 43, 51, 52, 53, 54, 55, 56, 57, 58, 59, 62};
  const auto sub = restrict_to(grid, keep);
  const Rational t = min_feasible_t(sub);
  const auto p = build_primal(sub, t);
  const auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(is_primal_feasible(p, s.values));
  CHECK(dual_objective_value(p, s.duals) == s.objective);
}
