#include "crossforest/rounding.hpp"

#include <stdexcept>

#include "crossforest/rng.hpp"

namespace crossforest {

bool uniform_below(std::uint64_t u, const Rational& p) {
  if (sgn(p) <= 0) return false;
  if (p >= 1) return true;
  // u / 2^64 < num / den  <=>  u * den < num * 2^64
  Integer lhs = Integer(static_cast<unsigned long>(u)) * p.get_den();
  Integer rhs = p.get_num();
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 64);
  return lhs < rhs;
}

EdgeSet randomized_round(const std::vector<Rational>& values, Index n, std::uint64_t seed) {
  std::vector<Edge> chosen;
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j, ++k) {
      const Rational& y = values[static_cast<std::size_t>(k)];
      const std::uint64_t u = draw(seed, static_cast<std::uint64_t>(k));
      if (y >= 1 || uniform_below(u, y)) chosen.emplace_back(i, j);
    }
  return EdgeSet(std::move(chosen), EdgeSource::Randomized, seed);
}

EdgeSet randomized_round(const FractionalSolution& sol, const RangeSpace& space, std::uint64_t seed) {
  const Index n = space.ground_size();
  if (static_cast<Index>(sol.values.size()) < n * (n - 1) / 2)
    throw std::invalid_argument("solution has fewer values than the ground set has pairs");
  return randomized_round(sol.values, n, seed);
}

RoundingStats rounding_stats(const EdgeSet& edges, const RangeSpace& space, Index retries) {
  RoundingStats s;
  const Index n = space.ground_size();
  s.components = count_components(n, edges.edges);
  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges.edges) touched[static_cast<std::size_t>(e.first)] = touched[static_cast<std::size_t>(e.second)] = 1;
  for (char c : touched)
    if (!c) ++s.singletons;
  s.crossing = crossing_number(edges, space);
  s.retries = retries;
  return s;
}

std::pair<EdgeSet, RoundingStats> round_until_reduced(const FractionalSolution& sol, const RangeSpace& space,
                                                      std::uint64_t seed, Index max_retries) {
  const Index n = space.ground_size();
  std::uint64_t s = seed;
  for (Index attempt = 0; attempt <= max_retries; ++attempt) {
    EdgeSet f = randomized_round(sol, space, s);
    const Index components = count_components(n, f.edges);
    if (20 * components <= 19 * n) {
      RoundingStats stats = rounding_stats(f, space, attempt);
      return {std::move(f), stats};
    }
    s = derive_seed(s);
  }
  throw AlgorithmFailure("rounding left more than 19/20 of the points disconnected after " +
                         std::to_string(max_retries + 1) + " attempts");
}

std::vector<std::pair<Edge, Edge>> support_crossings(const std::vector<Rational>& values, const PointSet& points) {
  if (points.dimension() != 2) throw DimensionMismatch("planar rounding needs points in the plane");
  const Index n = points.size();
  std::vector<Edge> support;
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j, ++k)
      if (sgn(values[static_cast<std::size_t>(k)]) > 0) support.emplace_back(i, j);
  std::vector<std::pair<Edge, Edge>> out;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const auto& e = support[a];
      const auto& f = support[b];
      if (segments_cross(points[e.first].coords, points[e.second].coords, points[f.first].coords,
                         points[f.second].coords))
        out.emplace_back(e, f);
    }
  return out;
}

EdgeSet deterministic_planar_round(const FractionalSolution& sol, const PointSet& points) {
  const Index n = points.size();
  if (static_cast<Index>(sol.values.size()) < n * (n - 1) / 2)
    throw std::invalid_argument("solution has fewer values than the point set has pairs");
  const auto crossings = support_crossings(sol.values, points);
  if (!crossings.empty()) {
    const auto& [e, f] = crossings.front();
    throw DegenerateInput("LP support is not planar: segments " + std::to_string(e.first) + "-" +
                          std::to_string(e.second) + " and " + std::to_string(f.first) + "-" +
                          std::to_string(f.second) + " cross");
  }
  std::vector<Edge> chosen;
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j, ++k)
      if (12 * sol.values[static_cast<std::size_t>(k)] >= 1) chosen.emplace_back(i, j);
  return EdgeSet(std::move(chosen), EdgeSource::DeterministicPlanar);
}

}  // namespace crossforest
