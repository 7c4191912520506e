#pragma once

#include <cstdint>
#include <utility>

#include "crossforest/lp.hpp"

namespace crossforest {

struct RoundingStats {
  Index components = 0;
  Index singletons = 0;
  Index crossing = 0;
  Index retries = 0;
};

/// Includes pair pq when y_pq >= 1, else with probability y_pq. Pair k consumes draw k
/// of the seed's stream. `values` may be longer than the pair count (extra columns are ignored).
EdgeSet randomized_round(const std::vector<Rational>& values, Index n, std::uint64_t seed);
EdgeSet randomized_round(const FractionalSolution& sol, const RangeSpace& space, std::uint64_t seed);

RoundingStats rounding_stats(const EdgeSet& edges, const RangeSpace& space, Index retries = 0);

/// Rounds with seed, derive_seed(seed), ... until components <= (19/20) n. Throws
/// AlgorithmFailure after 1 + max_retries unsuccessful attempts.
inline constexpr Index kDefaultMaxRetries = 64;
std::pair<EdgeSet, RoundingStats> round_until_reduced(const FractionalSolution& sol, const RangeSpace& space,
                                                      std::uint64_t seed, Index max_retries = kDefaultMaxRetries);

/// Pairs whose segments cross properly, among the support {pq : x_pq > 0}.
std::vector<std::pair<Edge, Edge>> support_crossings(const std::vector<Rational>& values, const PointSet& points);

/// F = {pq : 12 x_pq >= 1} after checking that the support of x is non-crossing.
/// Throws DegenerateInput when two support segments cross, DimensionMismatch when d != 2.
EdgeSet deterministic_planar_round(const FractionalSolution& sol, const PointSet& points);

}  // namespace crossforest
