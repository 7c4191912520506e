#pragma once

#include <span>

#include "crossforest/pipeline.hpp"

namespace crossforest {

struct OracleResult {
  Index t_opt = 0;
  SpanningTree witness;
  std::uint64_t trees_examined = 0;
};

inline constexpr Index kOracleMaxPoints = 8;

/// Minimum crossing number over all labeled spanning trees (Pruefer enumeration). The
/// witness is the first minimizer in Pruefer order. n <= 8. Worker count comes from
/// CROSSING_FOREST_THREADS (default 1).
OracleResult brute_force_opt_tree(const RangeSpace& space);

/// Worker count from CROSSING_FOREST_THREADS, at least 1.
unsigned worker_count();

/// Tree encoded by a Pruefer sequence over 0..n-1 (n >= 2, sequence length n-2).
std::vector<Edge> pruefer_decode(std::span<const Index> sequence, Index n);

/// Rebuilds the primal and dual programs at t and checks, exactly, that both assignments
/// are feasible and their objectives agree.
bool check_duality_certificate(const RangeSpace& space, const Rational& t, const FractionalSolution& primal,
                               const FractionalSolution& dual);

struct SeparationCheck {
  Rational optimum;
  bool holds = false;  // optimum >= sqrt(n)/2
};

/// Solves the separation LP over the canonical ranges of a planar point set.
SeparationCheck check_separation_lower_bound(const PointSet& points);
SeparationCheck check_separation_lower_bound(const RangeSpace& space);

/// Every point of P has at least r(r+1)/2 arrangement vertices within crossing distance r.
/// Throws on precondition violations: non-planar input, |L| < 2r, parallel or concurrent
/// lines, a point on a line.
bool check_crossing_disk_lemma(std::span<const Hyperplane> lines, const PointSet& points, Index r);

}  // namespace crossforest
