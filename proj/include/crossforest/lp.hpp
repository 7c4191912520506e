#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crossforest/edges.hpp"
#include "crossforest/range_space.hpp"

namespace crossforest {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::string name;
  std::vector<Index> columns;  // ascending
  std::vector<Rational> coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// Linear program over nonnegative variables.
struct LPInstance {
  Sense sense = Sense::Maximize;
  std::vector<Rational> objective;
  std::vector<std::string> variable_names;
  std::vector<Constraint> rows;

  Index num_variables() const { return static_cast<Index>(objective.size()); }
  Index num_rows() const { return static_cast<Index>(rows.size()); }

  /// Appends a variable and returns its column.
  Index add_variable(std::string name, Rational cost = 0);
  void add_row(Constraint row);

  /// Throws std::invalid_argument when a row references a missing column or is malformed.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

struct SolveStats {
  Index float_pivots = 0;
  Index exact_pivots = 0;
  Index row_rounds = 0;     // lazy-row activation rounds
  Index active_rows = 0;    // rows in the final floating-point working set
  bool exact_fallback = false;
};

/// Exact result of `solve`.
///
///  - Optimal: `values` is a primal optimum and `duals` a dual vector certifying it
///    (sign convention: for a maximization, <= rows carry multipliers >= 0 and >= rows
///    multipliers <= 0; reversed for minimization), objective = sum(duals * rhs).
///  - Infeasible: `duals` is a Farkas multiplier vector.
///  - Unbounded: `values` is feasible and `ray` is an improving recession direction.
struct FractionalSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> values;
  Rational objective;
  std::vector<Rational> duals;
  std::vector<Rational> ray;
  SolveStats stats;

  bool optimal() const { return status == LPStatus::Optimal; }
};

/// Exact solve: a floating-point tableau simplex proposes a basis, which is then proven
/// optimal (or infeasible/unbounded) in exact arithmetic. When the proof fails an exact
/// revised simplex with Bland's rule continues from that basis.
FractionalSolution solve(const LPInstance& lp);

/// Exact dense-tableau simplex with Bland's rule throughout. Slow; used for small programs
/// and as an independent route in tests.
FractionalSolution solve_dense_exact(const LPInstance& lp);

/// Exact feasibility/optimality checks used by certificates.
bool is_primal_feasible(const LPInstance& lp, const std::vector<Rational>& values);
bool is_dual_feasible(const LPInstance& lp, const std::vector<Rational>& duals);
/// Infeasibility proof: multipliers with the optimal-dual sign convention whose combination
/// of rows has all coefficients on the wrong side of zero and a right-hand side that cannot
/// be met (max: y.A >= 0, y.b < 0; min: y.A <= 0, y.b > 0).
bool is_farkas_certificate(const LPInstance& lp, const std::vector<Rational>& duals);
Rational objective_value(const LPInstance& lp, const std::vector<Rational>& values);
Rational dual_objective_value(const LPInstance& lp, const std::vector<Rational>& duals);

// ---------------------------------------------------------------------------------------
// Programs over a range space. Edge variables come in all_pairs(n) order.

/// max sum y_pq  s.t.  sum_{pq crossing S} y_pq <= t (each range), sum_q y_pq >= 1 (each p).
/// Rows: ranges first, then one cover row per point.
LPInstance build_primal(const RangeSpace& space, const Rational& t);

/// Same constraints, minimizing sum |p-q| x_pq with 60-bit lengths.
LPInstance build_weighted_primal(const RangeSpace& space, const Rational& t);

/// min t sum z_l - sum z_p  s.t.  sum_{l crossing pq} z_l - z_p - z_q >= 1 (each pair).
/// Variables: one per range, then one per point.
LPInstance build_dual(const RangeSpace& space, const Rational& t);

/// min sum z_l  s.t.  sum_{l crossing pq} z_l >= 1 (each pair).
LPInstance build_separation(const RangeSpace& space);

/// Primal constraints with t as an extra (last) variable, minimizing t.
LPInstance build_threshold(const RangeSpace& space);

/// Euclidean edge lengths rounded down to this many fractional bits.
inline constexpr unsigned kLengthBits = 60;
std::vector<Rational> edge_lengths(const PointSet& points);

enum class ThresholdMode { Exact, Integer };

/// Least t for which build_primal is feasible. Integer mode binary-searches t in [1, n].
Rational min_feasible_t(const RangeSpace& space, ThresholdMode mode = ThresholdMode::Exact);

/// Sectioned plain text: objective, rows, bounds; rationals as p/q.
void write_lp_text(std::ostream& os, const LPInstance& lp);

}  // namespace crossforest
