#pragma once

#include <cstdint>
#include <vector>

#include "crossforest/lp.hpp"

namespace crossforest::detail {

/// One row a.x <= b of the internal maximization form. Coefficients are integers: the
/// source row times `scale * orientation`.
struct StdRow {
  std::vector<Index> cols;
  std::vector<std::int64_t> coefs;
  Rational rhs;
  Index source = 0;
  int orientation = 1;  // -1 for a negated >= row or the lower half of an equality
  Rational scale = 1;   // positive
};

struct StdColumn {
  std::vector<Index> rows;
  std::vector<std::int64_t> coefs;
};

/// max c.x  s.t.  rows, x >= 0.
struct StandardForm {
  Index n = 0;
  std::vector<Rational> cost;
  std::vector<Integer> int_cost;  // cost * cost_scale
  Rational cost_scale = 1;
  bool minimize = false;  // the source minimized; cost holds the negated objective
  std::vector<StdRow> rows;
  std::vector<StdColumn> columns;

  Index m() const { return static_cast<Index>(rows.size()); }
};

StandardForm to_standard_form(const LPInstance& lp);

enum class ExactStatus { Optimal, Infeasible, Unbounded };

struct ExactResult {
  ExactStatus status = ExactStatus::Infeasible;
  std::vector<Rational> x;     // structural values
  std::vector<Rational> u;     // per internal row; optimal duals or Farkas multipliers
  std::vector<Rational> ray;   // structural recession direction
  Index pivots = 0;
};

/// Basis given by variable ids: structural j in [0, n), slack of internal row i is n + i.
struct BasisCheck {
  bool valid = false;         // basis matrix nonsingular
  bool primal_feasible = false;
  bool dual_feasible = false;
  std::vector<Index> violated_rows;  // rows with negative slack
  ExactResult result;          // filled when both feasible
};

BasisCheck check_basis(const StandardForm& sf, const std::vector<Index>& basic);

/// Exact revised simplex with Bland's rule, warm-started from `basic` (any set of m ids;
/// a singular or wrongly sized basis falls back to the slack basis).
ExactResult exact_simplex(const StandardForm& sf, std::vector<Index> basic);

}  // namespace crossforest::detail
