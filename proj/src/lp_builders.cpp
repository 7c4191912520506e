#include <ostream>
#include <stdexcept>

#include "crossforest/lp.hpp"

namespace crossforest {

Index LPInstance::add_variable(std::string name, Rational cost) {
  objective.push_back(std::move(cost));
  variable_names.push_back(std::move(name));
  return num_variables() - 1;
}

void LPInstance::add_row(Constraint row) { rows.push_back(std::move(row)); }

void LPInstance::validate() const {
  if (variable_names.size() != objective.size())
    throw std::invalid_argument("LP has " + std::to_string(objective.size()) + " costs but " +
                                std::to_string(variable_names.size()) + " names");
  for (const auto& r : rows) {
    if (r.columns.size() != r.coefficients.size())
      throw std::invalid_argument("row " + r.name + ": column/coefficient count mismatch");
    for (std::size_t k = 0; k < r.columns.size(); ++k) {
      if (r.columns[k] < 0 || r.columns[k] >= num_variables())
        throw std::invalid_argument("row " + r.name + " references missing column " + std::to_string(r.columns[k]));
      if (k > 0 && r.columns[k] <= r.columns[k - 1])
        throw std::invalid_argument("row " + r.name + ": columns must be strictly ascending");
    }
  }
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "infeasible";
}

namespace {

std::string edge_name(Index i, Index j) { return "y_" + std::to_string(i) + "_" + std::to_string(j); }

void require_pairs(const RangeSpace& space) {
  if (space.ground_size() < 2) throw std::invalid_argument("LP needs a ground set of at least 2 points");
}

// Range rows (sum <= t) and cover rows (sum >= 1) over the edge columns; `t_column`, when
// set, moves t to the left-hand side as a variable.
void add_edge_constraints(LPInstance& lp, const RangeSpace& space, const Rational& t, Index t_column) {
  const Index n = space.ground_size();
  const auto crossing = space.crossing_pairs();
  for (std::size_t k = 0; k < crossing.size(); ++k) {
    Constraint row;
    row.name = "range_" + std::to_string(k);
    row.columns = crossing[k];
    row.coefficients.assign(row.columns.size(), Rational(1));
    row.relation = Relation::LessEqual;
    if (t_column >= 0) {
      row.columns.push_back(t_column);
      row.coefficients.emplace_back(-1);
      row.rhs = 0;
    } else {
      row.rhs = t;
    }
    lp.add_row(std::move(row));
  }
  for (Index p = 0; p < n; ++p) {
    Constraint row;
    row.name = "cover_" + std::to_string(p);
    for (Index q = 0; q < n; ++q)
      if (q != p) row.columns.push_back(q < p ? pair_index(n, q, p) : pair_index(n, p, q));
    row.coefficients.assign(row.columns.size(), Rational(1));
    row.relation = Relation::GreaterEqual;
    row.rhs = 1;
    lp.add_row(std::move(row));
  }
}

// Ranges crossed by each pair, ascending.
std::vector<std::vector<Index>> ranges_per_pair(const RangeSpace& space) {
  const Index n = space.ground_size();
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n * (n - 1) / 2));
  const auto crossing = space.crossing_pairs();
  for (std::size_t k = 0; k < crossing.size(); ++k)
    for (Index e : crossing[k]) out[static_cast<std::size_t>(e)].push_back(static_cast<Index>(k));
  return out;
}

}  // namespace

LPInstance build_primal(const RangeSpace& space, const Rational& t) {
  require_pairs(space);
  LPInstance lp;
  lp.sense = Sense::Maximize;
  for (const auto& e : all_pairs(space.ground_size())) lp.add_variable(edge_name(e.first, e.second), 1);
  add_edge_constraints(lp, space, t, -1);
  return lp;
}

LPInstance build_weighted_primal(const RangeSpace& space, const Rational& t) {
  require_pairs(space);
  if (!space.is_geometric()) throw std::invalid_argument("weighted LP needs point coordinates");
  LPInstance lp;
  lp.sense = Sense::Minimize;
  const auto lengths = edge_lengths(space.points());
  const auto pairs = all_pairs(space.ground_size());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    lp.add_variable("x_" + std::to_string(pairs[k].first) + "_" + std::to_string(pairs[k].second), lengths[k]);
  add_edge_constraints(lp, space, t, -1);
  return lp;
}

LPInstance build_dual(const RangeSpace& space, const Rational& t) {
  require_pairs(space);
  const Index n = space.ground_size();
  const Index L = space.size();
  LPInstance lp;
  lp.sense = Sense::Minimize;
  for (Index k = 0; k < L; ++k) lp.add_variable("z_r" + std::to_string(k), t);
  for (Index p = 0; p < n; ++p) lp.add_variable("z_p" + std::to_string(p), -1);
  const auto per_pair = ranges_per_pair(space);
  const auto pairs = all_pairs(n);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    Constraint row;
    row.name = "pair_" + std::to_string(pairs[e].first) + "_" + std::to_string(pairs[e].second);
    row.columns = per_pair[e];
    row.coefficients.assign(row.columns.size(), Rational(1));
    row.columns.push_back(L + pairs[e].first);
    row.columns.push_back(L + pairs[e].second);
    row.coefficients.emplace_back(-1);
    row.coefficients.emplace_back(-1);
    row.relation = Relation::GreaterEqual;
    row.rhs = 1;
    lp.add_row(std::move(row));
  }
  return lp;
}

LPInstance build_separation(const RangeSpace& space) {
  require_pairs(space);
  const Index n = space.ground_size();
  LPInstance lp;
  lp.sense = Sense::Minimize;
  for (Index k = 0; k < space.size(); ++k) lp.add_variable("z_r" + std::to_string(k), 1);
  const auto per_pair = ranges_per_pair(space);
  const auto pairs = all_pairs(n);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    Constraint row;
    row.name = "pair_" + std::to_string(pairs[e].first) + "_" + std::to_string(pairs[e].second);
    row.columns = per_pair[e];
    row.coefficients.assign(row.columns.size(), Rational(1));
    row.relation = Relation::GreaterEqual;
    row.rhs = 1;
    lp.add_row(std::move(row));
  }
  return lp;
}

LPInstance build_threshold(const RangeSpace& space) {
  require_pairs(space);
  LPInstance lp;
  lp.sense = Sense::Minimize;
  for (const auto& e : all_pairs(space.ground_size())) lp.add_variable(edge_name(e.first, e.second), 0);
  const Index t = lp.add_variable("t", 1);
  add_edge_constraints(lp, space, 0, t);
  return lp;
}

std::vector<Rational> edge_lengths(const PointSet& points) {
  std::vector<Rational> out;
  const Index n = points.size();
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      out.push_back(sqrt_lower(squared_distance(points[i].coords, points[j].coords), kLengthBits));
  return out;
}

Rational min_feasible_t(const RangeSpace& space, ThresholdMode mode) {
  if (space.ground_size() < 2) return 0;
  if (mode == ThresholdMode::Exact) {
    const auto sol = solve(build_threshold(space));
    if (!sol.optimal()) throw AlgorithmFailure("threshold LP not solved to optimality");
    return sol.objective;
  }
  Index lo = 1, hi = space.ground_size();
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    if (solve(build_primal(space, mid)).status != LPStatus::Infeasible)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void write_lp_text(std::ostream& os, const LPInstance& lp) {
  auto term = [&](const Rational& c, const std::string& name) {
    os << (sgn(c) < 0 ? " - " : " + ") << to_string(Rational(abs(c))) << ' ' << name;
  };
  os << "\\ " << lp.num_variables() << " variables, " << lp.num_rows() << " rows\n";
  os << (lp.sense == Sense::Maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  for (Index j = 0; j < lp.num_variables(); ++j)
    if (sgn(lp.objective[static_cast<std::size_t>(j)]) != 0)
      term(lp.objective[static_cast<std::size_t>(j)], lp.variable_names[static_cast<std::size_t>(j)]);
  os << "\nSubject To\n";
  for (const auto& r : lp.rows) {
    os << ' ' << r.name << ':';
    for (std::size_t k = 0; k < r.columns.size(); ++k)
      term(r.coefficients[k], lp.variable_names[static_cast<std::size_t>(r.columns[k])]);
    switch (r.relation) {
      case Relation::LessEqual: os << " <= "; break;
      case Relation::GreaterEqual: os << " >= "; break;
      case Relation::Equal: os << " = "; break;
    }
    os << to_string(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& name : lp.variable_names) os << ' ' << name << " >= 0\n";
  os << "End\n";
}

}  // namespace crossforest
