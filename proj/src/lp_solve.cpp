#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "crossforest/lp.hpp"
#include "crossforest/tableau_simplex.hpp"
#include "standard_form.hpp"

namespace crossforest {

namespace detail {

StandardForm to_standard_form(const LPInstance& lp) {
  StandardForm sf;
  sf.n = lp.num_variables();
  sf.minimize = lp.sense == Sense::Minimize;
  sf.cost.resize(static_cast<std::size_t>(sf.n));
  Integer den = 1;
  for (Index j = 0; j < sf.n; ++j) {
    const Rational& c = lp.objective[static_cast<std::size_t>(j)];
    sf.cost[static_cast<std::size_t>(j)] = sf.minimize ? Rational(-c) : c;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  sf.cost_scale = den;
  sf.int_cost.resize(static_cast<std::size_t>(sf.n));
  for (Index j = 0; j < sf.n; ++j)
    sf.int_cost[static_cast<std::size_t>(j)] = Rational(sf.cost[static_cast<std::size_t>(j)] * sf.cost_scale).get_num();

  for (Index i = 0; i < lp.num_rows(); ++i) {
    const Constraint& c = lp.rows[static_cast<std::size_t>(i)];
    Integer l = 1, g = 0;
    for (const auto& a : c.coefficients) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    for (const auto& a : c.coefficients) {
      const Integer v = Rational(a * l).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0) g = 1;
    Rational scale(l, g);
    scale.canonicalize();
    auto emit = [&](int orientation) {
      StdRow row;
      row.source = i;
      row.orientation = orientation;
      row.scale = scale;
      row.rhs = c.rhs * scale * orientation;
      for (std::size_t k = 0; k < c.columns.size(); ++k) {
        Rational v = c.coefficients[k] * scale * orientation;
        if (sgn(v) == 0) continue;
        if (!mpz_fits_slong_p(v.get_num_mpz_t()))
          throw std::overflow_error("row " + c.name + ": scaled coefficient exceeds 64 bits");
        row.cols.push_back(c.columns[k]);
        row.coefs.push_back(v.get_num().get_si());
      }
      sf.rows.push_back(std::move(row));
    };
    if (c.relation != Relation::GreaterEqual) emit(1);
    if (c.relation != Relation::LessEqual) emit(-1);
  }

  sf.columns.resize(static_cast<std::size_t>(sf.n));
  for (Index i = 0; i < sf.m(); ++i) {
    const auto& r = sf.rows[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < r.cols.size(); ++k) {
      auto& col = sf.columns[static_cast<std::size_t>(r.cols[k])];
      col.rows.push_back(i);
      col.coefs.push_back(r.coefs[k]);
    }
  }
  return sf;
}

}  // namespace detail

namespace {

using detail::ExactResult;
using detail::ExactStatus;
using detail::StandardForm;

constexpr Index kDenseRowLimit = 600;
constexpr double kFeasTol = 1e-9;
constexpr double kRelaxTol = 1e-7;

/// Floating-point simplex over a growing working set of rows.
class FloatDriver {
 public:
  /// `relax` widens every right-hand side by relax * (1 + |b_i|).
  explicit FloatDriver(const StandardForm& sf, double relax = 0)
      : sf_(sf), relax_(relax), tab_(sf.n, float_costs(sf)), active_(static_cast<std::size_t>(sf.m()), 0),
        norm_(static_cast<std::size_t>(sf.m()), 0.0) {
    for (Index i = 0; i < sf.m(); ++i) {
      double s = 0;
      for (auto a : sf.rows[static_cast<std::size_t>(i)].coefs) s += static_cast<double>(a) * static_cast<double>(a);
      norm_[static_cast<std::size_t>(i)] = std::sqrt(std::max(s, 1.0));
    }
    batch_ = 64 + sf.m() / 32;
  }

  Index activate(const std::vector<Index>& rows) {
    Index added = 0;
    for (Index r : rows)
      if (!active_[static_cast<std::size_t>(r)]) {
        add(r);
        ++added;
      }
    return added;
  }

  TableauStatus run(SolveStats& stats) {
    if (first_) {
      first_ = false;
      initial_rows();
    }
    for (;;) {
      const TableauStatus st = tab_.optimize();
      stats.float_pivots = tab_.pivots();
      stats.active_rows = tab_.rows();
      if (st == TableauStatus::Optimal) {
        const auto x = tab_.primal();
        if (add_worst([&](Index i) { return activity(i, x) - rhs(i); })) {
          ++stats.row_rounds;
          continue;
        }
        return st;
      }
      if (st == TableauStatus::Unbounded) {
        const auto r = tab_.ray();
        if (add_worst([&](Index i) { return activity(i, r); })) {
          ++stats.row_rounds;
          continue;
        }
        return st;
      }
      return st;
    }
  }

  /// Basis in the exact solver's ids: structural j, slack of row i is n + i.
  std::vector<Index> basis() const {
    std::vector<Index> out;
    std::vector<char> slack_basic(static_cast<std::size_t>(sf_.m()), 0);
    const auto& b = tab_.basis();
    for (std::size_t r = 0; r < b.size(); ++r) {
      Index v = b[r];
      if (v == TableauSimplex<double>::kArtificial) v = sf_.n + static_cast<Index>(r);
      if (v < sf_.n) {
        out.push_back(v);
      } else {
        const Index row = local_[static_cast<std::size_t>(v - sf_.n)];
        slack_basic[static_cast<std::size_t>(row)] = 1;
      }
    }
    for (Index i = 0; i < sf_.m(); ++i)
      if (!active_[static_cast<std::size_t>(i)] || slack_basic[static_cast<std::size_t>(i)]) out.push_back(sf_.n + i);
    return out;
  }

 private:
  static std::vector<double> float_costs(const StandardForm& sf) {
    std::vector<double> c(static_cast<std::size_t>(sf.n));
    for (Index j = 0; j < sf.n; ++j) c[static_cast<std::size_t>(j)] = sf.cost[static_cast<std::size_t>(j)].get_d();
    return c;
  }

  double rhs(Index i) const { return sf_.rows[static_cast<std::size_t>(i)].rhs.get_d(); }

  double activity(Index i, const std::vector<double>& x) const {
    const auto& r = sf_.rows[static_cast<std::size_t>(i)];
    double s = 0;
    for (std::size_t k = 0; k < r.cols.size(); ++k)
      s += static_cast<double>(r.coefs[k]) * x[static_cast<std::size_t>(r.cols[k])];
    return s;
  }

  void add(Index i) {
    const auto& r = sf_.rows[static_cast<std::size_t>(i)];
    std::vector<double> vals(r.coefs.begin(), r.coefs.end());
    tab_.add_row(r.cols, vals, rhs(i) + relax_ * (1.0 + std::abs(rhs(i))));
    active_[static_cast<std::size_t>(i)] = 1;
    local_.push_back(i);
  }

  template <class Excess>
  bool add_worst(Excess&& excess) {
    std::vector<std::pair<double, Index>> found;
    for (Index i = 0; i < sf_.m(); ++i) {
      if (active_[static_cast<std::size_t>(i)]) continue;
      const double v = excess(i);
      if (v > kFeasTol * (1.0 + std::abs(rhs(i)))) found.emplace_back(-v / norm_[static_cast<std::size_t>(i)], i);
    }
    if (found.empty()) return false;
    const auto take = std::min<std::size_t>(found.size(), static_cast<std::size_t>(batch_));
    std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(take), found.end());
    for (std::size_t k = 0; k < take; ++k) add(found[k].second);
    return true;
  }

  void initial_rows() {
    const Index m = sf_.m();
    if (m <= kDenseRowLimit) {
      for (Index i = 0; i < m; ++i) add(i);
      return;
    }
    // Rows with a negative right-hand side cut off the origin; keep them when few.
    std::vector<Index> negative;
    for (Index i = 0; i < m; ++i)
      if (sgn(sf_.rows[static_cast<std::size_t>(i)].rhs) < 0) negative.push_back(i);
    if (static_cast<Index>(negative.size()) <= kDenseRowLimit / 2) activate(negative);

    // Greedy blocking rows so that no improving column starts out unbounded.
    std::vector<char> need(static_cast<std::size_t>(sf_.n), 0);
    Index open = 0;
    for (Index j = 0; j < sf_.n; ++j)
      if (sgn(sf_.cost[static_cast<std::size_t>(j)]) > 0) {
        need[static_cast<std::size_t>(j)] = 1;
        ++open;
      }
    for (Index i = 0; i < m; ++i)
      if (active_[static_cast<std::size_t>(i)]) open -= cover(i, need);
    auto score = [&](Index i) {
      const auto& r = sf_.rows[static_cast<std::size_t>(i)];
      Index s = 0;
      for (std::size_t k = 0; k < r.cols.size(); ++k)
        if (r.coefs[k] > 0 && need[static_cast<std::size_t>(r.cols[k])]) ++s;
      return s;
    };
    std::priority_queue<std::pair<Index, Index>> heap;
    for (Index i = 0; i < m && open > 0; ++i)
      if (!active_[static_cast<std::size_t>(i)]) heap.emplace(score(i), -i);
    while (open > 0 && !heap.empty()) {
      auto [s, neg_i] = heap.top();
      heap.pop();
      const Index i = -neg_i;
      const Index now = score(i);
      if (now == 0) continue;
      if (now < s) {
        heap.emplace(now, neg_i);
        continue;
      }
      add(i);
      open -= cover(i, need);
    }
  }

  Index cover(Index i, std::vector<char>& need) const {
    const auto& r = sf_.rows[static_cast<std::size_t>(i)];
    Index c = 0;
    for (std::size_t k = 0; k < r.cols.size(); ++k)
      if (r.coefs[k] > 0 && need[static_cast<std::size_t>(r.cols[k])]) {
        need[static_cast<std::size_t>(r.cols[k])] = 0;
        ++c;
      }
    return c;
  }

  const StandardForm& sf_;
  double relax_;
  TableauSimplex<double> tab_;
  std::vector<char> active_;
  std::vector<double> norm_;
  std::vector<Index> local_;
  Index batch_ = 64;
  bool first_ = true;
};

// Maps internal row multipliers back onto the source rows.
std::vector<Rational> source_multipliers(const LPInstance& lp, const StandardForm& sf, const std::vector<Rational>& u) {
  std::vector<Rational> w(static_cast<std::size_t>(lp.num_rows()));
  for (Index k = 0; k < sf.m(); ++k) {
    const auto& row = sf.rows[static_cast<std::size_t>(k)];
    const Rational& uk = u[static_cast<std::size_t>(k)];
    if (sgn(uk) == 0) continue;
    w[static_cast<std::size_t>(row.source)] += uk * row.scale * row.orientation;
  }
  if (sf.minimize)
    for (auto& v : w) v = -v;
  return w;
}

FractionalSolution assemble(const LPInstance& lp, const StandardForm& sf, const ExactResult& res, SolveStats stats) {
  FractionalSolution out;
  out.stats = stats;
  out.stats.exact_pivots += res.pivots;
  switch (res.status) {
    case ExactStatus::Optimal:
      out.status = LPStatus::Optimal;
      out.values = res.x;
      out.objective = objective_value(lp, out.values);
      out.duals = source_multipliers(lp, sf, res.u);
      break;
    case ExactStatus::Infeasible:
      out.status = LPStatus::Infeasible;
      out.duals = source_multipliers(lp, sf, res.u);
      break;
    case ExactStatus::Unbounded:
      out.status = LPStatus::Unbounded;
      out.values = res.x;
      out.objective = objective_value(lp, out.values);
      out.ray = res.ray;
      break;
  }
  return out;
}

}  // namespace

FractionalSolution solve(const LPInstance& lp) {
  lp.validate();
  const StandardForm sf = detail::to_standard_form(lp);
  SolveStats stats;
  std::vector<Index> warm;
  // A zero-volume feasible region can read as infeasible in floating point; the
  // second pass widens the rows slightly and certifies its basis against the originals.
  for (double relax : {0.0, kRelaxTol}) {
    FloatDriver driver(sf, relax);
    TableauStatus st{};
    for (int round = 0;; ++round) {
      st = driver.run(stats);
      if (st != TableauStatus::Optimal) break;
      auto check = detail::check_basis(sf, driver.basis());
      if (check.valid && check.primal_feasible && check.dual_feasible)
        return assemble(lp, sf, check.result, stats);
      if (check.valid && !check.violated_rows.empty() && round < 8 && driver.activate(check.violated_rows) > 0) {
        ++stats.row_rounds;
        continue;
      }
      break;
    }
    if (relax == 0 || st == TableauStatus::Optimal) warm = driver.basis();
    if (st != TableauStatus::Infeasible) break;
  }
  stats.exact_fallback = true;
  return assemble(lp, sf, detail::exact_simplex(sf, warm), stats);
}

FractionalSolution solve_dense_exact(const LPInstance& lp) {
  lp.validate();
  const StandardForm sf = detail::to_standard_form(lp);
  TableauSimplex<Rational> tab(sf.n, sf.cost);
  for (const auto& r : sf.rows) {
    std::vector<Rational> vals;
    for (auto a : r.coefs) vals.emplace_back(static_cast<long>(a));
    tab.add_row(r.cols, vals, r.rhs);
  }
  ExactResult res;
  switch (tab.optimize()) {
    case TableauStatus::Optimal:
      res.status = ExactStatus::Optimal;
      res.x = tab.primal();
      res.u = tab.duals();
      break;
    case TableauStatus::Infeasible:
      res.status = ExactStatus::Infeasible;
      res.u = tab.farkas();
      break;
    case TableauStatus::Unbounded:
      res.status = ExactStatus::Unbounded;
      res.x = tab.primal();
      res.ray = tab.ray();
      break;
    case TableauStatus::IterationLimit:
      throw AlgorithmFailure("dense exact simplex exceeded its pivot budget");
  }
  SolveStats stats;
  stats.exact_pivots = tab.pivots();
  stats.active_rows = tab.rows();
  return assemble(lp, sf, res, stats);
}

Rational objective_value(const LPInstance& lp, const std::vector<Rational>& values) {
  Rational s = 0;
  for (Index j = 0; j < lp.num_variables(); ++j) s += lp.objective[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(j)];
  return s;
}

Rational dual_objective_value(const LPInstance& lp, const std::vector<Rational>& duals) {
  Rational s = 0;
  for (Index i = 0; i < lp.num_rows(); ++i) s += lp.rows[static_cast<std::size_t>(i)].rhs * duals[static_cast<std::size_t>(i)];
  return s;
}

bool is_primal_feasible(const LPInstance& lp, const std::vector<Rational>& values) {
  if (static_cast<Index>(values.size()) != lp.num_variables()) return false;
  for (const auto& v : values)
    if (sgn(v) < 0) return false;
  for (const auto& r : lp.rows) {
    Rational s = 0;
    for (std::size_t k = 0; k < r.columns.size(); ++k) s += r.coefficients[k] * values[static_cast<std::size_t>(r.columns[k])];
    const int c = cmp(s, r.rhs);
    if ((r.relation == Relation::LessEqual && c > 0) || (r.relation == Relation::GreaterEqual && c < 0) ||
        (r.relation == Relation::Equal && c != 0))
      return false;
  }
  return true;
}

namespace {

// Sign conventions plus y.A compared against `target` (>= for max, <= for min).
bool multipliers_dominate(const LPInstance& lp, const std::vector<Rational>& duals,
                          const std::vector<Rational>& target) {
  if (static_cast<Index>(duals.size()) != lp.num_rows()) return false;
  const bool max = lp.sense == Sense::Maximize;
  std::vector<Rational> reduced(static_cast<std::size_t>(lp.num_variables()));
  for (Index i = 0; i < lp.num_rows(); ++i) {
    const auto& r = lp.rows[static_cast<std::size_t>(i)];
    const Rational& y = duals[static_cast<std::size_t>(i)];
    const int s = sgn(y);
    // max: <= rows need y >= 0, >= rows y <= 0; min: reversed
    if (r.relation == Relation::LessEqual && (max ? s < 0 : s > 0)) return false;
    if (r.relation == Relation::GreaterEqual && (max ? s > 0 : s < 0)) return false;
    if (s == 0) continue;
    for (std::size_t k = 0; k < r.columns.size(); ++k)
      reduced[static_cast<std::size_t>(r.columns[k])] += y * r.coefficients[k];
  }
  for (Index j = 0; j < lp.num_variables(); ++j) {
    const int c = cmp(reduced[static_cast<std::size_t>(j)], target[static_cast<std::size_t>(j)]);
    if (max ? c < 0 : c > 0) return false;
  }
  return true;
}

}  // namespace

bool is_dual_feasible(const LPInstance& lp, const std::vector<Rational>& duals) {
  return multipliers_dominate(lp, duals, lp.objective);
}

bool is_farkas_certificate(const LPInstance& lp, const std::vector<Rational>& duals) {
  const std::vector<Rational> zero(static_cast<std::size_t>(lp.num_variables()));
  if (!multipliers_dominate(lp, duals, zero)) return false;
  const int s = sgn(dual_objective_value(lp, duals));
  return lp.sense == Sense::Maximize ? s < 0 : s > 0;
}

}  // namespace crossforest
