#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "crossforest/rational.hpp"

namespace crossforest {

enum class TableauStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// Dense condensed-tableau simplex for
///
///     max c.x   s.t.  a_i.x <= b_i (each row),  x >= 0.
///
/// Only nonbasic columns are stored. Rows can be appended after a solve; the next
/// `optimize` restores feasibility with the dual simplex when the basis is still dual
/// feasible, or with a single-artificial phase one otherwise.
///
/// Variable ids: structural j in [0, n), slack of row r is n + r, the artificial is -1.
/// With Scalar = double the solve runs on slightly perturbed costs and right-hand sides
/// (kept in a separate column and row, so they can be switched off and cleaned up at the
/// end). With an exact Scalar there is no tolerance and Bland's rule picks every pivot.
template <class Scalar>
class TableauSimplex {
 public:
  static constexpr bool kExact = !std::is_floating_point_v<Scalar>;
  static constexpr Index kArtificial = -1;

  struct Options {
    double tolerance = 1e-9;
    double pivot_tolerance = 1e-7;
    double drop_tolerance = 1e-11;
    double perturbation = 1e-6;
    Index stall_limit = 200;
    Index max_pivots = 0;  // 0: 50 * (rows + columns) per optimize call
  };

  TableauSimplex(Index num_columns, std::span<const Scalar> objective, Options options = {})
      : n_(num_columns), stride_(num_columns + 3), opt_(options) {
    obj_.assign(static_cast<std::size_t>(stride_), Scalar(0));
    objd_.assign(static_cast<std::size_t>(stride_), Scalar(0));
    phase_.assign(static_cast<std::size_t>(stride_), Scalar(0));
    for (Index j = 0; j < n_; ++j) {
      const Scalar& c = objective[static_cast<std::size_t>(j)];
      obj_[static_cast<std::size_t>(j)] = -c;
      if constexpr (!kExact)
        objd_[static_cast<std::size_t>(j)] = -opt_.perturbation * (1.0 + std::abs(c)) * jitter(2 * j + 1);
    }
    nonbasic_.resize(static_cast<std::size_t>(n_ + 1));
    for (Index j = 0; j < n_; ++j) nonbasic_[static_cast<std::size_t>(j)] = j;
    nonbasic_[static_cast<std::size_t>(n_)] = kArtificial;
    row_of_.assign(static_cast<std::size_t>(n_), -1);
    col_of_.resize(static_cast<std::size_t>(n_));
    for (Index j = 0; j < n_; ++j) col_of_[static_cast<std::size_t>(j)] = j;
  }

  Index rows() const { return m_; }
  Index columns() const { return n_; }
  Index pivots() const { return pivots_; }

  /// Appends a.x <= rhs given as sparse (column, coefficient) lists; returns the row index.
  Index add_row(std::span<const Index> cols, std::span<const Scalar> vals, const Scalar& rhs) {
    const std::size_t base = data_.size();
    data_.resize(base + static_cast<std::size_t>(stride_), Scalar(0));
    Scalar* row = data_.data() + base;
    row[rhs_col()] = rhs;
    if constexpr (!kExact) row[delta_col()] = opt_.perturbation * (1.0 + std::abs(rhs)) * jitter(2 * m_);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Index j = cols[k];
      const Scalar& a = vals[k];
      const Index r = row_of_[static_cast<std::size_t>(j)];
      if (r < 0) {
        row[col_of_[static_cast<std::size_t>(j)]] += a;
      } else {
        const Scalar* src = row_ptr(r);
        for (Index c = 0; c < stride_; ++c)
          if (!is_zero(src[c])) row[c] -= a * src[c];
      }
    }
    basic_.push_back(n_ + m_);
    return m_++;
  }

  /// Solves from the current basis. Floating-point runs finish on the unperturbed data.
  TableauStatus optimize() {
    budget_ = opt_.max_pivots > 0 ? opt_.max_pivots : 50 * (m_ + n_ + 1);
    spent_ = 0;
    if constexpr (kExact) return solve_core();
    perturb_rhs_ = perturb_cost_ = true;
    TableauStatus st = solve_core();
    if (st != TableauStatus::Optimal && st != TableauStatus::Unbounded) return st;
    // Cleanup passes can lose their way on badly degenerate data; the perturbed basis is
    // still a good proposal, so fall back to it.
    const State saved = save();
    const TableauStatus perturbed = st;
    perturb_rhs_ = false;
    if (st == TableauStatus::Optimal) {
      st = solve_core();
      if (st != TableauStatus::Optimal) return st == TableauStatus::IterationLimit ? restore(saved, perturbed) : st;
    }
    perturb_cost_ = false;
    st = solve_core();
    return st == TableauStatus::IterationLimit ? restore(saved, perturbed) : st;
  }

  /// Structural values of the current basic solution.
  std::vector<Scalar> primal() const {
    std::vector<Scalar> x(static_cast<std::size_t>(n_), Scalar(0));
    for (Index r = 0; r < m_; ++r) {
      const Index v = basic_[static_cast<std::size_t>(r)];
      if (v >= 0 && v < n_) x[static_cast<std::size_t>(v)] = rhs(r);
    }
    return x;
  }

  /// Row multipliers read off the objective row (reduced costs of the slacks).
  std::vector<Scalar> duals() const { return slack_prices(obj_); }

  /// After an Infeasible status: y >= 0 with y.A >= 0 and y.b < 0.
  std::vector<Scalar> farkas() const {
    if (farkas_row_ < 0) return slack_prices(phase_);
    std::vector<Scalar> y(static_cast<std::size_t>(m_), Scalar(0));
    for (Index c = 0; c <= n_; ++c) {
      const Index v = nonbasic_[static_cast<std::size_t>(c)];
      if (v >= n_) y[static_cast<std::size_t>(v - n_)] = at(farkas_row_, c);
    }
    const Index b = basic_[static_cast<std::size_t>(farkas_row_)];
    if (b >= n_) y[static_cast<std::size_t>(b - n_)] = Scalar(1);
    return y;
  }

  /// Improving direction over the structurals after an Unbounded status.
  std::vector<Scalar> ray() const {
    std::vector<Scalar> r(static_cast<std::size_t>(n_), Scalar(0));
    const Index v = nonbasic_[static_cast<std::size_t>(ray_col_)];
    if (v >= 0 && v < n_) r[static_cast<std::size_t>(v)] = Scalar(1);
    for (Index i = 0; i < m_; ++i) {
      const Index b = basic_[static_cast<std::size_t>(i)];
      if (b >= 0 && b < n_) r[static_cast<std::size_t>(b)] = -at(i, ray_col_);
    }
    return r;
  }

  /// Basic variable id per row.
  const std::vector<Index>& basis() const { return basic_; }

  Scalar objective_value() const { return obj_[static_cast<std::size_t>(rhs_col())]; }

 private:
  using RowMap = Eigen::Map<Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>;
  using ConstRowMap = Eigen::Map<const Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>;

  static constexpr double kBlandPivotShare = 0.1;

  struct State {
    std::vector<Scalar> data, obj, objd, phase;
    std::vector<Index> basic, nonbasic, row_of, col_of;
    Index ray_col;
  };

  State save() const { return {data_, obj_, objd_, phase_, basic_, nonbasic_, row_of_, col_of_, ray_col_}; }

  TableauStatus restore(const State& s, TableauStatus status) {
    data_ = s.data;
    obj_ = s.obj;
    objd_ = s.objd;
    phase_ = s.phase;
    basic_ = s.basic;
    nonbasic_ = s.nonbasic;
    row_of_ = s.row_of;
    col_of_ = s.col_of;
    ray_col_ = s.ray_col;
    return status;
  }

  Index rhs_col() const { return n_ + 1; }
  Index delta_col() const { return n_ + 2; }

  // Deterministic factor in [1, 2) per key.
  static double jitter(Index key) {
    std::uint64_t z = static_cast<std::uint64_t>(key) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  // Column currently holding the artificial, or -1 when it is basic.
  Index art_col() const {
    for (Index c = 0; c <= n_; ++c)
      if (nonbasic_[static_cast<std::size_t>(c)] == kArtificial) return c;
    return -1;
  }

  Scalar* row_ptr(Index r) { return data_.data() + r * stride_; }
  const Scalar* row_ptr(Index r) const { return data_.data() + r * stride_; }
  Scalar& at(Index r, Index c) { return data_[static_cast<std::size_t>(r * stride_ + c)]; }
  const Scalar& at(Index r, Index c) const { return data_[static_cast<std::size_t>(r * stride_ + c)]; }

  Scalar rhs(Index r) const {
    if constexpr (kExact)
      return at(r, rhs_col());
    else
      return perturb_rhs_ ? at(r, rhs_col()) + at(r, delta_col()) : at(r, rhs_col());
  }

  Scalar cost(Index c) const {
    if constexpr (kExact)
      return obj_[static_cast<std::size_t>(c)];
    else
      return perturb_cost_ ? obj_[static_cast<std::size_t>(c)] + objd_[static_cast<std::size_t>(c)]
                           : obj_[static_cast<std::size_t>(c)];
  }

  static bool is_zero(const Scalar& x) {
    if constexpr (kExact)
      return sgn(x) == 0;
    else
      return x == 0.0;
  }
  bool negative(const Scalar& x) const {
    if constexpr (kExact)
      return sgn(x) < 0;
    else
      return x < -opt_.tolerance;
  }
  bool pivotable(const Scalar& x) const {
    if constexpr (kExact)
      return sgn(x) > 0;
    else
      return x > opt_.pivot_tolerance;
  }

  std::vector<Scalar> slack_prices(const std::vector<Scalar>& objective_row) const {
    std::vector<Scalar> y(static_cast<std::size_t>(m_), Scalar(0));
    for (Index c = 0; c <= n_; ++c) {
      const Index v = nonbasic_[static_cast<std::size_t>(c)];
      if (v >= n_) y[static_cast<std::size_t>(v - n_)] = objective_row[static_cast<std::size_t>(c)];
    }
    return y;
  }

  TableauStatus solve_core() {
    farkas_row_ = -1;
    if (infeasible_row() >= 0) {
      const TableauStatus st = dual_feasible() ? dual_simplex() : phase_one();
      if (st != TableauStatus::Optimal) return st;
    }
    return primal_simplex(false);
  }

  Index infeasible_row() const {
    Index worst = -1;
    Scalar worst_value{};
    for (Index r = 0; r < m_; ++r) {
      const Scalar b = rhs(r);
      if (!negative(b)) continue;
      bool take = worst < 0;
      if (!take) {
        if (kExact || bland_)
          take = basic_[static_cast<std::size_t>(r)] < basic_[static_cast<std::size_t>(worst)];
        else
          take = b < worst_value;
      }
      if (take) {
        worst = r;
        worst_value = b;
      }
    }
    return worst;
  }

  bool dual_feasible() const {
    for (Index c = 0; c <= n_; ++c) {
      if (nonbasic_[static_cast<std::size_t>(c)] == kArtificial) continue;
      if (negative(cost(c))) return false;
    }
    return true;
  }

  void pivot(Index r, Index s) {
    Scalar* pr = row_ptr(r);
    const Scalar inv = Scalar(1) / pr[s];
    std::vector<Index> support;
    if constexpr (kExact) {
      for (Index c = 0; c < stride_; ++c)
        if (!is_zero(pr[c])) {
          pr[c] *= inv;
          if (c != s) support.push_back(c);
        }
    } else {
      RowMap(pr, stride_) *= inv;
    }
    pr[s] = inv;
    auto eliminate = [&](Scalar* row) {
      const Scalar f = row[s];
      if (is_zero(f)) return;
      if constexpr (kExact) {
        for (Index c : support) row[c] -= f * pr[c];
      } else {
        RowMap target(row, stride_);
        target.noalias() -= f * ConstRowMap(pr, stride_);
        // flush cancellation noise so it can never become a pivot
        target = (target.array().abs() < opt_.drop_tolerance).select(Scalar(0), target);
      }
      row[s] = -f * inv;
    };
    for (Index i = 0; i < m_; ++i)
      if (i != r) eliminate(row_ptr(i));
    eliminate(obj_.data());
    eliminate(objd_.data());
    eliminate(phase_.data());

    const Index entering = nonbasic_[static_cast<std::size_t>(s)];
    const Index leaving = basic_[static_cast<std::size_t>(r)];
    if (entering >= 0 && entering < n_) {
      row_of_[static_cast<std::size_t>(entering)] = r;
      col_of_[static_cast<std::size_t>(entering)] = -1;
    }
    if (leaving >= 0 && leaving < n_) {
      row_of_[static_cast<std::size_t>(leaving)] = -1;
      col_of_[static_cast<std::size_t>(leaving)] = s;
    }
    basic_[static_cast<std::size_t>(r)] = entering;
    nonbasic_[static_cast<std::size_t>(s)] = leaving;
    ++pivots_;
    ++spent_;
  }

  // Switches to Bland's rule after stall_limit pivots without objective progress.
  void note_progress(const Scalar& value) {
    if constexpr (!kExact) {
      if (stalled_ == 0 || value < best_seen_ - 1e-9 * (1.0 + std::abs(best_seen_))) {
        best_seen_ = value;
        stalled_ = 1;
        bland_ = false;
      } else if (++stalled_ > opt_.stall_limit) {
        bland_ = true;
      }
    }
  }

  // Primal simplex on the phase-one row (phase_one = true) or the true objective.
  TableauStatus primal_simplex(bool phase_one) {
    stalled_ = 0;
    bland_ = false;
    for (;;) {
      if (spent_ > budget_) return TableauStatus::IterationLimit;
      const bool bland = kExact || bland_;
      auto reduced = [&](Index c) { return phase_one ? phase_[static_cast<std::size_t>(c)] : cost(c); };
      Index s = -1;
      Scalar best{};
      for (Index c = 0; c <= n_; ++c) {
        if (!phase_one && nonbasic_[static_cast<std::size_t>(c)] == kArtificial) continue;
        const Scalar d = reduced(c);
        if (!negative(d)) continue;
        bool take = s < 0;
        if (!take)
          take = bland ? nonbasic_[static_cast<std::size_t>(c)] < nonbasic_[static_cast<std::size_t>(s)] : d < best;
        if (take) {
          s = c;
          best = d;
        }
      }
      if (s < 0) return TableauStatus::Optimal;

      const Index r = ratio_row(s, bland);
      if (r < 0) {
        ray_col_ = s;
        return TableauStatus::Unbounded;
      }
      pivot(r, s);
      const auto& row = phase_one ? phase_ : obj_;
      Scalar value = -row[static_cast<std::size_t>(rhs_col())];
      if constexpr (!kExact)
        if (!phase_one && perturb_cost_) value -= objd_[static_cast<std::size_t>(rhs_col())];
      note_progress(value);
    }
  }

  // Harris two-pass ratio test; exact scalars reduce it to min ratio with Bland ties.
  Index ratio_row(Index s, bool bland) const {
    Scalar bound{};
    bool have = false;
    for (Index i = 0; i < m_; ++i) {
      const Scalar& a = at(i, s);
      if (!pivotable(a)) continue;
      Scalar b = rhs(i);
      if constexpr (!kExact) b = std::max(b, Scalar(0)) + opt_.tolerance;
      const Scalar ratio = b / a;
      if (!have || ratio < bound) {
        bound = ratio;
        have = true;
      }
    }
    if (!have) return -1;
    // Bland in floating point only among pivots close to the largest candidate.
    Scalar floor_a{};
    if constexpr (!kExact) {
      for (Index i = 0; bland && i < m_; ++i) {
        const Scalar& a = at(i, s);
        if (pivotable(a) && std::max(rhs(i), Scalar(0)) / a <= bound) floor_a = std::max(floor_a, a);
      }
      floor_a *= kBlandPivotShare;
    }
    Index best = -1;
    for (Index i = 0; i < m_; ++i) {
      const Scalar& a = at(i, s);
      if (!pivotable(a)) continue;
      Scalar b = rhs(i);
      if constexpr (!kExact) b = std::max(b, Scalar(0));
      if (b / a > bound) continue;
      if constexpr (!kExact)
        if (a < floor_a) continue;
      bool take = best < 0;
      if (!take)
        take = bland ? basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(best)] : a > at(best, s);
      if (take) best = i;
    }
    return best;
  }

  TableauStatus dual_simplex() {
    stalled_ = 0;
    bland_ = false;
    for (;;) {
      if (spent_ > budget_) return TableauStatus::IterationLimit;
      const Index r = infeasible_row();
      if (r < 0) return TableauStatus::Optimal;
      const bool bland = kExact || bland_;
      const Scalar* pr = row_ptr(r);
      // Harris two-pass ratio test over columns with a negative entry in row r.
      Scalar bound{};
      bool have = false;
      for (Index c = 0; c <= n_; ++c) {
        if (nonbasic_[static_cast<std::size_t>(c)] == kArtificial) continue;
        const Scalar a = -pr[c];
        if (!pivotable(a)) continue;
        Scalar d = cost(c);
        if constexpr (!kExact) d = std::max(d, Scalar(0)) + opt_.tolerance;
        const Scalar ratio = d / a;
        if (!have || ratio < bound) {
          bound = ratio;
          have = true;
        }
      }
      Scalar floor_a{};
      if constexpr (!kExact) {
        for (Index c = 0; have && bland && c <= n_; ++c) {
          if (nonbasic_[static_cast<std::size_t>(c)] == kArtificial) continue;
          const Scalar a = -pr[c];
          if (pivotable(a) && std::max(cost(c), Scalar(0)) / a <= bound) floor_a = std::max(floor_a, a);
        }
        floor_a *= kBlandPivotShare;
      }
      Index s = -1;
      for (Index c = 0; have && c <= n_; ++c) {
        if (nonbasic_[static_cast<std::size_t>(c)] == kArtificial) continue;
        const Scalar a = -pr[c];
        if (!pivotable(a)) continue;
        Scalar d = cost(c);
        if constexpr (!kExact) d = std::max(d, Scalar(0));
        if (d / a > bound) continue;
        if constexpr (!kExact)
          if (a < floor_a) continue;
        bool take = s < 0;
        if (!take)
          take = bland ? nonbasic_[static_cast<std::size_t>(c)] < nonbasic_[static_cast<std::size_t>(s)] : a > -pr[s];
        if (take) s = c;
      }
      if (s < 0) {
        farkas_row_ = r;
        return TableauStatus::Infeasible;
      }
      pivot(r, s);
      // The dual simplex drives the objective down; track it as progress.
      Scalar value = obj_[static_cast<std::size_t>(rhs_col())];
      note_progress(value);
    }
  }

  TableauStatus phase_one() {
    // The artificial may still sit in a redundant row from an earlier phase one.
    if (art_col() < 0) restore_artificial_column();
    const Index a = art_col();
    if (a < 0) return TableauStatus::IterationLimit;
    for (Index i = 0; i < m_; ++i) at(i, a) = Scalar(-1);
    std::fill(phase_.begin(), phase_.end(), Scalar(0));
    phase_[static_cast<std::size_t>(a)] = Scalar(1);
    obj_[static_cast<std::size_t>(a)] = Scalar(0);
    objd_[static_cast<std::size_t>(a)] = Scalar(0);
    Index r = 0;
    for (Index i = 1; i < m_; ++i)
      if (rhs(i) < rhs(r)) r = i;
    pivot(r, a);
    const TableauStatus st = primal_simplex(true);
    if (st == TableauStatus::IterationLimit) return st;
    Scalar value = phase_[static_cast<std::size_t>(rhs_col())];
    if constexpr (!kExact)
      if (perturb_rhs_) value += phase_[static_cast<std::size_t>(delta_col())];
    if (negative(value)) return TableauStatus::Infeasible;
    restore_artificial_column();
    return TableauStatus::Optimal;
  }

  // Moves the artificial out of the basis (it is at zero) so its column is free again.
  void restore_artificial_column() {
    for (Index i = 0; i < m_; ++i) {
      if (basic_[static_cast<std::size_t>(i)] != kArtificial) continue;
      Index s = -1;
      for (Index c = 0; c <= n_; ++c) {
        if (is_zero(at(i, c))) continue;
        if (s < 0 || magnitude(at(i, c)) > magnitude(at(i, s))) s = c;
      }
      if (s >= 0) pivot(i, s);
      return;
    }
  }

  static Scalar magnitude(const Scalar& x) { return x < Scalar(0) ? Scalar(-x) : x; }

  Index n_;
  Index m_ = 0;
  Index stride_;
  Options opt_;
  std::vector<Scalar> data_;
  std::vector<Scalar> obj_;
  std::vector<Scalar> objd_;
  std::vector<Scalar> phase_;
  std::vector<Index> basic_;
  std::vector<Index> nonbasic_;
  std::vector<Index> row_of_;
  std::vector<Index> col_of_;
  Index pivots_ = 0;
  Index spent_ = 0;
  Index budget_ = 0;
  Index stalled_ = 0;
  Scalar best_seen_{};
  bool bland_ = false;
  bool perturb_rhs_ = false;
  bool perturb_cost_ = false;
  Index ray_col_ = -1;
  Index farkas_row_ = -1;
};

}  // namespace crossforest
