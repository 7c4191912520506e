#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "crossforest/exact_linalg.hpp"
#include "standard_form.hpp"

namespace crossforest::detail {

namespace {

void addmul_si64(Integer& z, const Integer& x, std::int64_t a) {
  if (a >= 0)
    mpz_addmul_ui(z.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(a));
  else
    mpz_submul_ui(z.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-(a + 1)) + 1ul);
}

Integer lcm_of_denominators(const std::vector<const Rational*>& values) {
  Integer l = 1;
  for (const Rational* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

// Internal ids: structural j < n, artificial n, slack of row i is n + 1 + i.
class RevisedBasis {
 public:
  explicit RevisedBasis(const StandardForm& sf)
      : sf_(sf), n_(sf.n), m_(sf.m()), pos_s_(static_cast<std::size_t>(n_ + 1), -1),
        pos_t_(static_cast<std::size_t>(m_), -1), slack_value_(static_cast<std::size_t>(m_)) {}

  Index artificial() const { return n_; }
  Index slack_id(Index row) const { return n_ + 1 + row; }
  bool is_slack(Index id) const { return id > n_; }
  Index row_of_slack(Index id) const { return id - n_ - 1; }

  /// External ids (slack = n + row). Returns false if the set is not a basis.
  bool assign(const std::vector<Index>& basic) {
    S_.clear();
    T_.clear();
    std::vector<char> slack_basic(static_cast<std::size_t>(m_), 0);
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (Index v : basic) {
      if (v < 0) continue;
      if (v < n_) {
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
        S_.push_back(v);
      } else if (v - n_ < m_) {
        slack_basic[static_cast<std::size_t>(v - n_)] = 1;
      }
    }
    for (Index i = 0; i < m_; ++i)
      if (!slack_basic[static_cast<std::size_t>(i)]) T_.push_back(i);
    if (S_.size() != T_.size()) return false;
    return refactor();
  }

  void reset_to_slacks() {
    S_.clear();
    T_.clear();
    has_art_ = false;
    refactor();
  }

  bool refactor() {
    std::fill(pos_s_.begin(), pos_s_.end(), -1);
    std::fill(pos_t_.begin(), pos_t_.end(), -1);
    for (std::size_t b = 0; b < S_.size(); ++b) pos_s_[static_cast<std::size_t>(S_[b])] = static_cast<Index>(b);
    for (std::size_t a = 0; a < T_.size(); ++a) pos_t_[static_cast<std::size_t>(T_[a])] = static_cast<Index>(a);
    const auto k = static_cast<Index>(S_.size());
    IntMatrix mat = IntMatrix::Zero(k, k);
    for (Index b = 0; b < k; ++b)
      for_column(S_[static_cast<std::size_t>(b)], [&](Index i, std::int64_t a) {
        const Index r = pos_t_[static_cast<std::size_t>(i)];
        if (r >= 0) mat(r, b) = a;
      });
    solver_ = std::make_unique<DixonSolver>(std::move(mat));
    return solver_->nonsingular();
  }

  template <class F>
  void for_column(Index j, F&& f) const {
    if (j == n_) {
      for (Index i = 0; i < m_; ++i)
        if (art_[static_cast<std::size_t>(i)]) f(i, art_[static_cast<std::size_t>(i)]);
      return;
    }
    const auto& col = sf_.columns[static_cast<std::size_t>(j)];
    for (std::size_t e = 0; e < col.rows.size(); ++e) f(col.rows[e], col.coefs[e]);
  }

  void compute_primal() {
    const auto k = S_.size();
    std::vector<const Rational*> bt;
    for (Index i : T_) bt.push_back(&sf_.rows[static_cast<std::size_t>(i)].rhs);
    const Integer scale = lcm_of_denominators(bt);
    std::vector<Integer> rhs(k);
    for (std::size_t a = 0; a < k; ++a) rhs[a] = Rational(*bt[a] * scale).get_num();
    const RationalSolution sol = solver_->solve(rhs);
    const Integer den = sol.denominator * scale;
    x_s_.resize(k);
    for (std::size_t b = 0; b < k; ++b) {
      x_s_[b] = Rational(sol.numerators[b], den);
      x_s_[b].canonicalize();
    }
    std::vector<Integer> acc(static_cast<std::size_t>(m_));
    for (std::size_t b = 0; b < k; ++b) {
      if (sol.numerators[b] == 0) continue;
      for_column(S_[b], [&](Index i, std::int64_t a) {
        if (pos_t_[static_cast<std::size_t>(i)] < 0) addmul_si64(acc[static_cast<std::size_t>(i)], sol.numerators[b], a);
      });
    }
    for (Index i = 0; i < m_; ++i) {
      if (pos_t_[static_cast<std::size_t>(i)] >= 0) {
        slack_value_[static_cast<std::size_t>(i)] = 0;
        continue;
      }
      Rational used(acc[static_cast<std::size_t>(i)], den);
      used.canonicalize();
      slack_value_[static_cast<std::size_t>(i)] = sf_.rows[static_cast<std::size_t>(i)].rhs - used;
    }
  }

  /// Integer costs of the basic structurals for the given phase.
  Integer cost_of(Index j, bool phase_one) const {
    if (phase_one) return j == n_ ? -1 : 0;
    return j == n_ ? Integer(0) : sf_.int_cost[static_cast<std::size_t>(j)];
  }

  /// Computes scaled duals U (true u = U / (den * cost scale)) and reduced-cost signs.
  void compute_duals(bool phase_one) {
    const auto k = S_.size();
    std::vector<Integer> c(k);
    for (std::size_t b = 0; b < k; ++b) c[b] = cost_of(S_[b], phase_one);
    dual_ = solver_->solve_transposed(c);
  }

  Rational dual_value(Index row, bool phase_one) const {
    const Index a = pos_t_[static_cast<std::size_t>(row)];
    if (a < 0) return 0;
    Rational u(dual_.numerators[static_cast<std::size_t>(a)], dual_.denominator);
    u.canonicalize();
    if (!phase_one) u /= sf_.cost_scale;
    return u;
  }

  /// Smallest-id improving variable, or -1 when the basis is dual feasible.
  Index entering(bool phase_one) const {
    std::vector<Integer> acc(static_cast<std::size_t>(n_));
    for (std::size_t a = 0; a < T_.size(); ++a) {
      const Integer& u = dual_.numerators[a];
      if (u == 0) continue;
      const auto& row = sf_.rows[static_cast<std::size_t>(T_[a])];
      for (std::size_t e = 0; e < row.cols.size(); ++e)
        addmul_si64(acc[static_cast<std::size_t>(row.cols[e])], u, row.coefs[e]);
    }
    for (Index j = 0; j < n_; ++j) {
      if (pos_s_[static_cast<std::size_t>(j)] >= 0) continue;
      Integer d = dual_.denominator * cost_of(j, phase_one);
      d -= acc[static_cast<std::size_t>(j)];
      if (d > 0) return j;
    }
    for (Index i = 0; i < m_; ++i) {
      const Index a = pos_t_[static_cast<std::size_t>(i)];
      if (a >= 0 && dual_.numerators[static_cast<std::size_t>(a)] < 0) return slack_id(i);
    }
    return -1;
  }

  bool dual_feasible(bool phase_one) const { return entering(phase_one) < 0; }

  struct Direction {
    std::vector<Rational> d_s;     // per basic structural position
    std::vector<Rational> d_slack; // per row (basic slacks only)
  };

  Direction direction(Index q) const {
    const auto k = S_.size();
    std::vector<Integer> rhs(k);
    std::vector<Integer> colq(static_cast<std::size_t>(m_));
    if (is_slack(q)) {
      rhs[static_cast<std::size_t>(pos_t_[static_cast<std::size_t>(row_of_slack(q))])] = 1;
    } else {
      for_column(q, [&](Index i, std::int64_t a) {
        const Index r = pos_t_[static_cast<std::size_t>(i)];
        if (r >= 0)
          rhs[static_cast<std::size_t>(r)] = static_cast<long>(a);
        else
          colq[static_cast<std::size_t>(i)] = static_cast<long>(a);
      });
    }
    const RationalSolution y = solver_->solve(rhs);
    Direction dir;
    dir.d_s.resize(k);
    for (std::size_t b = 0; b < k; ++b) {
      dir.d_s[b] = Rational(y.numerators[b], y.denominator);
      dir.d_s[b].canonicalize();
    }
    std::vector<Integer> acc(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) acc[static_cast<std::size_t>(i)] = colq[static_cast<std::size_t>(i)] * y.denominator;
    for (std::size_t b = 0; b < k; ++b) {
      if (y.numerators[b] == 0) continue;
      for_column(S_[b], [&](Index i, std::int64_t a) {
        if (pos_t_[static_cast<std::size_t>(i)] < 0) addmul_si64(acc[static_cast<std::size_t>(i)], y.numerators[b], -a);
      });
    }
    dir.d_slack.resize(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) {
      if (pos_t_[static_cast<std::size_t>(i)] >= 0) continue;
      dir.d_slack[static_cast<std::size_t>(i)] = Rational(acc[static_cast<std::size_t>(i)], y.denominator);
      dir.d_slack[static_cast<std::size_t>(i)].canonicalize();
    }
    return dir;
  }

  /// Bland ratio test; returns the leaving id or -1 (unbounded).
  Index leaving(const Direction& dir) const {
    Index best = -1;
    Rational best_ratio;
    auto consider = [&](Index id, const Rational& value, const Rational& d) {
      Rational ratio;
      if (id == n_) {
        if (sgn(d) == 0) return;
        ratio = 0;
      } else {
        if (sgn(d) <= 0) return;
        ratio = value / d;
      }
      if (best < 0 || ratio < best_ratio || (ratio == best_ratio && id < best)) {
        best = id;
        best_ratio = ratio;
      }
    };
    for (std::size_t b = 0; b < S_.size(); ++b) consider(S_[b], x_s_[b], dir.d_s[b]);
    for (Index i = 0; i < m_; ++i)
      if (pos_t_[static_cast<std::size_t>(i)] < 0)
        consider(slack_id(i), slack_value_[static_cast<std::size_t>(i)], dir.d_slack[static_cast<std::size_t>(i)]);
    return best;
  }

  void pivot(Index enter, Index leave) {
    auto erase = [](std::vector<Index>& v, Index x) { v.erase(std::find(v.begin(), v.end(), x)); };
    if (is_slack(enter))
      erase(T_, row_of_slack(enter));
    else
      S_.push_back(enter);
    if (is_slack(leave))
      T_.push_back(row_of_slack(leave));
    else
      erase(S_, leave);
    if (leave == n_) has_art_ = false;
    if (!refactor()) throw std::logic_error("exact simplex produced a singular basis");
  }

  /// Sets up the single artificial column against the currently negative basic variables
  /// and pivots it in. Returns false if the basis is already feasible.
  bool start_phase_one() {
    std::vector<__int128> col(static_cast<std::size_t>(m_), 0);
    Index leave = -1;
    Rational worst;
    auto note = [&](Index id, const Rational& v) {
      if (sgn(v) >= 0) return;
      if (leave < 0 || v < worst || (v == worst && id < leave)) {
        leave = id;
        worst = v;
      }
    };
    for (std::size_t b = 0; b < S_.size(); ++b) {
      if (sgn(x_s_[b]) >= 0) continue;
      note(S_[b], x_s_[b]);
      for_column(S_[b], [&](Index i, std::int64_t a) { col[static_cast<std::size_t>(i)] -= a; });
    }
    for (Index i = 0; i < m_; ++i) {
      if (pos_t_[static_cast<std::size_t>(i)] >= 0 || sgn(slack_value_[static_cast<std::size_t>(i)]) >= 0) continue;
      note(slack_id(i), slack_value_[static_cast<std::size_t>(i)]);
      col[static_cast<std::size_t>(i)] -= 1;
    }
    if (leave < 0) return false;
    art_.assign(static_cast<std::size_t>(m_), 0);
    for (Index i = 0; i < m_; ++i) {
      const __int128 v = col[static_cast<std::size_t>(i)];
      if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("artificial column overflows 64 bits");
      art_[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(v);
    }
    has_art_ = true;
    pivot(n_, leave);
    return true;
  }

  bool has_artificial() const { return has_art_; }

  Rational artificial_value() const {
    const Index b = pos_s_[static_cast<std::size_t>(n_)];
    return b >= 0 ? x_s_[static_cast<std::size_t>(b)] : Rational(0);
  }

  bool primal_feasible(std::vector<Index>* violated) const {
    bool ok = true;
    for (const auto& v : x_s_)
      if (sgn(v) < 0) ok = false;
    for (Index i = 0; i < m_; ++i)
      if (pos_t_[static_cast<std::size_t>(i)] < 0 && sgn(slack_value_[static_cast<std::size_t>(i)]) < 0) {
        ok = false;
        if (violated) violated->push_back(i);
      }
    return ok;
  }

  std::vector<Rational> structural_values() const {
    std::vector<Rational> x(static_cast<std::size_t>(n_));
    for (std::size_t b = 0; b < S_.size(); ++b)
      if (S_[b] < n_) x[static_cast<std::size_t>(S_[b])] = x_s_[b];
    return x;
  }

  std::vector<Rational> row_duals(bool phase_one) const {
    std::vector<Rational> u(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) u[static_cast<std::size_t>(i)] = dual_value(i, phase_one);
    return u;
  }

  std::vector<Rational> ray(Index q, const Direction& dir) const {
    std::vector<Rational> r(static_cast<std::size_t>(n_));
    if (q < n_) r[static_cast<std::size_t>(q)] = 1;
    for (std::size_t b = 0; b < S_.size(); ++b)
      if (S_[b] < n_) r[static_cast<std::size_t>(S_[b])] = -dir.d_s[b];
    return r;
  }

 private:
  const StandardForm& sf_;
  Index n_, m_;
  std::vector<Index> S_, T_;
  std::vector<Index> pos_s_, pos_t_;
  std::vector<std::int64_t> art_;
  bool has_art_ = false;
  std::unique_ptr<DixonSolver> solver_;
  std::vector<Rational> x_s_;
  std::vector<Rational> slack_value_;
  RationalSolution dual_;
};

}  // namespace

BasisCheck check_basis(const StandardForm& sf, const std::vector<Index>& basic) {
  BasisCheck out;
  RevisedBasis basis(sf);
  if (!basis.assign(basic)) return out;
  out.valid = true;
  basis.compute_primal();
  out.primal_feasible = basis.primal_feasible(&out.violated_rows);
  basis.compute_duals(false);
  out.dual_feasible = basis.dual_feasible(false);
  if (out.primal_feasible && out.dual_feasible) {
    out.result.status = ExactStatus::Optimal;
    out.result.x = basis.structural_values();
    out.result.u = basis.row_duals(false);
  }
  return out;
}

ExactResult exact_simplex(const StandardForm& sf, std::vector<Index> basic) {
  ExactResult out;
  RevisedBasis basis(sf);
  if (!basis.assign(basic)) basis.reset_to_slacks();
  basis.compute_primal();

  auto run = [&](bool phase_one) -> Index {
    for (;;) {
      basis.compute_duals(phase_one);
      const Index q = basis.entering(phase_one);
      if (q < 0) return -1;
      const auto dir = basis.direction(q);
      const Index leave = basis.leaving(dir);
      if (leave < 0) {
        out.ray = basis.ray(q, dir);
        return q;
      }
      basis.pivot(q, leave);
      basis.compute_primal();
      ++out.pivots;
    }
  };

  if (basis.start_phase_one()) {
    ++out.pivots;
    basis.compute_primal();
    if (run(true) >= 0) throw std::logic_error("phase one cannot be unbounded");
    if (sgn(basis.artificial_value()) > 0) {
      out.status = ExactStatus::Infeasible;
      out.u = basis.row_duals(true);
      return out;
    }
  }
  if (run(false) >= 0) {
    out.status = ExactStatus::Unbounded;
    out.x = basis.structural_values();
    return out;
  }
  out.status = ExactStatus::Optimal;
  out.x = basis.structural_values();
  out.u = basis.row_duals(false);
  return out;
}

}  // namespace crossforest::detail
