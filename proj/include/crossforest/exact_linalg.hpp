#pragma once

#include <cstdint>
#include <vector>

#include "crossforest/rational.hpp"

namespace crossforest {

using IntMatrix = RowMatrix<std::int64_t>;

/// x = numerators / denominator with denominator > 0.
struct RationalSolution {
  std::vector<Integer> numerators;
  Integer denominator = 1;

  Rational operator[](std::size_t i) const {
    Rational r(numerators[i], denominator);
    r.canonicalize();
    return r;
  }
};

/// LU factorization of a square integer matrix modulo a 31-bit prime.
class ModularLU {
 public:
  /// False when the matrix is singular mod p.
  bool factor(const IntMatrix& m, std::uint32_t p);

  /// In place: b <- M^{-1} b (mod p), or M^{-T} b when transposed.
  void solve(std::vector<std::uint64_t>& b, bool transposed) const;

  std::uint32_t prime() const { return p_; }

 private:
  std::uint32_t p_ = 0;
  Index n_ = 0;
  RowMatrix<std::uint64_t> lu_;
  std::vector<std::uint64_t> inv_diag_;
  std::vector<Index> perm_;
};

/// Exact solver for M x = b over the rationals by p-adic (Dixon) lifting.
class DixonSolver {
 public:
  /// Factors M; nonsingular() is false when M was singular modulo several primes (then M is
  /// singular with overwhelming likelihood and solves must not be attempted).
  explicit DixonSolver(IntMatrix m);

  bool nonsingular() const { return ok_; }
  Index size() const { return n_; }

  RationalSolution solve(const std::vector<Integer>& rhs) const { return lift(rhs, false); }
  RationalSolution solve_transposed(const std::vector<Integer>& rhs) const { return lift(rhs, true); }

 private:
  RationalSolution lift(const std::vector<Integer>& rhs, bool transposed) const;
  bool check(const RationalSolution& x, const std::vector<Integer>& rhs, bool transposed) const;

  IntMatrix m_;
  Index n_ = 0;
  ModularLU lu_;
  bool ok_ = false;
  bool small_entries_ = true;
  double log2_det_bound_ = 0;
  double log2_min_col_ = 0;
  double log2_min_row_ = 0;
};

/// n/d with |n|, d <= bound and n = a*d (mod m), if it exists.
bool rational_reconstruction(const Integer& a, const Integer& m, const Integer& bound, Integer& num,
                             Integer& den);

}  // namespace crossforest
