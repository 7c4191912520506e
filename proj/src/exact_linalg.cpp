#include "crossforest/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crossforest {

namespace {

constexpr std::uint32_t kPrimes[] = {2147483647u, 2147483629u, 2147483587u, 2147483579u,
                                     2147483563u, 2147483549u, 2147483543u, 2147483497u};

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) { return mod_pow(a, p - 2, p); }

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

void add_int128(mpz_t z, __int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_t t;
  mpz_init(t);
  mpz_set_ui(t, static_cast<unsigned long>(u >> 64));
  mpz_mul_2exp(t, t, 64);
  mpz_add_ui(t, t, static_cast<unsigned long>(u & ~0ULL));
  if (neg)
    mpz_sub(z, z, t);
  else
    mpz_add(z, z, t);
  mpz_clear(t);
}

void addmul_si64(mpz_t z, const mpz_t x, std::int64_t a) {
  if (a >= 0)
    mpz_addmul_ui(z, x, static_cast<unsigned long>(a));
  else
    mpz_submul_ui(z, x, static_cast<unsigned long>(-(a + 1)) + 1ul);
}

}  // namespace

bool ModularLU::factor(const IntMatrix& m, std::uint32_t p) {
  p_ = p;
  n_ = m.rows();
  lu_.resize(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) lu_(i, j) = reduce(m(i, j), p);
  perm_.resize(static_cast<std::size_t>(n_));
  for (Index i = 0; i < n_; ++i) perm_[static_cast<std::size_t>(i)] = i;
  inv_diag_.assign(static_cast<std::size_t>(n_), 0);

  for (Index k = 0; k < n_; ++k) {
    Index piv = k;
    while (piv < n_ && lu_(piv, k) == 0) ++piv;
    if (piv == n_) return false;
    if (piv != k) {
      lu_.row(piv).swap(lu_.row(k));
      std::swap(perm_[static_cast<std::size_t>(piv)], perm_[static_cast<std::size_t>(k)]);
    }
    const std::uint64_t inv = mod_inverse(lu_(k, k), p);
    inv_diag_[static_cast<std::size_t>(k)] = inv;
    const std::uint64_t* urow = &lu_(k, 0);
    for (Index i = k + 1; i < n_; ++i) {
      std::uint64_t* row = &lu_(i, 0);
      if (row[k] == 0) continue;
      const std::uint64_t f = row[k] * inv % p;
      row[k] = f;
      const std::uint64_t neg = p - f;
      for (Index j = k + 1; j < n_; ++j)
        if (urow[j]) row[j] = (row[j] + neg * urow[j]) % p;
    }
  }
  return true;
}

void ModularLU::solve(std::vector<std::uint64_t>& b, bool transposed) const {
  const std::uint64_t p = p_;
  const auto n = static_cast<std::size_t>(n_);
  std::vector<std::uint64_t> w(n);
  if (!transposed) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t s = b[static_cast<std::size_t>(perm_[i])];
      const std::uint64_t* row = &lu_(static_cast<Index>(i), 0);
      for (std::size_t j = 0; j < i; ++j)
        if (row[j]) s = (s + (p - row[j]) * w[j]) % p;
      w[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      std::uint64_t s = w[i];
      const std::uint64_t* row = &lu_(static_cast<Index>(i), 0);
      for (std::size_t j = i + 1; j < n; ++j)
        if (row[j]) s = (s + (p - row[j]) * w[j]) % p;
      w[i] = s * inv_diag_[i] % p;
    }
    b = std::move(w);
    return;
  }
  // M^T = U^T L^T P
  std::vector<std::uint64_t> z(b);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t zi = z[i] * inv_diag_[i] % p;
    z[i] = zi;
    if (!zi) continue;
    const std::uint64_t* row = &lu_(static_cast<Index>(i), 0);
    for (std::size_t j = i + 1; j < n; ++j)
      if (row[j]) z[j] = (z[j] + (p - row[j]) * zi) % p;
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t wi = z[i];
    if (!wi) continue;
    const std::uint64_t* row = &lu_(static_cast<Index>(i), 0);
    for (std::size_t j = 0; j < i; ++j)
      if (row[j]) z[j] = (z[j] + (p - row[j]) * wi) % p;
  }
  for (std::size_t i = 0; i < n; ++i) w[static_cast<std::size_t>(perm_[i])] = z[i];
  b = std::move(w);
}

bool rational_reconstruction(const Integer& a, const Integer& m, const Integer& bound, Integer& num,
                             Integer& den) {
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer s0 = 0, s1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  if (s1 < 0) {
    num = -r1;
    den = -s1;
  } else {
    num = r1;
    den = s1;
  }
  return true;
}

DixonSolver::DixonSolver(IntMatrix m) : m_(std::move(m)), n_(m_.rows()) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("DixonSolver needs a square matrix");
  std::int64_t max_abs = 0;
  std::vector<double> col(static_cast<std::size_t>(n_), 0.0), row(static_cast<std::size_t>(n_), 0.0);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) {
      const double v = static_cast<double>(m_(i, j));
      col[static_cast<std::size_t>(j)] += v * v;
      row[static_cast<std::size_t>(i)] += v * v;
      max_abs = std::max(max_abs, m_(i, j) < 0 ? -m_(i, j) : m_(i, j));
    }
  small_entries_ = max_abs <= (std::int64_t{1} << 32);
  log2_min_col_ = log2_min_row_ = 1e300;
  for (Index j = 0; j < n_; ++j) {
    const double c = 0.5 * std::log2(std::max(col[static_cast<std::size_t>(j)], 1.0));
    const double r = 0.5 * std::log2(std::max(row[static_cast<std::size_t>(j)], 1.0));
    log2_det_bound_ += c;
    log2_min_col_ = std::min(log2_min_col_, c);
    log2_min_row_ = std::min(log2_min_row_, r);
  }
  if (n_ == 0) {
    ok_ = true;
    return;
  }
  for (std::uint32_t p : kPrimes) {
    if (lu_.factor(m_, p)) {
      ok_ = true;
      return;
    }
  }
}

bool DixonSolver::check(const RationalSolution& x, const std::vector<Integer>& rhs, bool transposed) const {
  Integer acc;
  for (Index i = 0; i < n_; ++i) {
    acc = 0;
    for (Index j = 0; j < n_; ++j) {
      const std::int64_t a = transposed ? m_(j, i) : m_(i, j);
      if (a) addmul_si64(acc.get_mpz_t(), x.numerators[static_cast<std::size_t>(j)].get_mpz_t(), a);
    }
    if (acc != x.denominator * rhs[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

RationalSolution DixonSolver::lift(const std::vector<Integer>& rhs, bool transposed) const {
  if (!ok_) throw std::logic_error("DixonSolver: singular matrix");
  const auto n = static_cast<std::size_t>(n_);
  RationalSolution out;
  out.numerators.assign(n, 0);
  if (n == 0) return out;

  const std::uint32_t p = lu_.prime();
  double log2_rhs = 0;
  for (const auto& b : rhs) log2_rhs = std::max(log2_rhs, static_cast<double>(mpz_sizeinbase(b.get_mpz_t(), 2)));
  log2_rhs += 0.5 * std::log2(static_cast<double>(n));
  const double log2_num = log2_det_bound_ - (transposed ? log2_min_row_ : log2_min_col_) + log2_rhs;
  const auto max_steps =
      static_cast<std::size_t>(std::ceil((log2_num + log2_det_bound_ + 2) / std::log2(static_cast<double>(p)))) + 2;

  std::vector<Integer> r(rhs);
  std::vector<Integer> acc(n, 0);
  Integer modulus = 1;
  std::vector<std::uint64_t> digit(n);
  std::size_t next_attempt = 4;

  for (std::size_t step = 1;; ++step) {
    for (std::size_t i = 0; i < n; ++i) digit[i] = mpz_fdiv_ui(r[i].get_mpz_t(), p);
    lu_.solve(digit, transposed);
    for (std::size_t i = 0; i < n; ++i)
      if (digit[i]) mpz_addmul_ui(acc[i].get_mpz_t(), modulus.get_mpz_t(), digit[i]);
    modulus *= p;

    // r <- (r - M digit) / p
    for (std::size_t i = 0; i < n; ++i) {
      if (small_entries_) {
        __int128 s = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const std::int64_t a = transposed ? m_(static_cast<Index>(j), static_cast<Index>(i))
                                            : m_(static_cast<Index>(i), static_cast<Index>(j));
          if (a && digit[j]) s += static_cast<__int128>(a) * static_cast<__int128>(digit[j]);
        }
        add_int128(r[i].get_mpz_t(), -s);
      } else {
        for (std::size_t j = 0; j < n; ++j) {
          const std::int64_t a = transposed ? m_(static_cast<Index>(j), static_cast<Index>(i))
                                            : m_(static_cast<Index>(i), static_cast<Index>(j));
          if (!a || !digit[j]) continue;
          Integer prod = Integer(static_cast<long>(a)) * Integer(static_cast<unsigned long>(digit[j]));
          r[i] -= prod;
        }
      }
      mpz_divexact_ui(r[i].get_mpz_t(), r[i].get_mpz_t(), p);
    }

    bool zero_residual = true;
    for (const auto& v : r)
      if (v != 0) {
        zero_residual = false;
        break;
      }
    if (!zero_residual && step < next_attempt && step < max_steps) continue;
    next_attempt = step * 2;

    if (zero_residual) {
      // Exact integer solution: x = acc.
      out.numerators = acc;
      out.denominator = 1;
      if (check(out, rhs, transposed)) return out;
    }

    Integer bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), modulus.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Integer common = 1, num, den, shifted;
    std::vector<Rational> vals(n);
    bool good = true;
    for (std::size_t i = 0; i < n && good; ++i) {
      shifted = acc[i] * common % modulus;
      if (!rational_reconstruction(shifted, modulus, bound, num, den)) {
        good = false;
        break;
      }
      vals[i] = Rational(num, den * common);
      vals[i].canonicalize();
      common *= den;
    }
    if (good) {
      Integer d = 1;
      for (const auto& v : vals) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
      out.denominator = d;
      for (std::size_t i = 0; i < n; ++i)
        out.numerators[i] = vals[i].get_num() * (d / vals[i].get_den());
      if (check(out, rhs, transposed)) return out;
    }
    if (step > 2 * max_steps + 8) throw std::runtime_error("Dixon lifting did not converge");
  }
}

}  // namespace crossforest
