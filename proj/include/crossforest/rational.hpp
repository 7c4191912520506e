#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

namespace crossforest {

using Rational = mpq_class;
using Integer = mpz_class;
using Index = Eigen::Index;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RationalVector = Vector<Rational>;

/// Parses "p/q", an integer, or a decimal literal ("-0.125", "3e-2") into an exact rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational to_rational(double value);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }
inline int sign(const Integer& value) { return sgn(value); }

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// floor(sqrt(value) * 2^bits) / 2^bits, exact. value must be >= 0.
Rational sqrt_lower(const Rational& value, unsigned bits);

/// 2^-exponent as an exact rational.
Rational power_of_two_inverse(unsigned exponent);

}  // namespace crossforest

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
