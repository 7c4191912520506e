#include "crossforest/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crossforest/rng.hpp"

namespace crossforest {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "grid") return GeneratorKind::Grid;
  if (name == "uniform") return GeneratorKind::Uniform;
  if (name == "circle") return GeneratorKind::Circle;
  if (name == "moment-curve") return GeneratorKind::MomentCurve;
  throw std::invalid_argument("unknown generator '" + name + "'");
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Grid: return "grid";
    case GeneratorKind::Uniform: return "uniform";
    case GeneratorKind::Circle: return "circle";
    case GeneratorKind::MomentCurve: return "moment-curve";
  }
  return "grid";
}

namespace {

RationalVector make(std::initializer_list<Rational> v) {
  RationalVector out(static_cast<Index>(v.size()));
  Index k = 0;
  for (const auto& x : v) out[k++] = x;
  return out;
}

// Does `p` keep `pts` in general position? Only the new point's tuples are checked.
bool compatible(const std::vector<RationalVector>& pts, const RationalVector& p) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i] == p) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.size() == 2) {
        if (orientation(pts[i], pts[j], p) == 0) return false;
        continue;
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        const RationalVector* s[] = {&pts[i], &pts[j], &pts[k], &p};
        if (orientation(std::span<const RationalVector* const>(s, 4)) == 0) return false;
      }
    }
  }
  return true;
}

std::vector<RationalVector> uniform(Index n, std::uint64_t seed, Index d) {
  std::vector<RationalVector> pts;
  const Rational scale = power_of_two_inverse(32);
  std::uint64_t counter = 0;
  while (static_cast<Index>(pts.size()) < n) {
    RationalVector p(d);
    for (Index c = 0; c < d; ++c) p[c] = Rational(static_cast<unsigned long>(draw(seed, counter++) >> 32)) * scale;
    if (compatible(pts, p)) pts.push_back(std::move(p));
  }
  return pts;
}

// Point of the unit circle at parameter u: ((1-u^2)/(1+u^2), 2u/(1+u^2)).
std::vector<RationalVector> circle(Index n) {
  std::vector<RationalVector> pts;
  const Rational q = power_of_two_inverse(24);
  for (Index k = 0; k < n; ++k) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    if (std::abs(theta - std::numbers::pi) < 1e-12) {
      pts.push_back(make({-1, 0}));
      continue;
    }
    const double half = std::tan(theta / 2);
    const Rational u = Rational(static_cast<long>(std::llround(half / std::ldexp(1.0, -24)))) * q;
    const Rational den = 1 + u * u;
    pts.push_back(make({Rational((1 - u * u) / den), Rational(2 * u / den)}));
  }
  return pts;
}

}  // namespace

PointSet generate(GeneratorKind kind, Index n, std::uint64_t seed, Index dimension) {
  if (n < 1) throw std::invalid_argument("generator needs n >= 1");
  if (dimension != 2 && dimension != 3) throw DimensionMismatch("dimension must be 2 or 3");
  std::vector<RationalVector> coords;
  switch (kind) {
    case GeneratorKind::Grid: {
      if (dimension != 2) throw DimensionMismatch("grid generator is planar");
      const auto side = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
      for (Index i = 0; i < n; ++i) coords.push_back(make({Rational(i % side), Rational(i / side)}));
      coords = symbolic_perturbation(std::move(coords));
      break;
    }
    case GeneratorKind::Uniform:
      coords = uniform(n, seed, dimension);
      break;
    case GeneratorKind::Circle:
      if (dimension != 2) throw DimensionMismatch("circle generator is planar");
      coords = circle(n);
      break;
    case GeneratorKind::MomentCurve:
      for (Index i = 1; i <= n; ++i) {
        if (dimension == 2)
          coords.push_back(make({Rational(i), Rational(i * i)}));
        else
          coords.push_back(make({Rational(i), Rational(i * i), Rational(i * i * i)}));
      }
      break;
  }
  return PointSet::from_coordinates(std::move(coords));
}

}  // namespace crossforest
