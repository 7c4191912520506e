#pragma once

#include <initializer_list>
#include <vector>

#include "crossforest/generators.hpp"
#include "crossforest/verify.hpp"

namespace cf = crossforest;

inline cf::RationalVector vec(std::initializer_list<cf::Rational> v) {
  cf::RationalVector out(static_cast<cf::Index>(v.size()));
  cf::Index k = 0;
  for (const auto& x : v) out[k++] = x;
  return out;
}

inline cf::PointSet points(std::initializer_list<std::initializer_list<cf::Rational>> rows) {
  std::vector<cf::RationalVector> coords;
  for (const auto& r : rows) coords.push_back(vec(r));
  return cf::PointSet::from_coordinates(std::move(coords));
}

inline cf::PointSet triangle() { return points({{0, 0}, {1, 0}, {0, 1}}); }
inline cf::PointSet unit_square() { return points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline cf::Hyperplane line(cf::Rational a, cf::Rational b, cf::Rational c) { return {vec({a, b}), c}; }

inline cf::FractionalSolution values(std::vector<cf::Rational> v) {
  cf::FractionalSolution s;
  s.status = cf::LPStatus::Optimal;
  s.values = std::move(v);
  return s;
}
