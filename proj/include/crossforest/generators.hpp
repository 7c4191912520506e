#pragma once

#include <cstdint>
#include <string>

#include "crossforest/geometry.hpp"

namespace crossforest {

enum class GeneratorKind { Grid, Uniform, Circle, MomentCurve };

GeneratorKind parse_generator_kind(const std::string& name);
const char* to_string(GeneratorKind kind);

/// grid: ceil(sqrt n)-wide lattice in row-major order, symbolically perturbed (d = 2).
/// uniform: coordinates k / 2^32 from the seeded stream; draws that break general position
/// are discarded. circle: rational points exactly on the unit circle near the n-th roots
/// of unity (d = 2). moment-curve: (i, i^2[, i^3]) for i = 1..n.
/// Throws DimensionMismatch for unsupported kind/dimension pairs.
PointSet generate(GeneratorKind kind, Index n, std::uint64_t seed, Index dimension = 2);

}  // namespace crossforest
