#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "crossforest/pipeline.hpp"

namespace crossforest {

using Json = nlohmann::ordered_json;

/// JSON array of [x, y(, z)] entries, each a number or a "p/q" string. With `perturb` the
/// coordinates pass through symbolic_perturbation before the general-position check.
PointSet points_from_json(const Json& doc, bool perturb = false);
Json points_to_json(const PointSet& points);

/// { "ground": n, "sets": [[i, ...], ...] }
RangeSpace set_system_from_json(const Json& doc);

Json edges_to_json(std::span<const Edge> edges);

/// levels, total_crossing, seed, mode, length_bits, tree. Timings are volatile and only
/// included on request.
Json report_to_json(const BuildResult& result, bool timings = false);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct SvgOptions {
  Index lines = 0;  // most-crossed canonical lines to draw
  double size = 600;
};

/// Points as circles, tree edges as segments, optionally the most-crossed canonical lines
/// dashed and labeled with their crossing counts. Planar only.
void render_svg(std::ostream& os, const PointSet& points, std::span<const Edge> tree, const RangeSpace& space,
                const SvgOptions& options = {});

}  // namespace crossforest
