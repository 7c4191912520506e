#include "crossforest/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crossforest {

namespace {

Rational coordinate(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_number()) return to_rational(v.get<double>());
  throw std::invalid_argument("coordinate must be a number or a rational string");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

PointSet points_from_json(const Json& doc, bool perturb) {
  if (!doc.is_array()) throw std::invalid_argument("point file must be a JSON array");
  std::vector<RationalVector> coords;
  for (const auto& entry : doc) {
    if (!entry.is_array()) throw std::invalid_argument("each point must be an array of coordinates");
    RationalVector p(static_cast<Index>(entry.size()));
    for (std::size_t c = 0; c < entry.size(); ++c) p[static_cast<Index>(c)] = coordinate(entry[c]);
    coords.push_back(std::move(p));
  }
  if (perturb) coords = symbolic_perturbation(std::move(coords));
  return PointSet::from_coordinates(std::move(coords));
}

Json points_to_json(const PointSet& points) {
  Json out = Json::array();
  for (const auto& p : points.points()) {
    Json row = Json::array();
    for (Index c = 0; c < p.dimension(); ++c) row.push_back(to_string(p.coords[c]));
    out.push_back(std::move(row));
  }
  return out;
}

RangeSpace set_system_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("ground") || !doc.contains("sets"))
    throw std::invalid_argument("set-system file needs \"ground\" and \"sets\"");
  const Index n = doc.at("ground").get<Index>();
  std::vector<std::vector<Index>> sets;
  for (const auto& s : doc.at("sets")) sets.push_back(s.get<std::vector<Index>>());
  return explicit_ranges(n, sets);
}

Json edges_to_json(std::span<const Edge> edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(Json::array({e.first, e.second}));
  return out;
}

Json report_to_json(const BuildResult& result, bool timings) {
  const auto& r = result.report;
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json lv;
    lv["i"] = l.level;
    lv["n_i"] = static_cast<Index>(l.points.size());
    lv["t_i"] = to_string(l.t);
    lv["edges"] = edges_to_json(l.edges.edges);
    lv["components"] = l.components;
    lv["crossing_i"] = l.crossing;
    lv["retries"] = l.retries;
    levels.push_back(std::move(lv));
  }
  Json out;
  out["mode"] = to_string(r.mode);
  out["seed"] = r.seed;
  out["n"] = result.tree.n;
  out["length_bits"] = kLengthBits;
  out["levels"] = std::move(levels);
  out["total_crossing"] = r.total_crossing;
  out["tree"] = edges_to_json(result.tree.edges);
  if (timings) {
    Json t;
    t["total"] = r.millis;
    Json per = Json::array();
    for (const auto& l : r.levels) per.push_back(l.millis);
    t["levels"] = std::move(per);
    out["timings_ms"] = std::move(t);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

void render_svg(std::ostream& os, const PointSet& points, std::span<const Edge> tree, const RangeSpace& space,
                const SvgOptions& options) {
  if (!points.empty() && points.dimension() != 2) throw DimensionMismatch("SVG output is planar");
  double lo[2] = {0, 0}, hi[2] = {1, 1};
  for (Index i = 0; i < points.size(); ++i)
    for (int c = 0; c < 2; ++c) {
      const double v = points[i].coords[c].get_d();
      if (i == 0) lo[c] = hi[c] = v;
      lo[c] = std::min(lo[c], v);
      hi[c] = std::max(hi[c], v);
    }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
  const double margin = 0.08 * span;
  const double scale = options.size / (span + 2 * margin);
  auto sx = [&](double x) { return (x - lo[0] + margin) * scale; };
  auto sy = [&](double y) { return options.size - (y - lo[1] + margin) * scale; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(options.size) << "\" height=\""
     << fmt(options.size) << "\" viewBox=\"0 0 " << fmt(options.size) << ' ' << fmt(options.size) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (options.lines > 0 && space.is_geometric()) {
    std::vector<std::pair<Index, Index>> counts;  // (-count, range)
    for (Index k = 0; k < space.size(); ++k)
      if (space.ranges()[static_cast<std::size_t>(k)].rep)
        counts.emplace_back(-crossing_count(tree, space.ranges()[static_cast<std::size_t>(k)].members), k);
    std::sort(counts.begin(), counts.end());
    const double x0 = lo[0] - margin, x1 = hi[0] + margin, y0 = lo[1] - margin, y1 = hi[1] + margin;
    for (std::size_t k = 0; k < counts.size() && static_cast<Index>(k) < options.lines; ++k) {
      const auto& h = *space.ranges()[static_cast<std::size_t>(counts[k].second)].rep;
      const double a = h.normal[0].get_d(), b = h.normal[1].get_d(), c = h.offset.get_d();
      double px0, py0, px1, py1;
      if (std::abs(b) > std::abs(a)) {
        px0 = x0, px1 = x1, py0 = (c - a * x0) / b, py1 = (c - a * x1) / b;
      } else {
        py0 = y0, py1 = y1, px0 = (c - b * y0) / a, px1 = (c - b * y1) / a;
      }
      os << "<line x1=\"" << fmt(sx(px0)) << "\" y1=\"" << fmt(sy(py0)) << "\" x2=\"" << fmt(sx(px1))
         << "\" y2=\"" << fmt(sy(py1)) << "\" stroke=\"#c33\" stroke-dasharray=\"6 4\"/>\n";
      os << "<text x=\"" << fmt(sx((px0 + px1) / 2)) << "\" y=\"" << fmt(sy((py0 + py1) / 2))
         << "\" font-size=\"12\" fill=\"#c33\">" << -counts[k].first << "</text>\n";
    }
  }
  for (const auto& e : tree) {
    const auto& p = points[e.first].coords;
    const auto& q = points[e.second].coords;
    os << "<line x1=\"" << fmt(sx(p[0].get_d())) << "\" y1=\"" << fmt(sy(p[1].get_d())) << "\" x2=\""
       << fmt(sx(q[0].get_d())) << "\" y2=\"" << fmt(sy(q[1].get_d())) << "\" stroke=\"black\"/>\n";
  }
  for (const auto& p : points.points())
    os << "<circle cx=\"" << fmt(sx(p.coords[0].get_d())) << "\" cy=\"" << fmt(sy(p.coords[1].get_d()))
       << "\" r=\"4\" fill=\"#248\"/>\n";
  os << "</svg>\n";
}

}  // namespace crossforest
