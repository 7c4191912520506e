#include "crossforest/verify.hpp"

#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace crossforest {

unsigned worker_count() {
  if (const char* env = std::getenv("CROSSING_FOREST_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<Edge> pruefer_decode(std::span<const Index> sequence, Index n) {
  std::vector<Index> degree(static_cast<std::size_t>(n), 1);
  for (Index v : sequence) ++degree[static_cast<std::size_t>(v)];
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  // Linear-time decoding with a moving leaf pointer.
  Index ptr = 0;
  while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  Index leaf = ptr;
  for (Index v : sequence) {
    edges.emplace_back(leaf, v);
    if (--degree[static_cast<std::size_t>(v)] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  std::sort(edges.begin(), edges.end());
  return edges;
}

OracleResult brute_force_opt_tree(const RangeSpace& space) {
  const Index n = space.ground_size();
  if (n > kOracleMaxPoints) throw std::invalid_argument("brute-force oracle limited to 8 points");
  OracleResult out;
  if (n <= 1) {
    out.witness = extract_spanning_tree(n, EdgeSet{});
    out.trees_examined = 1;
    return out;
  }
  std::vector<std::uint64_t> masks;
  for (const auto& r : space.ranges()) masks.push_back(r.members.words().empty() ? 0 : r.members.words()[0]);

  const std::uint64_t total = [&] {
    std::uint64_t c = 1;
    for (Index k = 0; k < n - 2; ++k) c *= static_cast<std::uint64_t>(n);
    return c;
  }();

  auto crossing = [&](const std::vector<Edge>& edges, Index cap) {
    Index worst = 0;
    for (auto m : masks) {
      Index c = 0;
      for (const auto& e : edges) c += static_cast<Index>(((m >> e.first) ^ (m >> e.second)) & 1u);
      worst = std::max(worst, c);
      if (worst >= cap) break;
    }
    return worst;
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), total));
  std::vector<Index> best(workers, std::numeric_limits<Index>::max());
  std::vector<std::uint64_t> best_code(workers, 0);
  auto work = [&](unsigned w) {
    std::vector<Index> seq(static_cast<std::size_t>(n - 2));
    for (std::uint64_t code = w; code < total; code += workers) {
      std::uint64_t c = code;
      for (Index k = n - 3; k >= 0; --k) {
        seq[static_cast<std::size_t>(k)] = static_cast<Index>(c % static_cast<std::uint64_t>(n));
        c /= static_cast<std::uint64_t>(n);
      }
      const Index x = crossing(pruefer_decode(seq, n), best[w]);
      if (x < best[w]) {
        best[w] = x;
        best_code[w] = code;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  // Lowest code among the minimizers.
  unsigned pick = 0;
  for (unsigned w = 1; w < workers; ++w)
    if (best[w] < best[pick] || (best[w] == best[pick] && best_code[w] < best_code[pick])) pick = w;
  std::vector<Index> seq(static_cast<std::size_t>(n - 2));
  std::uint64_t c = best_code[pick];
  for (Index k = n - 3; k >= 0; --k) {
    seq[static_cast<std::size_t>(k)] = static_cast<Index>(c % static_cast<std::uint64_t>(n));
    c /= static_cast<std::uint64_t>(n);
  }
  out.t_opt = best[pick];
  out.witness = extract_spanning_tree(n, EdgeSet(pruefer_decode(seq, n)));
  out.trees_examined = total;
  return out;
}

bool check_duality_certificate(const RangeSpace& space, const Rational& t, const FractionalSolution& primal,
                               const FractionalSolution& dual) {
  if (!primal.optimal() || !dual.optimal()) return false;
  const LPInstance p = build_primal(space, t);
  const LPInstance d = build_dual(space, t);
  if (static_cast<Index>(primal.values.size()) != p.num_variables()) return false;
  if (static_cast<Index>(dual.values.size()) != d.num_variables()) return false;
  if (!is_primal_feasible(p, primal.values) || !is_primal_feasible(d, dual.values)) return false;
  return objective_value(p, primal.values) == objective_value(d, dual.values);
}

SeparationCheck check_separation_lower_bound(const RangeSpace& space) {
  SeparationCheck out;
  const auto sol = solve(build_separation(space));
  if (!sol.optimal()) throw AlgorithmFailure("separation LP not solved to optimality");
  out.optimum = sol.objective;
  // opt >= sqrt(n)/2  <=>  4 opt^2 >= n (opt >= 0)
  out.holds = 4 * out.optimum * out.optimum >= space.ground_size();
  return out;
}

SeparationCheck check_separation_lower_bound(const PointSet& points) {
  if (points.dimension() != 2) throw DimensionMismatch("separation bound is stated for planar sets");
  return check_separation_lower_bound(canonical_ranges(points));
}

bool check_crossing_disk_lemma(std::span<const Hyperplane> lines, const PointSet& points, Index r) {
  if (r < 0) throw std::invalid_argument("radius must be nonnegative");
  if (static_cast<Index>(lines.size()) < 2 * r) throw std::invalid_argument("need at least 2r lines");
  if (!points.empty() && points.dimension() != 2) throw DimensionMismatch("crossing disks are planar");
  for (const auto& l : lines)
    if (l.dimension() != 2) throw DimensionMismatch("crossing disks are planar");
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const auto& u = lines[a].normal;
      const auto& v = lines[b].normal;
      if (u[0] * v[1] - u[1] * v[0] == 0) throw DegenerateInput("parallel lines");
      const auto x = line_intersection(lines[a], lines[b]);
      for (std::size_t c = b + 1; c < lines.size(); ++c)
        if (side_of(lines[c], x) == 0) throw DegenerateInput("three concurrent lines");
    }
  for (const auto& p : points.points())
    for (const auto& l : lines)
      if (side_of(l, p) == 0) throw DegenerateInput("point " + std::to_string(p.id) + " lies on a line");

  const Index need = r * (r + 1) / 2;
  for (const auto& p : points.points())
    if (crossing_disk_size(lines, p.coords, Rational(r)) < need) return false;
  return true;
}

}  // namespace crossforest
