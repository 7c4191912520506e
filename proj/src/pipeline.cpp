#include "crossforest/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "crossforest/rng.hpp"

namespace crossforest {

const char* to_string(Mode mode) {
  return mode == Mode::Randomized ? "randomized" : "deterministic-planar";
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::optional<LevelCache::Entry> LevelCache::find(Mode mode, const std::vector<Index>& points) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({mode, points});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void LevelCache::store(Mode mode, const std::vector<Index>& points, Entry entry) {
  std::lock_guard lock(mutex_);
  entries_.emplace(std::make_pair(mode, points), std::move(entry));
}

Index max_levels(Index n) {
  if (n <= 1) return 1;
  return static_cast<Index>(std::ceil(std::log(static_cast<double>(n)) / std::log(20.0 / 19.0))) + 1;
}

BuildResult build_tree(const RangeSpace& space, Mode mode, std::uint64_t seed, Index max_retries, LevelCache* cache) {
  const Index n = space.ground_size();
  if (n == 0) throw std::invalid_argument("cannot build a tree on an empty ground set");
  if (mode == Mode::DeterministicPlanar && (!space.is_geometric() || space.points().dimension() != 2))
    throw DimensionMismatch("deterministic-planar mode needs points in the plane");

  const auto start = Clock::now();
  RunReport report;
  report.mode = mode;
  report.seed = seed;

  std::vector<Index> survivors(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) survivors[static_cast<std::size_t>(i)] = i;
  std::vector<Edge> all_edges;

  for (Index level = 0; survivors.size() > 1; ++level) {
    if (level >= max_levels(n)) throw AlgorithmFailure("level count exceeded ceil(log_{20/19} n) + 1");
    const auto level_start = Clock::now();
    const Index m = static_cast<Index>(survivors.size());
    const RangeSpace sub = restrict_to(space, survivors);

    LevelTrace trace;
    trace.level = level;
    trace.points = survivors;
    std::optional<LevelCache::Entry> cached = cache ? cache->find(mode, survivors) : std::nullopt;
    if (!cached) {
      LevelCache::Entry entry;
      entry.t = min_feasible_t(sub, ThresholdMode::Exact);
      entry.solution = solve(mode == Mode::Randomized ? build_primal(sub, entry.t) : build_weighted_primal(sub, entry.t));
      if (cache) cache->store(mode, survivors, entry);
      cached = std::move(entry);
    }
    trace.t = cached->t;
    const FractionalSolution& sol = cached->solution;

    EdgeSet local;
    if (mode == Mode::Randomized) {
      if (sol.status == LPStatus::Infeasible) throw AlgorithmFailure("primal LP infeasible at its own threshold");
      auto [f, stats] = round_until_reduced(sol, sub, splitmix64(seed + static_cast<std::uint64_t>(level)), max_retries);
      local = std::move(f);
      trace.retries = stats.retries;
    } else {
      if (!sol.optimal()) throw AlgorithmFailure("weighted LP not solved to optimality");
      local = deterministic_planar_round(sol, sub.points());
      if (20 * count_components(m, local.edges) > 19 * m)
        throw AlgorithmFailure("planar rounding did not reduce the component count");
    }
    trace.crossing = crossing_number(local, sub);

    const auto roots = component_roots(m, local.edges);
    std::vector<Edge> global;
    global.reserve(local.size());
    for (const auto& e : local.edges)
      global.emplace_back(survivors[static_cast<std::size_t>(e.first)], survivors[static_cast<std::size_t>(e.second)]);
    trace.edges = EdgeSet(std::move(global), local.source, local.seed);
    all_edges.insert(all_edges.end(), trace.edges.edges.begin(), trace.edges.edges.end());

    std::vector<Index> next;
    for (Index k = 0; k < m; ++k)
      if (roots[static_cast<std::size_t>(k)] == k) next.push_back(survivors[static_cast<std::size_t>(k)]);
    trace.components = static_cast<Index>(next.size());
    trace.millis = since(level_start);
    report.levels.push_back(std::move(trace));
    survivors = std::move(next);
  }

  report.edges = EdgeSet(std::move(all_edges), mode == Mode::Randomized ? EdgeSource::Randomized
                                                                        : EdgeSource::DeterministicPlanar,
                         seed);
  BuildResult out;
  out.tree = extract_spanning_tree(n, report.edges);
  report.total_crossing = crossing_number(std::span<const Edge>(out.tree.edges), space);
  report.millis = since(start);
  out.report = std::move(report);
  return out;
}

SpanningTree extract_spanning_tree(Index n, const EdgeSet& edges) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& e : edges.edges) {
    if (e.first < 0 || e.second >= n || e.first == e.second) throw std::invalid_argument("edge outside the ground set");
    adj[static_cast<std::size_t>(e.first)].push_back(e.second);
    adj[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  SpanningTree tree;
  tree.n = n;
  tree.parent.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return tree;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Index> queue;
  queue.push(0);
  seen[0] = 1;
  Index reached = 1;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop();
    for (Index w : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      tree.parent[static_cast<std::size_t>(w)] = v;
      tree.edges.emplace_back(v, w);
      ++reached;
      queue.push(w);
    }
  }
  if (reached != n)
    throw AlgorithmFailure("edge set is disconnected: reached " + std::to_string(reached) + " of " +
                           std::to_string(n) + " points");
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

std::vector<Edge> cycle_edges(std::span<const Index> cycle) {
  std::vector<Edge> out;
  if (cycle.size() < 2) return out;
  for (std::size_t k = 0; k < cycle.size(); ++k) out.emplace_back(cycle[k], cycle[(k + 1) % cycle.size()]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Index> euler_shortcut(const SpanningTree& tree, std::span<const Index> subset, const RangeSpace& space) {
  if (subset.empty()) throw std::invalid_argument("shortcut subset is empty");
  std::vector<char> wanted(static_cast<std::size_t>(tree.n), 0);
  for (Index v : subset) {
    if (v < 0 || v >= tree.n) throw std::invalid_argument("shortcut subset index outside the tree");
    wanted[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(tree.n));
  for (const auto& e : tree.edges) {
    adj[static_cast<std::size_t>(e.first)].push_back(e.second);
    adj[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Iterative DFS; a vertex's first visit is its position in the Euler tour.
  const Index start = *std::min_element(subset.begin(), subset.end());
  std::vector<Index> cycle;
  std::vector<char> visited(static_cast<std::size_t>(tree.n), 0);
  std::vector<std::pair<Index, std::size_t>> stack{{start, 0}};
  visited[static_cast<std::size_t>(start)] = 1;
  cycle.push_back(start);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (next == nb.size()) {
      stack.pop_back();
      continue;
    }
    const Index w = nb[next++];
    if (visited[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = 1;
    if (wanted[static_cast<std::size_t>(w)]) cycle.push_back(w);
    stack.emplace_back(w, 0);
  }
  if (cycle.size() != static_cast<std::size_t>(std::count(wanted.begin(), wanted.end(), 1)))
    throw std::invalid_argument("shortcut subset is not within one tree component");

  const auto edges = cycle_edges(cycle);
  const Index cyc = crossing_number(std::span<const Edge>(edges), space);
  const Index bound = 2 * crossing_number(std::span<const Edge>(tree.edges), space);
  if (cyc > bound)
    throw AlgorithmFailure("shortcut cycle crosses " + std::to_string(cyc) + " > " + std::to_string(bound));
  return cycle;
}

}  // namespace crossforest
