// Acceptance checks, one line per criterion. Exit status is nonzero if any selected
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "crossforest/generators.hpp"
#include "crossforest/rng.hpp"
#include "crossforest/verify.hpp"

using namespace crossforest;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Index isqrt_ceil(Index n) {
  Index t = 0;
  while (t * t < n) ++t;
  return t;
}

// least integer t with t^3 >= 27 n^2, i.e. ceil(3 n^(2/3))
Index three_n_two_thirds(Index n) {
  Index t = 0;
  while (t * t * t < 27 * n * n) ++t;
  return t;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const GeneratorKind kPlanarKinds[] = {GeneratorKind::Grid, GeneratorKind::Uniform, GeneratorKind::Circle};

std::vector<PointSet> oracle_sets() {
  std::vector<PointSet> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(generate(GeneratorKind::Uniform, 6, 1000 + seed));
  return out;
}

Outcome feasibility_at_sqrt_n() {
  Outcome o;
  int count = 0;
  for (GeneratorKind kind : kPlanarKinds)
    for (Index n : {9, 16, 25, 36, 49}) {
      const auto space = canonical_ranges(generate(kind, n, 17));
      const Index t = isqrt_ceil(n);
      const auto lp = build_primal(space, t);
      const auto sol = solve(lp);
      const bool ok = sol.optimal() && is_primal_feasible(lp, sol.values);
      if (!ok) {
        o.pass = false;
        o.detail += fmt(" %s:%ld infeasible at t=%ld;", to_string(kind), n, t);
      }
      ++count;
    }
  if (o.pass) o.detail = fmt("%d instances feasible at t = ceil(sqrt n)", count);
  return o;
}

Outcome feasibility_in_space() {
  Outcome o;
  for (Index n : {10, 15, 20}) {
    const auto space = canonical_ranges(generate(GeneratorKind::Uniform, n, 23, 3));
    const Index t = three_n_two_thirds(n);
    const auto lp = build_primal(space, t);
    const auto sol = solve(lp);
    const bool ok = sol.optimal() && is_primal_feasible(lp, sol.values);
    o.pass &= ok;
    o.detail += fmt(" n=%ld t=%ld ranges=%ld %s;", n, t, space.size(), ok ? "feasible" : "INFEASIBLE");
  }
  return o;
}

Outcome grid_crossing() {
  Outcome o;
  const auto space = canonical_ranges(generate(GeneratorKind::Grid, 64, 0));
  for (Mode mode : {Mode::Randomized, Mode::DeterministicPlanar}) {
    LevelCache cache;
    int good = 0;
    std::string list;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto r = build_tree(space, mode, seed, kDefaultMaxRetries, &cache);
      if (r.report.total_crossing <= 32) ++good;
      list += std::to_string(r.report.total_crossing) + (seed < 10 ? "," : "");
    }
    o.pass &= good >= 9;
    o.detail += fmt(" %s: %d/10 within 32 [%s];", to_string(mode), good, list.c_str());
  }
  return o;
}

Outcome oracle_sandwich() {
  Outcome o;
  const auto sets = oracle_sets();
  int runs = 0, subsets = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto space = canonical_ranges(sets[k]);
    const Index t_opt = brute_force_opt_tree(space).t_opt;
    const Rational t_star = min_feasible_t(space);
    if (t_star > t_opt) {
      o.pass = false;
      o.detail += fmt(" set %zu: t*=%s > t_opt=%ld;", k, to_string(t_star).c_str(), t_opt);
    }
    for (Mode mode : {Mode::Randomized, Mode::DeterministicPlanar}) {
      const auto r = build_tree(space, mode, 500 + k);
      ++runs;
      if (r.report.total_crossing < t_opt) {
        o.pass = false;
        o.detail += fmt(" set %zu: tree crossing %ld < t_opt %ld;", k, r.report.total_crossing, t_opt);
      }
    }
    if (k >= 5) continue;
    for (unsigned mask = 1; mask < 64; ++mask) {
      std::vector<Index> x;
      for (Index i = 0; i < 6; ++i)
        if (mask >> i & 1u) x.push_back(i);
      const auto sub = restrict_to(space, x);
      ++subsets;
      const Index sub_opt = brute_force_opt_tree(sub).t_opt;
      const Rational sub_star = x.size() >= 2 ? min_feasible_t(sub) : Rational(0);
      if (sub_opt > 2 * t_opt || sub_star > 2 * t_opt) {
        o.pass = false;
        o.detail += fmt(" set %zu mask %u: restricted %ld > 2*%ld;", k, mask, sub_opt, t_opt);
      }
    }
  }
  if (o.pass) o.detail = fmt("20 sets, %d pipeline runs, %d subsets checked", runs, subsets);
  return o;
}

Outcome rounding_statistics() {
  Outcome o;
  const Index n = 50;
  const auto space = canonical_ranges(generate(GeneratorKind::Uniform, n, 31));
  const Rational t = min_feasible_t(space);
  const auto sol = solve(build_primal(space, t));
  if (!sol.optimal()) return {false, "primal not optimal at t*"};
  double comps = 0, size = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = randomized_round(sol, space, seed);
    comps += static_cast<double>(count_components(n, f.edges));
    size += static_cast<double>(f.size());
  }
  comps /= 100;
  size /= 100;
  const double gamma = sol.objective.get_d();
  o.pass = comps <= 0.92 * n && std::abs(size - gamma) <= 0.05 * gamma;
  o.detail = fmt("t*=%.4f mean components %.2f (limit %.1f), mean |F| %.2f vs gamma %.2f", t.get_d(), comps, 0.92 * n,
                 size, gamma);
  return o;
}

Outcome planar_rounding() {
  Outcome o;
  int count = 0;
  for (Index n : {10, 16, 20})
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto pts = generate(GeneratorKind::Uniform, n, 7000 + seed);
      const auto space = canonical_ranges(pts);
      const Rational t = min_feasible_t(space);
      const auto sol = solve(build_weighted_primal(space, t));
      ++count;
      std::string why;
      if (!sol.optimal()) {
        why = "weighted LP not optimal";
      } else if (!support_crossings(sol.values, pts).empty()) {
        why = "support not planar";
      } else {
        const auto f = deterministic_planar_round(sol, pts);
        if (crossing_number(f, space) > 12 * t) why = "crossing above 12t";
        if (4 * count_components(n, f.edges) > 3 * n) why = "components above 3n/4";
      }
      if (!why.empty()) {
        o.pass = false;
        o.detail += fmt(" n=%ld seed=%lu: %s;", n, static_cast<unsigned long>(seed), why.c_str());
      }
    }
  if (o.pass) o.detail = fmt("%d instances: planar support, crossing <= 12t, components <= 3n/4", count);
  return o;
}

Outcome separation_bound() {
  Outcome o;
  for (Index n : {4, 9, 16, 25})
    for (GeneratorKind kind : kPlanarKinds) {
      const auto c = check_separation_lower_bound(generate(kind, n, 41));
      o.pass &= c.holds;
      if (kind == GeneratorKind::Grid || !c.holds)
        o.detail += fmt(" %s:%ld sep=%s;", to_string(kind), n, to_string(c.optimum).c_str());
    }
  return o;
}

Outcome crossing_disk() {
  Outcome o;
  int configs = 0, checks = 0;
  const Rational unit = power_of_two_inverse(20);
  for (std::uint64_t seed = 0; configs < 20; ++seed) {
    std::uint64_t ctr = 0;
    auto coord = [&]() -> Rational { return Rational(static_cast<long>(draw(seed, ctr++) >> 44)) * unit - Rational(1, 2); };
    std::vector<Hyperplane> lines;
    for (int k = 0; k < 10; ++k) {
      RationalVector normal(2);
      normal[0] = coord();
      normal[1] = coord();
      lines.push_back(Hyperplane{normal, coord()});
    }
    std::vector<RationalVector> coords;
    for (int k = 0; k < 20; ++k) {
      RationalVector p(2);
      p[0] = 2 * coord();
      p[1] = 2 * coord();
      coords.push_back(p);
    }
    try {
      const auto pts = PointSet::from_coordinates(coords);
      for (Index r = 1; r <= 5; ++r) {
        const bool ok = check_crossing_disk_lemma(lines, pts, r);
        ++checks;
        if (!ok) {
          o.pass = false;
          o.detail += fmt(" config %d r=%ld fails;", configs, r);
        }
      }
      ++configs;
    } catch (const DegenerateInput&) {
      // resample
    }
  }
  if (o.pass) o.detail = fmt("%d configurations x r=1..5 (%d checks, 20 points each)", configs, checks);
  return o;
}

Outcome strong_duality() {
  Outcome o;
  int count = 0;
  auto check = [&](const RangeSpace& space, const Rational& t, const std::string& name) {
    const auto p = solve(build_primal(space, t));
    const auto d = solve(build_dual(space, t));
    ++count;
    if (!check_duality_certificate(space, t, p, d)) {
      o.pass = false;
      o.detail += " " + name + " mismatch;";
    }
  };
  for (GeneratorKind kind : kPlanarKinds)
    for (Index n : {9, 16, 25, 36, 49})
      check(canonical_ranges(generate(kind, n, 17)), isqrt_ceil(n), std::string(to_string(kind)) + ":" + std::to_string(n));
  const auto sets = oracle_sets();
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto space = canonical_ranges(sets[k]);
    check(space, brute_force_opt_tree(space).t_opt, "oracle set " + std::to_string(k) + " at t_opt");
    check(space, min_feasible_t(space), "oracle set " + std::to_string(k) + " at t*");
  }
  if (o.pass) o.detail = fmt("%d primal/dual pairs with equal exact optima", count);
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"LP feasible at t = ceil(sqrt n) for planar sets", feasibility_at_sqrt_n},
      {"LP feasible at t = ceil(3 n^(2/3)) in 3-space", feasibility_in_space},
      {"8x8 grid tree crossing <= 32 in >= 9/10 runs per mode", grid_crossing},
      {"oracle sandwich and restricted optimum <= 2 t_opt", oracle_sandwich},
      {"randomized rounding components and |F|", rounding_statistics},
      {"deterministic planar rounding guarantees", planar_rounding},
      {"separation optimum >= sqrt(n)/2", separation_bound},
      {"crossing disk holds r(r+1)/2 vertices", crossing_disk},
      {"strong duality on criteria 1 and 4 instances", strong_duality},
  };
  std::vector<int> chosen;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) chosen.push_back(std::atoi(argv[++i]));
  if (chosen.empty())
    for (int c = 1; c <= 9; ++c) chosen.push_back(c);

  bool ok = true;
  for (int c : chosen) {
    if (c < 1 || c > 9) {
      std::fprintf(stderr, "no criterion %d\n", c);
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = all[static_cast<std::size_t>(c - 1)].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s (%.1fs):%s\n", c, out.pass ? "PASS" : "FAIL", all[static_cast<std::size_t>(c - 1)].name,
                secs, out.detail.empty() ? "" : (" " + out.detail).c_str());
    std::fflush(stdout);
    ok &= out.pass;
  }
  return ok ? 0 : 1;
}
