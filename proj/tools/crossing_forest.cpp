// crossing_forest: generate point sets, build low-crossing spanning trees, dump and check LPs.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <mutex>
#include <thread>

#include "crossforest/generators.hpp"
#include "crossforest/io.hpp"
#include "crossforest/verify.hpp"

using namespace crossforest;

namespace {

struct Input {
  std::string path;
  std::string gen;  // kind:n
  bool abstract = false;
  bool perturb = false;
  Index dim = 2;
  std::uint64_t seed = 1;
};

struct Instance {
  std::optional<PointSet> points;
  RangeSpace space;
};

void add_input_options(CLI::App* app, Input& in) {
  app->add_option("--in", in.path, "point file, or set-system file with --abstract");
  app->add_option("--gen", in.gen, "generator spec kind:n (grid, uniform, circle, moment-curve)");
  app->add_flag("--abstract", in.abstract, "input is a set system");
  app->add_flag("--perturb", in.perturb, "symbolically perturb input points");
  app->add_option("--dim", in.dim, "dimension for generated points")->check(CLI::Range(2, 3));
  app->add_option("--seed", in.seed, "seed");
}

Instance load(const Input& in) {
  if (in.path.empty() == in.gen.empty()) throw CLI::ValidationError("input", "give exactly one of --in and --gen");
  Instance out;
  if (!in.gen.empty()) {
    const auto colon = in.gen.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--gen", "expected kind:n");
    const Index n = std::stol(in.gen.substr(colon + 1));
    out.points = generate(parse_generator_kind(in.gen.substr(0, colon)), n, in.seed, in.dim);
  } else if (in.abstract) {
    out.space = set_system_from_json(read_json_file(in.path));
    return out;
  } else {
    out.points = points_from_json(read_json_file(in.path), in.perturb);
  }
  out.space = canonical_ranges(*out.points);
  return out;
}

void emit(const Json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

LPInstance build_lp(const RangeSpace& space, const std::string& kind, const Rational& t) {
  if (kind == "primal") return build_primal(space, t);
  if (kind == "weighted") return build_weighted_primal(space, t);
  if (kind == "dual") return build_dual(space, t);
  if (kind == "separation") return build_separation(space);
  if (kind == "threshold") return build_threshold(space);
  throw CLI::ValidationError("--lp", "unknown program '" + kind + "'");
}

Json solution_json(const LPInstance& lp, const FractionalSolution& sol) {
  Json out;
  out["status"] = to_string(sol.status);
  if (sol.optimal()) out["objective"] = to_string(sol.objective);
  Json values = Json::object();
  for (Index j = 0; j < lp.num_variables(); ++j)
    if (sgn(sol.values[static_cast<std::size_t>(j)]) != 0)
      values[lp.variable_names[static_cast<std::size_t>(j)]] = to_string(sol.values[static_cast<std::size_t>(j)]);
  out["values"] = std::move(values);
  out["float_pivots"] = sol.stats.float_pivots;
  out["exact_pivots"] = sol.stats.exact_pivots;
  out["exact_fallback"] = sol.stats.exact_fallback;
  return out;
}

Rational default_t(const RangeSpace& space) {
  // ceil(sqrt n)
  Index t = 0;
  while (t * t < space.ground_size()) ++t;
  return t;
}

Json verification(const Instance& inst, const BuildResult& result) {
  const auto& space = inst.space;
  const Index n = space.ground_size();
  Json out;
  Index sum = 0;
  for (const auto& l : result.report.levels) sum += l.crossing;
  const Index uni = crossing_number(result.report.edges, space);
  out["subadditivity"] = sum >= uni && uni >= result.report.total_crossing;
  out["level_bound"] = static_cast<Index>(result.report.levels.size()) <= max_levels(n);
  if (n >= 2) {
    const Rational t = result.report.levels.front().t;
    const auto primal = solve(build_primal(space, t));
    const auto dual = solve(build_dual(space, t));
    out["duality"] = check_duality_certificate(space, t, primal, dual);
  }
  if (n <= kOracleMaxPoints) {
    const auto oracle = brute_force_opt_tree(space);
    out["t_opt"] = oracle.t_opt;
    out["oracle_sandwich"] = result.report.total_crossing >= oracle.t_opt &&
                             (n < 2 || result.report.levels.front().t <= oracle.t_opt);
  }
  if (inst.points && inst.points->dimension() == 2 && n >= 2) {
    const auto sep = check_separation_lower_bound(space);
    out["separation_optimum"] = to_string(sep.optimum);
    out["separation_bound"] = sep.holds;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning trees with low crossing number"};
  app.require_subcommand(1);

  // gen
  std::string gen_kind = "grid", gen_out;
  Index gen_n = 9, gen_dim = 2;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "write a generated point set as JSON");
  gen->add_option("kind", gen_kind, "grid, uniform, circle or moment-curve")->required();
  gen->add_option("-n,--n", gen_n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--dim", gen_dim, "dimension")->check(CLI::Range(2, 3));
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // run
  Input run_in;
  std::string run_mode = "randomized", run_out, run_svg, run_dump;
  bool run_verify = false, run_timings = false;
  Index run_lines = 0, run_trials = 1, run_retries = kDefaultMaxRetries;
  auto* run = app.add_subcommand("run", "build a spanning tree and print the run report");
  add_input_options(run, run_in);
  run->add_option("--mode", run_mode, "randomized or deterministic-planar")
      ->check(CLI::IsMember({"randomized", "deterministic-planar"}));
  run->add_flag("--verify", run_verify, "append a verification block");
  run->add_flag("--timings", run_timings, "include timings_ms");
  run->add_option("--svg", run_svg, "write an SVG drawing");
  run->add_option("--lines", run_lines, "most-crossed lines to draw in the SVG");
  run->add_option("--dump-lp", run_dump, "write the first-level primal LP");
  run->add_option("--trials", run_trials, "independent runs with seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  run->add_option("--max-retries", run_retries, "rounding retries per level");
  run->add_option("-o,--out", run_out, "report path (default stdout)");

  // lp
  Input lp_in;
  std::string lp_kind = "primal", lp_t, lp_out;
  bool lp_solve = false;
  auto* lp = app.add_subcommand("lp", "build one LP and dump it");
  add_input_options(lp, lp_in);
  lp->add_option("--lp", lp_kind, "primal, weighted, dual, separation or threshold");
  lp->add_option("--t", lp_t, "crossing budget (default ceil(sqrt n))");
  lp->add_flag("--solve", lp_solve, "solve and print the solution as JSON");
  lp->add_option("-o,--out", lp_out, "LP text path (default stdout)");

  // verify
  Input ver_in;
  std::string ver_t;
  auto* ver = app.add_subcommand("verify", "certificate checks on an instance");
  add_input_options(ver, ver_in);
  ver->add_option("--t", ver_t, "crossing budget for the duality check (default ceil(sqrt n))");

  // oracle
  Input orc_in;
  auto* orc = app.add_subcommand("oracle", "brute-force minimum crossing spanning tree (n <= 8)");
  add_input_options(orc, orc_in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      emit(points_to_json(generate(parse_generator_kind(gen_kind), gen_n, gen_seed, gen_dim)), gen_out);
    } else if (*run) {
      const Instance inst = load(run_in);
      const Mode mode = run_mode == "randomized" ? Mode::Randomized : Mode::DeterministicPlanar;
      if (!run_dump.empty() && inst.space.ground_size() >= 2) {
        std::ostringstream os;
        write_lp_text(os, build_primal(inst.space, min_feasible_t(inst.space)));
        write_text_file(run_dump, os.str());
      }
      std::vector<Json> reports(static_cast<std::size_t>(run_trials));
      std::vector<BuildResult> results(static_cast<std::size_t>(run_trials));
      LevelCache cache;
      auto one = [&](Index k) {
        results[static_cast<std::size_t>(k)] =
            build_tree(inst.space, mode, run_in.seed + static_cast<std::uint64_t>(k), run_retries, &cache);
        Json rep = report_to_json(results[static_cast<std::size_t>(k)], run_timings);
        if (run_verify) rep["verification"] = verification(inst, results[static_cast<std::size_t>(k)]);
        reports[static_cast<std::size_t>(k)] = std::move(rep);
      };
      const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(run_trials));
      if (workers <= 1) {
        for (Index k = 0; k < run_trials; ++k) one(k);
      } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex guard;
        for (unsigned w = 0; w < workers; ++w)
          pool.emplace_back([&, w] {
            try {
              for (Index k = w; k < run_trials; k += workers) one(k);
            } catch (...) {
              std::lock_guard lock(guard);
              if (!failure) failure = std::current_exception();
            }
          });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
      }
      if (!run_svg.empty()) {
        if (!inst.points) throw CLI::ValidationError("--svg", "needs a point set");
        std::ostringstream os;
        render_svg(os, *inst.points, results.front().tree.edges, inst.space, SvgOptions{run_lines});
        write_text_file(run_svg, os.str());
      }
      if (run_trials == 1)
        emit(reports.front(), run_out);
      else
        emit(Json(reports), run_out);
    } else if (*lp) {
      const Instance inst = load(lp_in);
      const Rational t = lp_t.empty() ? default_t(inst.space) : parse_rational(lp_t);
      const LPInstance prog = build_lp(inst.space, lp_kind, t);
      std::ostringstream os;
      write_lp_text(os, prog);
      if (lp_solve) {
        if (!lp_out.empty()) write_text_file(lp_out, os.str());
        emit(solution_json(prog, solve(prog)), "");
      } else if (lp_out.empty()) {
        std::cout << os.str();
      } else {
        write_text_file(lp_out, os.str());
      }
    } else if (*ver) {
      const Instance inst = load(ver_in);
      const auto& space = inst.space;
      const Rational t = ver_t.empty() ? default_t(space) : parse_rational(ver_t);
      Json out;
      out["n"] = space.ground_size();
      out["t"] = to_string(t);
      const auto primal = solve(build_primal(space, t));
      out["primal_status"] = to_string(primal.status);
      if (primal.optimal()) {
        out["gamma"] = to_string(primal.objective);
        out["duality"] = check_duality_certificate(space, t, primal, solve(build_dual(space, t)));
      }
      out["t_star"] = to_string(min_feasible_t(space));
      if (inst.points && inst.points->dimension() == 2) {
        const auto sep = check_separation_lower_bound(space);
        out["separation_optimum"] = to_string(sep.optimum);
        out["separation_bound"] = sep.holds;
      }
      if (space.ground_size() <= kOracleMaxPoints) out["t_opt"] = brute_force_opt_tree(space).t_opt;
      emit(out, "");
      return primal.status == LPStatus::Infeasible ? 2 : 0;
    } else if (*orc) {
      const Instance inst = load(orc_in);
      const auto res = brute_force_opt_tree(inst.space);
      Json out;
      out["t_opt"] = res.t_opt;
      out["trees_examined"] = res.trees_examined;
      out["witness"] = edges_to_json(res.witness.edges);
      emit(out, "");
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return 2;
  } catch (const AlgorithmFailure& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
