// Command-line front end: dataset generation, reduction, solving, selection
// evaluation, and benchmark experiments, all emitting JSON (and CSV for
// benchmark tables).
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmskit/arms2d.hpp"
#include "rmskit/arms_sampled.hpp"
#include "rmskit/bench.hpp"
#include "rmskit/core.hpp"
#include "rmskit/datagen.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/io.hpp"
#include "rmskit/krms.hpp"
#include "rmskit/reduction.hpp"

namespace {

using nlohmann::json;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

void emit(const json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write '" + output + "'");
    out << j.dump(2) << '\n';
  }
}

rmskit::Dataset load_input(const std::string& path, bool normalize) {
  rmskit::Dataset ds = rmskit::load_dataset(path);
  return normalize ? rmskit::normalize_dataset(ds) : ds;
}

rmskit::ReductionMode parse_mode(const std::string& s) {
  if (s == "additive") return rmskit::ReductionMode::Additive;
  if (s == "multiplicative") return rmskit::ReductionMode::Multiplicative;
  throw std::invalid_argument("mode must be 'additive' or 'multiplicative'");
}

struct SolveOptions {
  std::string input, problem, output, sample_path, mode = "additive", evaluator = "lp";
  int r = 1, k = 1, N = 100, resolution = 32;
  double epsilon = 0.1;
  std::uint64_t seed = 1, budget = 10'000'000;
  bool normalize = false;
};

json selection_json(const rmskit::Selection& sel) { return json(sel.indices); }

int cmd_solve(const SolveOptions& o) {
  rmskit::Dataset ds = load_input(o.input, o.normalize);
  json out{{"schema", 1}, {"problem", o.problem}, {"n", ds.size()}, {"d", ds.dim}, {"r", o.r}};

  if (o.problem == "krms-greedy") {
    double t0 = now_ms();
    rmskit::GreedyResult g = rmskit::greedy_1rms(ds, o.r);
    out["wall_time_ms"] = now_ms() - t0;
    out["indices"] = selection_json(g.sel);
    out["regret"] = g.final_regret.value;
    out["happiness"] = 1.0 - g.final_regret.value;
    out["witness_w"] = g.final_regret.witness.weights;
    out["witness_point"] = g.final_regret.witness_point;
    out["evaluator"] = "lp";
    out["regret_trace"] = g.regret_trace;
    rmskit::RegretReport rr = rmskit::max_regret_lp(ds, g.sel);
    out["recheck"] = {{"regret", rr.value}, {"happiness", 1.0 - rr.value}};
  } else if (o.problem == "krms-ptas") {
    rmskit::PtasConfig cfg{parse_mode(o.mode), o.epsilon, o.k,
                           o.evaluator == "grid" ? rmskit::PtasEvaluator::Grid
                                                 : rmskit::PtasEvaluator::Lp,
                           o.resolution, o.budget};
    double t0 = now_ms();
    rmskit::PtasResult res = rmskit::ptas_search(ds, o.r, cfg);
    out["wall_time_ms"] = now_ms() - t0;
    out["indices"] = selection_json(res.sel);
    out["happiness"] = res.happiness;
    out["regret"] = 1.0 - res.happiness;
    out["evaluator"] = o.evaluator;
    out["reduced_size"] = res.reduced_size;
    out["combinations"] = res.combinations;
    double re;
    if (cfg.evaluator == rmskit::PtasEvaluator::Lp) {
      rmskit::RegretReport rr = rmskit::max_regret_lp(ds, res.sel);
      re = 1.0 - rr.value;
      out["witness_w"] = rr.witness.weights;
      out["witness_point"] = rr.witness_point;
    } else {
      auto grid = rmskit::simplex_grid(ds.dim, o.resolution);
      re = rmskit::khapp_grid(ds, res.sel, o.k, grid);
      auto pts = rmskit::selection_points(ds, res.sel);
      std::size_t argmin = 0;
      double worst = 2.0;
      for (std::size_t t = 0; t < grid.size(); ++t) {
        double denom = rmskit::kth_best_score(ds, grid[t], o.k).first;
        if (denom <= 0.0) continue;
        double num = 0.0;
        for (const auto& q : pts) num = std::max(num, rmskit::score(q, grid[t]));
        double h = std::min(1.0, num / denom);
        if (h < worst) { worst = h; argmin = t; }
      }
      out["witness_w"] = grid[argmin].weights;
    }
    out["recheck"] = {{"happiness", re}, {"regret", 1.0 - re}};
  } else if (o.problem == "arms-sample") {
    rmskit::FunctionSample fs =
        o.sample_path.empty() ? rmskit::sample_linear_utilities(o.N, ds.dim, o.seed)
                              : rmskit::load_utility_sample(o.sample_path, ds.dim);
    double t0 = now_ms();
    rmskit::AhrGreedyResult g = rmskit::greedy_ahr(ds, o.r, fs);
    out["wall_time_ms"] = now_ms() - t0;
    out["indices"] = selection_json(g.sel);
    out["happiness"] = g.ahr;
    out["regret"] = 1.0 - g.ahr;
    out["evaluator"] = "sample";
    out["N"] = fs.size();
    out["delta_trace"] = g.delta_trace;
    double re = rmskit::ahr_sample(ds, g.sel, fs);
    out["recheck"] = {{"happiness", re}, {"regret", 1.0 - re}};
  } else if (o.problem == "arms-2d-exact" || o.problem == "arms-2d-approx") {
    if (ds.dim != 2)
      throw std::invalid_argument(o.problem + " requires a 2-dimensional dataset");
    double t0 = now_ms();
    rmskit::Arms2dResult res = o.problem == "arms-2d-exact"
                                   ? rmskit::exact_2d_arms(ds, o.r)
                                   : rmskit::approx_2d_arms(ds, o.r, o.epsilon);
    out["wall_time_ms"] = now_ms() - t0;
    out["indices"] = selection_json(res.sel);
    out["happiness"] = res.ahr;
    out["regret"] = 1.0 - res.ahr;
    out["evaluator"] = "closed-form";
    out["hull_size"] = res.hull_size;
    out["candidate_count"] = res.candidate_count;
    out["phase_ms"] = {{"hull", res.hull_ms},
                       {"gain", res.gain_ms},
                       {"dp", res.dp_ms},
                       {"eval", res.eval_ms}};
    double re = rmskit::ahr_of_selection(ds, res.sel);
    out["recheck"] = {{"happiness", re}, {"regret", 1.0 - re}};
  } else {
    throw std::invalid_argument("unknown problem '" + o.problem + "'");
  }
  emit(out, o.output);
  return 0;
}

rmskit::Selection parse_indices(const std::string& csv) {
  std::vector<int> ids;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!cur.empty()) ids.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (ids.empty()) throw std::invalid_argument("--indices: empty selection");
  return rmskit::Selection(std::move(ids));
}

json experiment_to_json(const rmskit::ExperimentReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"solver", r.solver},
                       {"kind", r.kind},
                       {"n", r.n},
                       {"d", r.d},
                       {"r", r.r},
                       {"k", r.k},
                       {"epsilon", r.epsilon},
                       {"rep", r.rep},
                       {"reduced_size", r.reduced_size},
                       {"reduce_ms", r.reduce_ms},
                       {"solve_ms", r.solve_ms},
                       {"eval_ms", r.eval_ms},
                       {"wall_time_ms", r.wall_time_ms},
                       {"happiness", r.happiness},
                       {"regret", r.regret},
                       {"error", r.error}});
  }
  return {{"schema", 1}, {"environment", report.environment}, {"records", records}};
}

rmskit::Experiment parse_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  in >> j;
  rmskit::Experiment ex;
  ex.repetitions = j.value("repetitions", 1);
  ex.normalize = j.value("normalize", false);
  ex.parallel = j.value("parallel", false);
  for (const auto& g : j.value("generators", json::array())) {
    rmskit::GenSpec spec;
    spec.kind = rmskit::gen_kind_from(g.value("kind", "independent"));
    spec.n = g.value("n", 100);
    spec.d = g.value("d", 2);
    spec.seed = g.value("seed", 0ULL);
    ex.generators.push_back(spec);
  }
  for (const auto& s : j.value("solvers", json::array())) {
    rmskit::BenchSolverSpec sv;
    sv.problem = s.value("problem", "krms-greedy");
    sv.r = s.value("r", 1);
    sv.k = s.value("k", 1);
    sv.epsilon = s.value("epsilon", 0.1);
    sv.N = s.value("N", 100);
    sv.sample_seed = s.value("sample_seed", 1ULL);
    sv.grid_resolution = s.value("resolution", 32);
    sv.budget = s.value("budget", 10'000'000ULL);
    if (s.contains("mode")) sv.ptas_mode = parse_mode(s["mode"].get<std::string>());
    if (s.contains("evaluator"))
      sv.evaluator = s["evaluator"] == "grid" ? rmskit::PtasEvaluator::Grid
                                              : rmskit::PtasEvaluator::Lp;
    if (s.contains("reduce")) {
      sv.use_reduction = true;
      sv.reduce_mode = parse_mode(s["reduce"].value("mode", "multiplicative"));
      sv.reduce_epsilon = s["reduce"].value("epsilon", 0.3);
    }
    ex.solvers.push_back(sv);
  }
  return ex;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"representative-subset toolkit: regret/happiness solvers over [0,1]^d datasets"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  std::string gen_kind = "independent", gen_output;
  int gen_n = 100, gen_d = 2;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "independent|correlated|anticorrelated|circle2d");
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "dimensions");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--output", gen_output, "output CSV path")->required();

  // reduce
  auto* red = app.add_subcommand("reduce", "round a dataset down and deduplicate");
  std::string red_input, red_output, red_backmap, red_mode = "additive";
  double red_eps = 0.1;
  bool red_normalize = false;
  red->add_option("--input", red_input, "dataset CSV")->required();
  red->add_option("--mode", red_mode, "additive|multiplicative");
  red->add_option("--epsilon", red_eps, "approximation factor in (0,1)")->required();
  red->add_option("--output", red_output, "reduced CSV path")->required();
  red->add_option("--backmap", red_backmap, "back-map JSON path (default <output>.backmap.json)");
  red->add_flag("--normalize", red_normalize, "normalize per-dimension maxima to 1 first");

  // solve
  auto* sol = app.add_subcommand("solve", "run a solver and emit a result JSON");
  SolveOptions so;
  sol->add_option("--input", so.input, "dataset CSV")->required();
  sol->add_option("--problem", so.problem,
                  "krms-greedy|krms-ptas|arms-sample|arms-2d-exact|arms-2d-approx")
      ->required();
  sol->add_option("--r", so.r, "selection size")->required();
  sol->add_option("--k", so.k, "rank for k-happiness (ptas grid evaluator)");
  sol->add_option("--epsilon", so.epsilon, "approximation factor");
  sol->add_option("--mode", so.mode, "reduction mode for krms-ptas");
  sol->add_option("--evaluator", so.evaluator, "lp|grid (krms-ptas)");
  sol->add_option("--resolution", so.resolution, "per-axis utility grid resolution");
  sol->add_option("--sample", so.sample_path, "utility sample CSV (arms-sample)");
  sol->add_option("--N", so.N, "sampled utility count when no sample file is given");
  sol->add_option("--seed", so.seed, "utility sampling seed");
  sol->add_option("--budget", so.budget, "combination budget for krms-ptas");
  sol->add_option("--output", so.output, "result JSON path (default stdout)");
  sol->add_flag("--normalize", so.normalize, "normalize the dataset before solving");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate a selection against a dataset");
  std::string ev_input, ev_indices, ev_sample, ev_output;
  int ev_k = 1, ev_resolution = 0, ev_N = 0;
  std::uint64_t ev_seed = 1;
  bool ev_normalize = false;
  ev->add_option("--input", ev_input, "dataset CSV")->required();
  ev->add_option("--indices", ev_indices, "comma-separated point ids")->required();
  ev->add_option("--k", ev_k, "rank for the grid happiness evaluation");
  ev->add_option("--resolution", ev_resolution, "per-axis utility grid resolution");
  ev->add_option("--sample", ev_sample, "utility sample CSV for AHR/ARR");
  ev->add_option("--N", ev_N, "sample N utilities for AHR/ARR");
  ev->add_option("--seed", ev_seed, "utility sampling seed");
  ev->add_option("--output", ev_output, "result JSON path (default stdout)");
  ev->add_flag("--normalize", ev_normalize, "normalize the dataset first");

  // bench
  auto* be = app.add_subcommand("bench", "run a benchmark experiment file");
  std::string be_experiment, be_output, be_csv;
  bool be_parallel = false;
  be->add_option("--experiment", be_experiment, "experiment JSON")->required();
  be->add_option("--output", be_output, "report JSON path (default stdout)");
  be->add_option("--csv", be_csv, "tidy CSV table path");
  be->add_flag("--parallel", be_parallel, "run records concurrently (timings become indicative)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version are success, everything else is usage
  }

  try {
    if (gen->parsed()) {
      rmskit::GenSpec spec{rmskit::gen_kind_from(gen_kind), gen_n, gen_d, gen_seed};
      rmskit::save_dataset(rmskit::generate(spec), gen_output);
      std::cout << "wrote " << gen_n << " points to " << gen_output << '\n';
      return 0;
    }
    if (red->parsed()) {
      rmskit::Dataset ds = load_input(red_input, red_normalize);
      rmskit::ReductionConfig cfg{parse_mode(red_mode), red_eps};
      rmskit::ReducedDataset rd = rmskit::reduce(ds, cfg);
      rmskit::save_dataset(rd.reduced, red_output);
      rmskit::save_backmap_json(rd, red_backmap.empty() ? red_output + ".backmap.json"
                                                        : red_backmap);
      double bound = cfg.mode == rmskit::ReductionMode::Additive
                         ? rmskit::additive_size_bound(ds.dim, red_eps)
                         : rmskit::multiplicative_size_bound(ds.dim, red_eps);
      emit(json{{"schema", 1},
                {"n", ds.size()},
                {"reduced_size", rd.reduced.size()},
                {"size_bound", bound},
                {"mode", red_mode},
                {"epsilon", red_eps}},
           "");
      return 0;
    }
    if (sol->parsed()) return cmd_solve(so);
    if (ev->parsed()) {
      rmskit::Dataset ds = load_input(ev_input, ev_normalize);
      rmskit::Selection sel = parse_indices(ev_indices);
      sel.validate_for(ds);
      json out{{"schema", 1}, {"n", ds.size()}, {"d", ds.dim}, {"indices", sel.indices}};
      rmskit::RegretReport rr = rmskit::max_regret_lp(ds, sel);
      out["max_regret"] = rr.value;
      out["min_happiness"] = 1.0 - rr.value;
      out["witness_w"] = rr.witness.weights;
      out["witness_point"] = rr.witness_point;
      if (ev_resolution == 0) ev_resolution = ds.dim <= 3 ? 64 : 16;  // keep the lattice small
      auto grid = rmskit::simplex_grid(ds.dim, ev_resolution);
      out["khapp_grid"] = rmskit::khapp_grid(ds, sel, ev_k, grid);
      out["k"] = ev_k;
      if (!ev_sample.empty() || ev_N > 0) {
        rmskit::FunctionSample fs = !ev_sample.empty()
                                        ? rmskit::load_utility_sample(ev_sample, ds.dim)
                                        : rmskit::sample_linear_utilities(ev_N, ds.dim, ev_seed);
        double ahr = rmskit::ahr_sample(ds, sel, fs);
        out["ahr"] = ahr;
        out["arr"] = 1.0 - ahr;
      }
      if (ds.dim == 2) out["ahr_continuous"] = rmskit::ahr_of_selection(ds, sel);
      emit(out, ev_output);
      return 0;
    }
    if (be->parsed()) {
      rmskit::Experiment ex = parse_experiment(be_experiment);
      if (be_parallel) ex.parallel = true;
      rmskit::ExperimentReport report = rmskit::run_experiment(ex);
      emit(experiment_to_json(report), be_output);
      if (!be_csv.empty()) {
        std::ofstream out(be_csv);
        if (!out) throw std::runtime_error("cannot write '" + be_csv + "'");
        out << rmskit::report_csv(report);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
