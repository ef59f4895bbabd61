#pragma once

// Benchmark harness: runs a grid of {generator} x {solver} x {repetition},
// timing the reduce / solve / evaluate phases separately. Reported wall time
// is reduce + solve (evaluation is verification, not pipeline cost). Records
// are deterministic apart from the timings; per-run failures are recorded
// and the run continues.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rmskit/arms2d.hpp"
#include "rmskit/arms_sampled.hpp"
#include "rmskit/core.hpp"
#include "rmskit/datagen.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/krms.hpp"
#include "rmskit/reduction.hpp"

namespace rmskit {

struct BenchSolverSpec {
  std::string problem;  // krms-greedy | krms-ptas | arms-sample | arms-2d-exact | arms-2d-approx
  int r = 1;
  int k = 1;
  double epsilon = 0.1;  // ptas / arms-2d-approx approximation factor
  // optional reduction preprocessing (krms-greedy pipelines)
  bool use_reduction = false;
  ReductionMode reduce_mode = ReductionMode::Multiplicative;
  double reduce_epsilon = 0.3;
  // arms-sample inputs
  int N = 100;
  std::uint64_t sample_seed = 1;
  // krms-ptas knobs
  ReductionMode ptas_mode = ReductionMode::Additive;
  PtasEvaluator evaluator = PtasEvaluator::Lp;
  int grid_resolution = 32;
  std::uint64_t budget = 10'000'000;

  std::string label() const {
    std::string s = problem;
    if (use_reduction)
      s += reduce_mode == ReductionMode::Multiplicative ? "+mult-reduce" : "+add-reduce";
    return s;
  }
};

struct BenchRecord {
  std::string solver;
  std::string kind;
  int n = 0, d = 0, r = 0, k = 1, rep = 0;
  double epsilon = 0.0;
  int reduced_size = 0;  // 0 when no reduction ran
  double reduce_ms = 0.0, solve_ms = 0.0, eval_ms = 0.0, wall_time_ms = 0.0;
  double happiness = 0.0, regret = 0.0;
  std::string error;
};

struct Experiment {
  std::vector<GenSpec> generators;
  std::vector<BenchSolverSpec> solvers;
  int repetitions = 1;
  bool normalize = false;
  bool parallel = false;  // run records concurrently; timings become indicative
};

struct ExperimentReport {
  std::vector<BenchRecord> records;
  std::string environment;
};

namespace detail {

inline double bench_now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

inline BenchRecord run_one(const Dataset& ds, const GenSpec& gen, const BenchSolverSpec& sv,
                           int rep) {
  BenchRecord rec;
  rec.solver = sv.label();
  rec.kind = gen_kind_name(gen.kind);
  rec.n = ds.size();
  rec.d = ds.dim;
  rec.r = sv.r;
  rec.k = sv.k;
  rec.rep = rep;
  rec.epsilon = sv.use_reduction ? sv.reduce_epsilon : sv.epsilon;

  double t0 = bench_now_ms();
  if (sv.problem == "krms-greedy") {
    if (sv.use_reduction) {
      ReducedDataset rd = reduce(ds, ReductionConfig{sv.reduce_mode, sv.reduce_epsilon});
      rec.reduced_size = rd.reduced.size();
      double t1 = bench_now_ms();
      GreedyResult g = greedy_1rms(rd.reduced, sv.r);
      double t2 = bench_now_ms();
      Selection mapped = map_back(g.sel, rd);
      RegretReport rr = max_regret_lp(ds, mapped);
      double t3 = bench_now_ms();
      rec.reduce_ms = t1 - t0;
      rec.solve_ms = t2 - t1;
      rec.eval_ms = t3 - t2;
      rec.regret = rr.value;
      rec.happiness = 1.0 - rr.value;
    } else {
      GreedyResult g = greedy_1rms(ds, sv.r);
      double t2 = bench_now_ms();
      RegretReport rr = max_regret_lp(ds, g.sel);
      double t3 = bench_now_ms();
      rec.solve_ms = t2 - t0;
      rec.eval_ms = t3 - t2;
      rec.regret = rr.value;
      rec.happiness = 1.0 - rr.value;
    }
  } else if (sv.problem == "krms-ptas") {
    PtasConfig cfg{sv.ptas_mode, sv.epsilon, sv.k, sv.evaluator, sv.grid_resolution, sv.budget};
    PtasResult res = ptas_search(ds, sv.r, cfg);
    rec.reduced_size = res.reduced_size;
    double t2 = bench_now_ms();
    rec.solve_ms = t2 - t0;
    if (sv.evaluator == PtasEvaluator::Lp) {
      RegretReport rr = max_regret_lp(ds, res.sel);
      rec.regret = rr.value;
      rec.happiness = 1.0 - rr.value;
    } else {
      auto grid = simplex_grid(ds.dim, sv.grid_resolution);
      rec.happiness = khapp_grid(ds, res.sel, sv.k, grid);
      rec.regret = 1.0 - rec.happiness;
    }
    rec.eval_ms = bench_now_ms() - t2;
  } else if (sv.problem == "arms-sample") {
    // sample construction is input preparation, not pipeline cost
    FunctionSample fs = sample_linear_utilities(sv.N, ds.dim, sv.sample_seed);
    double t1 = bench_now_ms();
    AhrGreedyResult g = greedy_ahr(ds, sv.r, fs);
    double t2 = bench_now_ms();
    rec.happiness = ahr_sample(ds, g.sel, fs);
    rec.regret = 1.0 - rec.happiness;
    rec.solve_ms = t2 - t1;
    rec.eval_ms = bench_now_ms() - t2;
  } else if (sv.problem == "arms-2d-exact" || sv.problem == "arms-2d-approx") {
    Arms2dResult res = sv.problem == "arms-2d-exact" ? exact_2d_arms(ds, sv.r)
                                                     : approx_2d_arms(ds, sv.r, sv.epsilon);
    double t2 = bench_now_ms();
    rec.solve_ms = t2 - t0;
    rec.reduced_size = res.candidate_count;
    rec.happiness = res.ahr;
    rec.regret = 1.0 - res.ahr;
    rec.eval_ms = bench_now_ms() - t2;
  } else {
    throw std::invalid_argument("bench: unknown problem '" + sv.problem + "'");
  }
  rec.wall_time_ms = rec.reduce_ms + rec.solve_ms;
  return rec;
}

}  // namespace detail

namespace detail {

inline BenchRecord run_guarded(const Dataset& ds, const GenSpec& gen, const BenchSolverSpec& sv,
                               int rep) {
  try {
    return run_one(ds, gen, sv, rep);
  } catch (const std::exception& e) {
    BenchRecord rec;
    rec.solver = sv.label();
    rec.kind = gen_kind_name(gen.kind);
    rec.n = ds.size();
    rec.d = ds.dim;
    rec.r = sv.r;
    rec.k = sv.k;
    rec.rep = rep;
    rec.epsilon = sv.use_reduction ? sv.reduce_epsilon : sv.epsilon;
    rec.error = e.what();
    return rec;
  }
}

}  // namespace detail

inline ExperimentReport run_experiment(const Experiment& ex) {
  ExperimentReport report;
  report.environment = std::string("compiler ") + __VERSION__;

  std::vector<Dataset> datasets;
  datasets.reserve(ex.generators.size());
  for (const GenSpec& gen : ex.generators) {
    Dataset ds = generate(gen);
    datasets.push_back(ex.normalize ? normalize_dataset(ds) : std::move(ds));
  }

  struct Job {
    std::size_t gen_idx;
    std::size_t solver_idx;
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < ex.generators.size(); ++g)
    for (std::size_t s = 0; s < ex.solvers.size(); ++s)
      for (int rep = 0; rep < std::max(1, ex.repetitions); ++rep) jobs.push_back({g, s, rep});
  report.records.resize(jobs.size());

  auto run_job = [&](std::size_t idx) {
    const Job& job = jobs[idx];
    report.records[idx] = detail::run_guarded(datasets[job.gen_idx], ex.generators[job.gen_idx],
                                              ex.solvers[job.solver_idx], job.rep);
  };

  if (!ex.parallel || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    return report;
  }

  // Opt-in parallelism across runs only; each timed region still executes on
  // a single thread, but contention makes the timings indicative.
  std::atomic<std::size_t> next{0};
  unsigned workers = std::min<std::size_t>(std::thread::hardware_concurrency(), jobs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, workers); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) run_job(i);
    });
  for (auto& th : pool) th.join();
  return report;
}

inline std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "solver,kind,n,d,r,k,epsilon,rep,reduced_size,reduce_ms,solve_ms,eval_ms,"
         "wall_time_ms,happiness,regret,error\n";
  for (const BenchRecord& r : report.records) {
    out << r.solver << ',' << r.kind << ',' << r.n << ',' << r.d << ',' << r.r << ',' << r.k
        << ',' << r.epsilon << ',' << r.rep << ',' << r.reduced_size << ',' << r.reduce_ms << ','
        << r.solve_ms << ',' << r.eval_ms << ',' << r.wall_time_ms << ',' << r.happiness << ','
        << r.regret << ',' << r.error << '\n';
  }
  return out.str();
}

}  // namespace rmskit
