#include "cf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cf/qubo.hpp"

namespace cf {
namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : "inf";
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

BenchRecord bench_one(const DatasetEntry& entry, const std::string& solver_name,
                      const SolverConfig& cfg, double fixed_ta_us) {
  const QuboModel model = build_qubo(entry.inst, default_weights(entry.inst));
  const SolveResult result = solve(algorithm_from_name(solver_name), model, cfg);

  BenchRecord rec;
  rec.instance = entry.inst.name;
  rec.solver = solver_name;
  rec.seed = cfg.seed;
  rec.attempts = cfg.attempts;
  rec.n = entry.inst.n;
  rec.wall_total_s = result.wall_total_s;

  std::vector<double> times;
  times.reserve(result.per_attempt.size());
  for (const Attempt& attempt : result.per_attempt) {
    times.push_back(attempt.wall_us);
    auto decoded = decode_bits(entry.inst, model.layout, attempt.bits);
    if (const Assignment* asg = std::get_if<Assignment>(&decoded)) {
      FeasibilityReport report = validate_assignment(entry.inst, *asg);
      if (report.feasible && report.objective_m == entry.optimal_m) ++rec.successes;
    }
  }
  rec.theta = static_cast<double>(rec.successes) / rec.attempts;
  rec.theta_smooth = (rec.successes + 1.0) / (rec.attempts + 2.0);
  rec.t_a_us = fixed_ta_us > 0 ? fixed_ta_us : median(times);
  rec.r99 = r99(rec.theta);
  rec.tts_us = tts(rec.t_a_us, rec.theta);

  auto best = decode_bits(entry.inst, model.layout, result.best_bits);
  if (const Assignment* asg = std::get_if<Assignment>(&best)) {
    FeasibilityReport report = validate_assignment(entry.inst, *asg);
    rec.best_m = report.objective_m;
    rec.feasible = report.feasible;
  }
  return rec;
}

}  // namespace

std::optional<double> r99(double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0, 1]");
  if (theta == 0.0) return std::nullopt;
  if (theta == 1.0) return 1.0;
  return std::log(1.0 - 0.99) / std::log(1.0 - theta);
}

std::optional<double> tts(double t_a_us, double theta) {
  if (t_a_us <= 0.0) throw std::invalid_argument("t_a must be > 0");
  auto reps = r99(theta);
  if (!reps) return std::nullopt;
  return t_a_us * *reps;
}

BenchResult run_benchmark(const std::vector<DatasetEntry>& entries,
                          const std::map<std::string, SolverConfig>& solvers,
                          const BenchOptions& opts) {
  if (entries.empty()) throw std::invalid_argument("empty dataset");
  if (solvers.empty()) throw std::invalid_argument("no solvers configured");
  for (const auto& [name, cfg] : solvers) cfg.check();

  struct Task {
    const DatasetEntry* entry;
    const std::string* solver;
    const SolverConfig* cfg;
  };
  std::vector<Task> tasks;
  for (const DatasetEntry& entry : entries)
    for (const auto& [name, cfg] : solvers) tasks.push_back({&entry, &name, &cfg});

  BenchResult result;
  result.records.resize(tasks.size());
  const int jobs = std::max(1, opts.jobs);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t idx = next.fetch_add(1); idx < tasks.size(); idx = next.fetch_add(1))
      result.records[idx] =
          bench_one(*tasks[idx].entry, *tasks[idx].solver, *tasks[idx].cfg,
                    opts.fixed_ta_us);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // per-(n, solver) aggregation; unreachable TTS values are excluded from
  // mean/std and show up as instances - solved
  std::map<std::pair<int, std::string>, std::vector<const BenchRecord*>> groups;
  for (const BenchRecord& rec : result.records)
    groups[{rec.n, rec.solver}].push_back(&rec);
  for (const auto& [key, recs] : groups) {
    BenchSummary summary;
    summary.n = key.first;
    summary.solver = key.second;
    summary.instances = static_cast<int>(recs.size());
    std::vector<double> finite;
    for (const BenchRecord* rec : recs) {
      if (rec->successes > 0) ++summary.solved;
      if (rec->tts_us) finite.push_back(*rec->tts_us);
    }
    if (!finite.empty()) {
      double mean = 0.0;
      for (double v : finite) mean += v;
      mean /= finite.size();
      double var = 0.0;
      for (double v : finite) var += (v - mean) * (v - mean);
      summary.tts_mean_us = mean;
      summary.tts_std_us = finite.size() > 1 ? std::sqrt(var / (finite.size() - 1)) : 0.0;
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

std::vector<SweepRow> sweep(const std::vector<int>& budgets, const DatasetEntry& entry,
                            Algorithm alg, const SolverConfig& cfg,
                            const BenchOptions& opts) {
  if (budgets.size() < 2)
    throw std::invalid_argument("sweep needs at least two budgets");

  std::vector<SweepRow> rows;
  for (int budget : budgets) {
    SolverConfig run_cfg = cfg;
    run_cfg.iterations = budget;
    BenchOptions run_opts = opts;
    if (opts.fixed_ta_us > 0) run_opts.fixed_ta_us = opts.fixed_ta_us * budget;
    BenchRecord rec = bench_one(entry, algorithm_name(alg), run_cfg,
                                run_opts.fixed_ta_us);
    rows.push_back({budget, rec.attempts, rec.successes, rec.theta, rec.t_a_us,
                    rec.tts_us});
  }
  return rows;
}

std::string records_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "instance,solver,seed,attempts,successes,theta,t_a_us,r99,tts_us,"
         "best_m,feasible,wall_total_s,theta_smooth\n";
  for (const BenchRecord& r : records)
    out << r.instance << ',' << r.solver << ',' << r.seed << ',' << r.attempts << ','
        << r.successes << ',' << fmt(r.theta) << ',' << fmt(r.t_a_us) << ','
        << fmt_opt(r.r99) << ',' << fmt_opt(r.tts_us) << ',' << r.best_m << ','
        << (r.feasible ? "true" : "false") << ',' << fmt(r.wall_total_s) << ','
        << fmt(r.theta_smooth) << '\n';
  return out.str();
}

std::string summaries_csv(const std::vector<BenchSummary>& summaries) {
  std::ostringstream out;
  out << "n,solver,instances,solved,tts_mean_us,tts_std_us\n";
  for (const BenchSummary& s : summaries)
    out << s.n << ',' << s.solver << ',' << s.instances << ',' << s.solved << ','
        << (s.solved > 0 ? fmt(s.tts_mean_us) : "inf") << ','
        << fmt(s.tts_std_us) << '\n';
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "budget,attempts,successes,theta,t_a_us,tts_us\n";
  for (const SweepRow& r : rows)
    out << r.budget << ',' << r.attempts << ',' << r.successes << ',' << fmt(r.theta)
        << ',' << fmt(r.t_a_us) << ',' << fmt_opt(r.tts_us) << '\n';
  return out.str();
}

}  // namespace cf
