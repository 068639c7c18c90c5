// Command-line front end for the canister-filling QUBO toolkit.
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 infeasible or
// unreachable result, 5 internal invariant failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cf/bench.hpp"
#include "cf/dataset.hpp"
#include "cf/ising.hpp"
#include "cf/problem.hpp"
#include "cf/qubo.hpp"
#include "cf/solvers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitInternal = 5;

struct InfeasibleResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_config(const std::map<std::string, std::string>& kv) {
  std::cerr << "# effective config:";
  for (const auto& [k, v] : kv) std::cerr << " " << k << "=" << v;
  std::cerr << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoi(item));
  }
  if (values.empty()) throw std::invalid_argument("empty integer list");
  return values;
}

cf::SolverConfig resolve_config(cf::Algorithm alg, const std::string& config_file,
                                std::uint64_t seed, int iterations, int attempts) {
  cf::SolverConfig cfg = cf::default_config(alg);
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot open config file " + config_file);
    std::stringstream body;
    body << in.rdbuf();
    cfg = cf::parse_config(body.str(), cfg);
  }
  cfg.seed = seed;
  if (iterations > 0) cfg.iterations = iterations;
  if (attempts > 0) cfg.attempts = attempts;
  return cfg;
}

json report_to_json(const cf::FeasibilityReport& report) {
  json caps = json::array(), fills = json::array();
  for (const auto& v : report.capacity_violations)
    caps.push_back({{"canister", v.canister}, {"load", v.load}, {"p_max", v.p_max}});
  for (const auto& v : report.underfill_violations)
    fills.push_back({{"canister", v.canister}, {"count", v.count}, {"n_min", v.n_min}});
  return {{"feasible", report.feasible},
          {"objective_m", report.objective_m},
          {"capacity_violations", caps},
          {"underfill_violations", fills}};
}

void print_report_text(const cf::FeasibilityReport& report, std::ostream& out) {
  out << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
  out << "objective M: " << report.objective_m << "\n";
  for (const auto& v : report.capacity_violations)
    out << "capacity violation: canister " << v.canister << " load " << v.load
        << " > p_max " << v.p_max << "\n";
  for (const auto& v : report.underfill_violations)
    out << "underfill violation: canister " << v.canister << " holds " << v.count
        << " < n_min " << v.n_min << "\n";
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"canister-filling QUBO toolkit: encode, solve, benchmark"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate the synthetic dataset");
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  int gen_count = 10;
  bool gen_no_trivial = false;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--count", gen_count, "instances per element count");
  gen->add_flag("--no-trivial", gen_no_trivial, "skip the trivial n=2 instance");

  // encode
  auto* enc = app.add_subcommand("encode", "export the QUBO of one instance");
  std::string enc_instance, enc_out = "-";
  double enc_a = 1.0, enc_b = 0.0;
  enc->add_option("--instance", enc_instance, "instance JSON file")->required();
  enc->add_option("--out", enc_out, "output file, - for stdout");
  enc->add_option("--a-weight", enc_a, "objective scale A");
  enc->add_option("--b-weight", enc_b, "penalty scale B, 0 = 2*A*m");

  // solve
  auto* sol = app.add_subcommand("solve", "run one heuristic solver");
  std::string sol_instance, sol_solver, sol_config, sol_format = "text";
  std::uint64_t sol_seed = 1;
  int sol_iterations = 0, sol_attempts = 0;
  double sol_a = 1.0, sol_b = 0.0;
  sol->add_option("--instance", sol_instance, "instance JSON file")->required();
  sol->add_option("--solver", sol_solver, "sa, simcim, or sb")->required();
  sol->add_option("--seed", sol_seed, "solver seed");
  sol->add_option("--iterations", sol_iterations, "iteration budget, 0 = default");
  sol->add_option("--attempts", sol_attempts, "restarts, 0 = default");
  sol->add_option("--config", sol_config, "key=value solver config file");
  sol->add_option("--a-weight", sol_a, "objective scale A");
  sol->add_option("--b-weight", sol_b, "penalty scale B, 0 = 2*A*m");
  sol->add_option("--format", sol_format, "text or json");

  // oracle
  auto* ora = app.add_subcommand("oracle", "exact optimum via exhaustive search");
  std::string ora_instance, ora_format = "text";
  ora->add_option("--instance", ora_instance, "instance JSON file")->required();
  ora->add_option("--format", ora_format, "text or json");

  // validate
  auto* val = app.add_subcommand("validate", "check an assignment against constraints");
  std::string val_instance, val_assignment, val_format = "text";
  val->add_option("--instance", val_instance, "instance JSON file")->required();
  val->add_option("--assignment", val_assignment, "comma-separated canister indices")
      ->required();
  val->add_option("--format", val_format, "text or json");

  // bench
  auto* ben = app.add_subcommand("bench", "benchmark solvers over a dataset");
  std::string ben_dataset, ben_out, ben_solvers = "sa,simcim,sb", ben_config;
  std::uint64_t ben_seed = 1;
  int ben_iterations = 0, ben_attempts = 100, ben_jobs = 1;
  double ben_fixed_ta = 0.0;
  ben->add_option("--dataset", ben_dataset, "dataset directory with manifest.json")
      ->required();
  ben->add_option("--out", ben_out, "output prefix for records/summary CSVs")
      ->required();
  ben->add_option("--solvers", ben_solvers, "comma-separated solver names");
  ben->add_option("--seed", ben_seed, "solver seed");
  ben->add_option("--iterations", ben_iterations, "iteration budget, 0 = per-solver default");
  ben->add_option("--attempts", ben_attempts, "attempts per (instance, solver)");
  ben->add_option("--config", ben_config, "key=value solver config file");
  ben->add_option("--fixed-ta", ben_fixed_ta,
                  "nominal per-attempt time in us instead of measured wall time");
  ben->add_option("--jobs", ben_jobs, "worker thread cap");

  // sweep
  auto* swp = app.add_subcommand("sweep", "success probability vs iteration budget");
  std::string swp_instance, swp_solver, swp_budgets, swp_out = "-", swp_config;
  std::uint64_t swp_seed = 1;
  int swp_attempts = 100;
  double swp_fixed_ta = 0.0;
  swp->add_option("--instance", swp_instance, "instance JSON file")->required();
  swp->add_option("--solver", swp_solver, "sa, simcim, or sb")->required();
  swp->add_option("--budgets", swp_budgets, "comma-separated iteration budgets")
      ->required();
  swp->add_option("--attempts", swp_attempts, "attempts per budget");
  swp->add_option("--seed", swp_seed, "solver seed");
  swp->add_option("--config", swp_config, "key=value solver config file");
  swp->add_option("--fixed-ta", swp_fixed_ta,
                  "nominal per-iteration time in us (t_a = value * budget)");
  swp->add_option("--out", swp_out, "output CSV file, - for stdout");

  // describe
  app.add_subcommand("describe", "print all solver defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gen->parsed()) {
    print_config({{"out", gen_out},
                  {"seed", std::to_string(gen_seed)},
                  {"count", std::to_string(gen_count)},
                  {"trivial", gen_no_trivial ? "no" : "yes"}});
    cf::DatasetSpec spec = cf::reference_dataset_spec(gen_seed, gen_count);
    spec.include_trivial = !gen_no_trivial;
    auto entries = cf::generate_dataset(spec);
    cf::write_dataset(entries, spec, gen_out);
    std::cout << "wrote " << entries.size() << " instances to " << gen_out << "\n";
    return 0;
  }

  if (enc->parsed()) {
    print_config({{"instance", enc_instance},
                  {"a_weight", std::to_string(enc_a)},
                  {"b_weight", enc_b > 0 ? std::to_string(enc_b) : "auto"},
                  {"out", enc_out}});
    cf::ProblemInstance inst = cf::load_instance(enc_instance);
    cf::PenaltyWeights weights =
        enc_b > 0 ? cf::PenaltyWeights{enc_a, enc_b} : cf::default_weights(inst, enc_a);
    cf::QuboModel model = cf::build_qubo(inst, weights);
    if (enc_out == "-") {
      cf::export_qubo(model, std::cout);
    } else {
      std::ofstream out(enc_out);
      if (!out) throw std::runtime_error("cannot write " + enc_out);
      cf::export_qubo(model, out);
    }
    return 0;
  }

  if (sol->parsed()) {
    cf::Algorithm alg = cf::algorithm_from_name(sol_solver);
    cf::SolverConfig cfg =
        resolve_config(alg, sol_config, sol_seed, sol_iterations, sol_attempts);
    print_config({{"instance", sol_instance},
                  {"solver", sol_solver},
                  {"seed", std::to_string(cfg.seed)},
                  {"iterations", std::to_string(cfg.iterations)},
                  {"attempts", std::to_string(cfg.attempts)},
                  {"format", sol_format}});
    cf::ProblemInstance inst = cf::load_instance(sol_instance);
    cf::PenaltyWeights weights =
        sol_b > 0 ? cf::PenaltyWeights{sol_a, sol_b} : cf::default_weights(inst, sol_a);
    cf::QuboModel model = cf::build_qubo(inst, weights);
    cf::SolveResult result = cf::solve(alg, model, cfg);

    auto decoded = cf::decode_bits(inst, model.layout, result.best_bits);
    std::optional<cf::FeasibilityReport> report;
    std::vector<int> canister_of;
    std::string decode_error;
    if (const cf::Assignment* asg = std::get_if<cf::Assignment>(&decoded)) {
      report = cf::validate_assignment(inst, *asg);
      canister_of = asg->canister_of();
    } else {
      decode_error = std::get<cf::DecodeFailure>(decoded).reason;
    }

    std::string bits;
    for (int b : result.best_bits) bits += b ? '1' : '0';
    if (sol_format == "json") {
      json out = {{"instance", inst.name},
                  {"solver", sol_solver},
                  {"seed", cfg.seed},
                  {"best_energy", result.best_energy},
                  {"best_bits", bits},
                  {"wall_total_s", result.wall_total_s}};
      if (report) {
        out["assignment"] = canister_of;
        out["report"] = report_to_json(*report);
      } else {
        out["decode_error"] = decode_error;
      }
      std::cout << out.dump(2) << "\n";
    } else if (sol_format == "text") {
      std::cout << "instance: " << inst.name << "\n";
      std::cout << "solver: " << sol_solver << " seed: " << cfg.seed << "\n";
      std::cout << "best energy: " << result.best_energy << "\n";
      std::cout << "best bits: " << bits << "\n";
      if (report) {
        std::cout << "assignment: " << join_ints(canister_of) << "\n";
        print_report_text(*report, std::cout);
      } else {
        std::cout << "decode failed: " << decode_error << "\n";
      }
      std::cout << "wall time: " << result.wall_total_s << " s\n";
    } else {
      throw std::invalid_argument("unsupported format '" + sol_format + "'");
    }
    if (!report || !report->feasible)
      throw InfeasibleResult("best solution is not feasible");
    return 0;
  }

  if (ora->parsed()) {
    print_config({{"instance", ora_instance}, {"format", ora_format}});
    cf::ProblemInstance inst = cf::load_instance(ora_instance);
    auto result = cf::oracle_exact(inst);
    if (!result) throw InfeasibleResult("instance has no feasible assignment");
    if (ora_format == "json") {
      std::cout << json{{"instance", inst.name},
                        {"optimal_m", result->optimal_m},
                        {"witness", result->witness.canister_of()}}
                       .dump(2)
                << "\n";
    } else if (ora_format == "text") {
      std::cout << "optimal M: " << result->optimal_m << "\n";
      std::cout << "witness: " << join_ints(result->witness.canister_of()) << "\n";
    } else {
      throw std::invalid_argument("unsupported format '" + ora_format + "'");
    }
    return 0;
  }

  if (val->parsed()) {
    print_config({{"instance", val_instance},
                  {"assignment", val_assignment},
                  {"format", val_format}});
    cf::ProblemInstance inst = cf::load_instance(val_instance);
    cf::Assignment asg(parse_int_list(val_assignment));
    cf::FeasibilityReport report = cf::validate_assignment(inst, asg);
    if (val_format == "json") {
      std::cout << report_to_json(report).dump(2) << "\n";
    } else if (val_format == "text") {
      print_report_text(report, std::cout);
    } else {
      throw std::invalid_argument("unsupported format '" + val_format + "'");
    }
    if (!report.feasible) throw InfeasibleResult("assignment is infeasible");
    return 0;
  }

  if (ben->parsed()) {
    print_config({{"dataset", ben_dataset},
                  {"solvers", ben_solvers},
                  {"seed", std::to_string(ben_seed)},
                  {"attempts", std::to_string(ben_attempts)},
                  {"iterations", ben_iterations > 0 ? std::to_string(ben_iterations)
                                                    : "per-solver default"},
                  {"fixed_ta_us", std::to_string(ben_fixed_ta)},
                  {"jobs", std::to_string(ben_jobs)},
                  {"out", ben_out}});
    auto entries = cf::load_dataset(ben_dataset);
    std::map<std::string, cf::SolverConfig> solvers;
    std::stringstream names(ben_solvers);
    std::string name;
    while (std::getline(names, name, ',')) {
      if (name.empty()) continue;
      solvers[name] = resolve_config(cf::algorithm_from_name(name), ben_config,
                                     ben_seed, ben_iterations, ben_attempts);
    }
    cf::BenchOptions opts{ben_fixed_ta, ben_jobs};
    cf::BenchResult result = cf::run_benchmark(entries, solvers, opts);
    {
      std::ofstream out(ben_out + "_records.csv");
      if (!out) throw std::runtime_error("cannot write " + ben_out + "_records.csv");
      out << cf::records_csv(result.records);
    }
    {
      std::ofstream out(ben_out + "_summary.csv");
      if (!out) throw std::runtime_error("cannot write " + ben_out + "_summary.csv");
      out << cf::summaries_csv(result.summaries);
    }
    std::cout << cf::summaries_csv(result.summaries);
    return 0;
  }

  if (swp->parsed()) {
    cf::Algorithm alg = cf::algorithm_from_name(swp_solver);
    cf::SolverConfig cfg = resolve_config(alg, swp_config, swp_seed, 0, swp_attempts);
    print_config({{"instance", swp_instance},
                  {"solver", swp_solver},
                  {"budgets", swp_budgets},
                  {"attempts", std::to_string(cfg.attempts)},
                  {"seed", std::to_string(cfg.seed)},
                  {"fixed_ta_us", std::to_string(swp_fixed_ta)},
                  {"out", swp_out}});
    cf::DatasetEntry entry;
    entry.inst = cf::load_instance(swp_instance);
    auto oracle = cf::oracle_exact(entry.inst);
    if (!oracle) throw InfeasibleResult("instance has no feasible assignment");
    entry.optimal_m = oracle->optimal_m;
    entry.witness = oracle->witness.canister_of();
    auto rows =
        cf::sweep(parse_int_list(swp_budgets), entry, alg, cfg,
                  cf::BenchOptions{swp_fixed_ta, 1});
    if (swp_out == "-") {
      std::cout << cf::sweep_csv(rows);
    } else {
      std::ofstream out(swp_out);
      if (!out) throw std::runtime_error("cannot write " + swp_out);
      out << cf::sweep_csv(rows);
    }
    return 0;
  }

  // describe
  print_config({});
  std::cout << cf::describe_defaults();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleResult& e) {
    std::cerr << "error: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
}
