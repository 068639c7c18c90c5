#include "cf/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cf {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

// splitmix64; gives each attempt an independent, reproducible stream
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (attempt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SolveResult finish(const QuboModel& model, std::vector<Attempt> attempts,
                   Clock::time_point t0) {
  SolveResult result;
  result.per_attempt = std::move(attempts);
  size_t best = 0;
  for (size_t a = 1; a < result.per_attempt.size(); ++a)
    if (result.per_attempt[a].energy < result.per_attempt[best].energy) best = a;
  result.best_bits = result.per_attempt[best].bits;
  result.best_energy = energy(model, result.best_bits);
  result.wall_total_s = elapsed_us(t0) / 1e6;
  return result;
}

// greedy single-flip descent to a local minimum, in place
void quench(const QuboModel& model, Bits& z) {
  const int d = model.dim();
  Eigen::VectorXd zd(d);
  for (int i = 0; i < d; ++i) zd[i] = z[i];
  Eigen::VectorXd field = model.q.diagonal() +
                          2.0 * (model.q * zd - model.q.diagonal().cwiseProduct(zd));
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < d; ++i) {
      double de = (1 - 2 * z[i]) * field[i];
      if (de < 0.0) {
        int delta = z[i] ? -1 : 1;
        z[i] ^= 1;
        field += (2.0 * delta) * model.q.col(i);
        field[i] -= 2.0 * delta * model.q(i, i);
        improved = true;
      }
    }
  }
}

struct OracleSearch {
  const ProblemInstance& inst;
  std::vector<long long> load;
  std::vector<int> count;
  std::vector<int> label;
  int best_m;
  std::vector<int> best_label;

  explicit OracleSearch(const ProblemInstance& inst)
      : inst(inst),
        load(inst.m, 0),
        count(inst.m, 0),
        label(inst.n, -1),
        best_m(inst.m + 1) {}

  void rec(int i, int used) {
    if (used >= best_m) return;
    if (i == inst.n) {
      for (int j = 0; j < used; ++j)
        if (count[j] < inst.n_min) return;
      best_m = used;
      best_label = label;
      return;
    }
    // existing canisters first, then (first-fit labeling) one new canister
    int limit = std::min(used + 1, inst.m);
    for (int j = 0; j < limit; ++j) {
      if (load[j] + inst.p[i] > inst.p_max) continue;
      load[j] += inst.p[i];
      count[j] += 1;
      label[i] = j;
      rec(i + 1, std::max(used, j + 1));
      load[j] -= inst.p[i];
      count[j] -= 1;
      label[i] = -1;
    }
  }
};

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "sa") return Algorithm::SA;
  if (name == "simcim") return Algorithm::SimCIM;
  if (name == "sb") return Algorithm::SB;
  throw std::invalid_argument("unknown solver '" + name + "' (expected sa, simcim, sb)");
}

std::string algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::SA: return "sa";
    case Algorithm::SimCIM: return "simcim";
    case Algorithm::SB: return "sb";
  }
  return "?";
}

void SolverConfig::check() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (attempts < 1) throw std::invalid_argument("attempts must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (cim_dt <= 0 || sb_dt <= 0) throw std::invalid_argument("time steps must be > 0");
  if (sb_detuning <= 0) throw std::invalid_argument("sb_detuning must be > 0");
  if (sa_beta_start < 0 || sa_beta_end < 0 || cim_zeta < 0 || sb_coupling < 0 ||
      cim_noise < 0)
    throw std::invalid_argument("scale parameters must be >= 0");
}

SolverConfig default_config(Algorithm alg) {
  SolverConfig cfg;
  cfg.attempts = 100;
  switch (alg) {
    case Algorithm::SA:
      cfg.iterations = 500;
      cfg.restarts = 20;
      break;
    case Algorithm::SimCIM:
      cfg.iterations = 1000;
      cfg.restarts = 20;
      break;
    case Algorithm::SB:
      cfg.iterations = 1000;
      cfg.restarts = 30;
      break;
  }
  return cfg;
}

std::optional<OracleResult> oracle_exact(const ProblemInstance& inst) {
  inst.check();
  if (inst.n > 16)
    throw std::invalid_argument("oracle_exact refuses instances with n > 16");
  OracleSearch search(inst);
  search.rec(0, 0);
  if (search.best_m > inst.m) return std::nullopt;
  return OracleResult{search.best_m, Assignment(search.best_label)};
}

std::pair<Bits, double> brute_force_bits(const QuboModel& model) {
  const int d = model.dim();
  if (d > 24)
    throw std::invalid_argument("brute_force_bits refuses models with D > 24");

  Bits z(d, 0);
  Eigen::VectorXd field = model.q.diagonal();
  double e = model.offset;
  Bits best_z = z;
  double best_e = e;

  const std::uint64_t total = 1ULL << d;
  for (std::uint64_t step = 1; step < total; ++step) {
    int i = std::countr_zero(step);
    e += (1 - 2 * z[i]) * field[i];
    int delta = z[i] ? -1 : 1;
    z[i] ^= 1;
    field += (2.0 * delta) * model.q.col(i);
    field[i] -= 2.0 * delta * model.q(i, i);
    if (e < best_e ||
        (e == best_e && std::lexicographical_compare(z.begin(), z.end(),
                                                     best_z.begin(), best_z.end()))) {
      best_e = e;
      best_z = z;
    }
  }
  return {best_z, best_e};
}

SolveResult solve_sa(const QuboModel& model, const SolverConfig& cfg) {
  cfg.check();
  const int d = model.dim();
  const auto t0 = Clock::now();

  // scale-aware schedule bounds from the coefficient magnitudes
  double abs_sum = 0.0, abs_min = 0.0;
  long long nonzero = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = std::abs(model.q(i, j));
      if (v == 0.0) continue;
      abs_sum += v;
      abs_min = abs_min == 0.0 ? v : std::min(abs_min, v);
      ++nonzero;
    }
  double beta0 = cfg.sa_beta_start > 0 ? cfg.sa_beta_start
                                       : 0.1 / std::max(abs_sum / std::max<long long>(nonzero, 1), 1e-12);
  double beta1 = cfg.sa_beta_end > 0 ? cfg.sa_beta_end
                                     : 10.0 / std::max(abs_min, 1e-12);

  std::vector<Attempt> attempts;
  attempts.reserve(cfg.attempts);
  for (int a = 0; a < cfg.attempts; ++a) {
    const auto ta = Clock::now();
    std::mt19937_64 rng(mix_seed(cfg.seed, a));
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Bits attempt_z;
    double attempt_e = 0.0;
    for (int run = 0; run < cfg.restarts; ++run) {
      Bits z(d);
      Eigen::VectorXd zd(d);
      for (int i = 0; i < d; ++i) {
        z[i] = bit(rng);
        zd[i] = z[i];
      }
      // field[i] = Q_ii + 2 sum_{j != i} Q_ij z_j; flip delta is (1-2z_i)*field[i]
      Eigen::VectorXd field = model.q.diagonal() +
                              2.0 * (model.q * zd - model.q.diagonal().cwiseProduct(zd));
      double e = zd.dot(model.q * zd) + model.offset;

      Bits best_z = z;
      double best_e = e;
      for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
        double frac =
            cfg.iterations > 1 ? static_cast<double>(sweep) / (cfg.iterations - 1) : 1.0;
        double beta = beta0 * std::pow(beta1 / beta0, frac);
        for (int step = 0; step < d; ++step) {
          int i = pick(rng);
          double de = (1 - 2 * z[i]) * field[i];
          if (de <= 0.0 || unit(rng) < std::exp(-beta * de)) {
            int delta = z[i] ? -1 : 1;
            z[i] ^= 1;
            e += de;
            field += (2.0 * delta) * model.q.col(i);
            field[i] -= 2.0 * delta * model.q(i, i);
            if (e < best_e) {
              best_e = e;
              best_z = z;
            }
          }
        }
      }
      z = best_z;
      quench(model, z);
      double run_e = energy(model, z);
      if (run == 0 || run_e < attempt_e) {
        attempt_e = run_e;
        attempt_z = std::move(z);
      }
    }
    attempts.push_back({std::move(attempt_z), attempt_e, elapsed_us(ta)});
  }
  return finish(model, std::move(attempts), t0);
}

namespace {

// how often the analog solvers round, quench, and record the state
constexpr int sample_every = 25;

double coupling_scale(const IsingModel& ising) {
  double worst = 0.0;
  for (int i = 0; i < ising.dim(); ++i)
    worst = std::max(worst, 2.0 * ising.j.row(i).cwiseAbs().sum() +
                                std::abs(ising.h[i]));
  return std::max(worst, 1e-12);
}

}  // namespace

SolveResult solve_simcim(const QuboModel& model, const SolverConfig& cfg) {
  cfg.check();
  const int d = model.dim();
  const auto t0 = Clock::now();
  const IsingModel ising = qubo_to_ising(model);
  const double zeta = cfg.cim_zeta > 0 ? cfg.cim_zeta : 1.0 / coupling_scale(ising);

  std::vector<Attempt> attempts;
  attempts.reserve(cfg.attempts);
  for (int a = 0; a < cfg.attempts; ++a) {
    const auto ta = Clock::now();
    std::mt19937_64 rng(mix_seed(cfg.seed, a));
    std::normal_distribution<double> gauss(0.0, 1.0);

    Bits attempt_z;
    double attempt_e = 0.0;
    bool have = false;
    auto consider = [&](Bits z) {
      quench(model, z);
      double e = energy(model, z);
      if (!have || e < attempt_e) {
        have = true;
        attempt_e = e;
        attempt_z = std::move(z);
      }
    };
    for (int run = 0; run < cfg.restarts; ++run) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
      for (int t = 0; t < cfg.iterations; ++t) {
        double frac = cfg.iterations > 1 ? static_cast<double>(t) / (cfg.iterations - 1) : 1.0;
        double pump = cfg.cim_pump_start + (cfg.cim_pump_end - cfg.cim_pump_start) * frac;
        Eigen::VectorXd force = -(2.0 * (ising.j * c) + ising.h);
        c += cfg.cim_dt * (pump * c + zeta * force);
        if (cfg.cim_noise > 0.0)
          for (int i = 0; i < d; ++i) c[i] += cfg.cim_noise * gauss(rng);
        c = c.cwiseMax(-1.0).cwiseMin(1.0);
        // readout along the trajectory, not just at the end
        if (t % sample_every == sample_every - 1 || t == cfg.iterations - 1)
          consider(spins_to_bits(c));
      }
    }
    attempts.push_back({std::move(attempt_z), attempt_e, elapsed_us(ta)});
  }
  return finish(model, std::move(attempts), t0);
}

SolveResult solve_sb(const QuboModel& model, const SolverConfig& cfg) {
  cfg.check();
  const int d = model.dim();
  const auto t0 = Clock::now();
  const IsingModel ising = qubo_to_ising(model);
  const double delta = cfg.sb_detuning;
  const double c0 =
      cfg.sb_coupling > 0 ? cfg.sb_coupling : delta / (2.0 * coupling_scale(ising));

  std::vector<Attempt> attempts;
  attempts.reserve(cfg.attempts);
  for (int a = 0; a < cfg.attempts; ++a) {
    const auto ta = Clock::now();
    std::mt19937_64 rng(mix_seed(cfg.seed, a));
    std::uniform_real_distribution<double> small(-0.1, 0.1);

    Bits attempt_z;
    double attempt_e = 0.0;
    bool have = false;
    auto consider = [&](Bits z) {
      quench(model, z);
      double e = energy(model, z);
      if (!have || e < attempt_e) {
        have = true;
        attempt_e = e;
        attempt_z = std::move(z);
      }
    };
    for (int run = 0; run < cfg.restarts; ++run) {
      // the all-zero state is a fixed point of the dynamics, so start perturbed
      Eigen::VectorXd x(d), v(d);
      for (int i = 0; i < d; ++i) {
        x[i] = small(rng);
        v[i] = small(rng);
      }

      for (int t = 0; t < cfg.iterations; ++t) {
        double frac = cfg.iterations > 1 ? static_cast<double>(t) / (cfg.iterations - 1) : 1.0;
        double ramp = delta * frac;  // a(t): 0 -> delta
        Eigen::VectorXd force = -(2.0 * (ising.j * x) + frac * ising.h);
        v += cfg.sb_dt * (-(delta - ramp) * x + c0 * force);
        x += cfg.sb_dt * delta * v;
        for (int i = 0; i < d; ++i) {
          if (std::abs(x[i]) > 1.0) {
            x[i] = spin_sign(x[i]);
            v[i] = 0.0;
          }
        }
        // readout along the trajectory, not just at the end
        if (t % sample_every == sample_every - 1 || t == cfg.iterations - 1)
          consider(spins_to_bits(x));
      }
    }
    attempts.push_back({std::move(attempt_z), attempt_e, elapsed_us(ta)});
  }
  return finish(model, std::move(attempts), t0);
}

SolveResult solve(Algorithm alg, const QuboModel& model, const SolverConfig& cfg) {
  switch (alg) {
    case Algorithm::SA: return solve_sa(model, cfg);
    case Algorithm::SimCIM: return solve_simcim(model, cfg);
    case Algorithm::SB: return solve_sb(model, cfg);
  }
  throw std::logic_error("unreachable");
}

std::string describe_defaults() {
  std::ostringstream out;
  out << "# 0 for a scale parameter means: derived from the model\n";
  for (Algorithm alg : {Algorithm::SA, Algorithm::SimCIM, Algorithm::SB}) {
    SolverConfig c = default_config(alg);
    out << "[" << algorithm_name(alg) << "]\n";
    out << "seed = " << c.seed << "\n";
    out << "iterations = " << c.iterations << "\n";
    out << "attempts = " << c.attempts << "\n";
    out << "restarts = " << c.restarts << "\n";
    switch (alg) {
      case Algorithm::SA:
        out << "sa_beta_start = " << c.sa_beta_start << "  # 0: 0.1 / mean nonzero |Q|\n";
        out << "sa_beta_end = " << c.sa_beta_end << "  # 0: 10 / min nonzero |Q|\n";
        break;
      case Algorithm::SimCIM:
        out << "cim_dt = " << c.cim_dt << "\n";
        out << "cim_pump_start = " << c.cim_pump_start << "\n";
        out << "cim_pump_end = " << c.cim_pump_end << "\n";
        out << "cim_zeta = " << c.cim_zeta << "  # 0: 1 / max_i(sum_j |2 J_ij| + |h_i|)\n";
        out << "cim_noise = " << c.cim_noise << "\n";
        break;
      case Algorithm::SB:
        out << "sb_dt = " << c.sb_dt << "\n";
        out << "sb_detuning = " << c.sb_detuning << "\n";
        out << "sb_coupling = " << c.sb_coupling
            << "  # 0: detuning / (2 max_i(sum_j |2 J_ij| + |h_i|))\n";
        break;
    }
  }
  return out.str();
}

SolverConfig parse_config(const std::string& text, SolverConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '[') continue;  // section markers are cosmetic
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "seed") base.seed = std::stoull(value);
      else if (key == "iterations") base.iterations = std::stoi(value);
      else if (key == "attempts") base.attempts = std::stoi(value);
      else if (key == "restarts") base.restarts = std::stoi(value);
      else if (key == "sa_beta_start") base.sa_beta_start = std::stod(value);
      else if (key == "sa_beta_end") base.sa_beta_end = std::stod(value);
      else if (key == "cim_dt") base.cim_dt = std::stod(value);
      else if (key == "cim_pump_start") base.cim_pump_start = std::stod(value);
      else if (key == "cim_pump_end") base.cim_pump_end = std::stod(value);
      else if (key == "cim_zeta") base.cim_zeta = std::stod(value);
      else if (key == "cim_noise") base.cim_noise = std::stod(value);
      else if (key == "sb_dt") base.sb_dt = std::stod(value);
      else if (key == "sb_detuning") base.sb_detuning = std::stod(value);
      else if (key == "sb_coupling") base.sb_coupling = std::stod(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
  return base;
}

}  // namespace cf
