#include "cf/qubo.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cf {
namespace {

int bits_for(long long max_value) {
  // smallest width w with 2^w - 1 >= max_value
  int w = 0;
  while ((1LL << w) - 1 < max_value) ++w;
  return w;
}

struct LinearTerm {
  int idx;
  double coeff;
};

// Adds scale * (sum_t coeff_t * z_t + constant)^2, expanded with z^2 = z.
void add_squared(Eigen::MatrixXd& q, double& offset,
                 const std::vector<LinearTerm>& terms, double constant,
                 double scale) {
  for (const auto& t : terms)
    q(t.idx, t.idx) += scale * (t.coeff * t.coeff + 2.0 * constant * t.coeff);
  for (size_t a = 0; a < terms.size(); ++a)
    for (size_t b = a + 1; b < terms.size(); ++b) {
      double half = scale * terms[a].coeff * terms[b].coeff;
      q(terms[a].idx, terms[b].idx) += half;
      q(terms[b].idx, terms[a].idx) += half;
    }
  offset += scale * constant * constant;
}

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

VariableLayout build_layout(const ProblemInstance& inst) {
  inst.check();
  VariableLayout layout;
  layout.n = inst.n;
  layout.m = inst.m;
  layout.s = bits_for(inst.p_max);
  layout.k = inst.n_min == 1 ? 0 : bits_for(inst.n - inst.n_min);
  return layout;
}

PenaltyWeights default_weights(const ProblemInstance& inst, double a_weight) {
  return {a_weight, 2.0 * a_weight * inst.m};
}

QuboModel build_qubo(const ProblemInstance& inst, const PenaltyWeights& w) {
  inst.check();
  if (w.a_weight <= 0 || w.b_weight <= 0)
    throw std::invalid_argument("penalty weights must be strictly positive");

  QuboModel model;
  model.layout = build_layout(inst);
  model.weights = w;
  const VariableLayout& L = model.layout;
  const double A = w.a_weight;
  const double B = w.b_weight;
  model.q = Eigen::MatrixXd::Zero(L.dim(), L.dim());
  model.offset = 0.0;

  // objective: A * sum_j y_j
  for (int j = 0; j < L.m; ++j) model.q(L.y(j), L.y(j)) += A;

  // H1: capacity equality with slack, per canister
  for (int j = 0; j < L.m; ++j) {
    std::vector<LinearTerm> terms;
    for (int i = 0; i < L.n; ++i)
      terms.push_back({L.x(i, j), static_cast<double>(inst.p[i])});
    for (int l = 0; l < L.s; ++l)
      terms.push_back({L.a(l, j), static_cast<double>(1LL << l)});
    add_squared(model.q, model.offset, terms, -static_cast<double>(inst.p_max), B);
  }

  // H2: each element in exactly one canister
  for (int i = 0; i < L.n; ++i) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < L.m; ++j) terms.push_back({L.x(i, j), 1.0});
    add_squared(model.q, model.offset, terms, -1.0, B);
  }

  // H3: minimum fill with slack, only when the constraint is active
  if (inst.n_min > 1) {
    for (int j = 0; j < L.m; ++j) {
      std::vector<LinearTerm> terms;
      for (int i = 0; i < L.n; ++i) terms.push_back({L.x(i, j), 1.0});
      for (int l = 0; l < L.k; ++l)
        terms.push_back({L.b(l, j), -static_cast<double>(1LL << l)});
      terms.push_back({L.y(j), -static_cast<double>(inst.n_min)});
      add_squared(model.q, model.offset, terms, 0.0, B);
    }
  }

  // H4: x_ij (1 - y_j)
  for (int i = 0; i < L.n; ++i)
    for (int j = 0; j < L.m; ++j) {
      model.q(L.x(i, j), L.x(i, j)) += B;
      model.q(L.x(i, j), L.y(j)) += -B / 2.0;
      model.q(L.y(j), L.x(i, j)) += -B / 2.0;
    }

  return model;
}

double energy(const QuboModel& model, const Bits& z) {
  if (static_cast<int>(z.size()) != model.dim())
    throw std::invalid_argument("bit vector length does not match model dimension");
  Eigen::VectorXd zd(model.dim());
  for (int i = 0; i < model.dim(); ++i) zd[i] = z[i] ? 1.0 : 0.0;
  return zd.dot(model.q * zd) + model.offset;
}

double penalty_energy(const QuboModel& model, const Bits& z) {
  double e = energy(model, z);
  for (int j = 0; j < model.layout.m; ++j)
    if (z[model.layout.y(j)]) e -= model.weights.a_weight;
  return e;
}

Bits encode_assignment(const ProblemInstance& inst, const VariableLayout& layout,
                       const Assignment& asg) {
  FeasibilityReport report = validate_assignment(inst, asg);
  if (!report.feasible)
    throw std::invalid_argument("cannot encode an infeasible assignment");

  Bits z(layout.dim(), 0);
  std::vector<long long> load(inst.m, 0);
  std::vector<int> count(inst.m, 0);
  for (int i = 0; i < inst.n; ++i) {
    int j = asg.canister_of()[i];
    z[layout.x(i, j)] = 1;
    load[j] += inst.p[i];
    count[j] += 1;
  }
  for (int j : asg.used()) z[layout.y(j)] = 1;
  for (int j = 0; j < inst.m; ++j) {
    long long slack = inst.p_max - load[j];
    for (int l = 0; l < layout.s; ++l) z[layout.a(l, j)] = (slack >> l) & 1;
    if (layout.k > 0) {
      long long fill_slack = count[j] - static_cast<long long>(inst.n_min) *
                                            (z[layout.y(j)] ? 1 : 0);
      for (int l = 0; l < layout.k; ++l) z[layout.b(l, j)] = (fill_slack >> l) & 1;
    }
  }
  return z;
}

std::variant<Assignment, DecodeFailure> decode_bits(const ProblemInstance& inst,
                                                    const VariableLayout& layout,
                                                    const Bits& z) {
  if (static_cast<int>(z.size()) != layout.dim())
    throw std::invalid_argument("bit vector length does not match layout dimension");
  std::vector<int> canister_of(inst.n, -1);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      if (!z[layout.x(i, j)]) continue;
      if (canister_of[i] != -1)
        return DecodeFailure{"element " + std::to_string(i) +
                             " assigned to multiple canisters"};
      canister_of[i] = j;
    }
    if (canister_of[i] == -1)
      return DecodeFailure{"element " + std::to_string(i) + " unassigned"};
  }
  return Assignment(std::move(canister_of));
}

void export_qubo(const QuboModel& model, std::ostream& out) {
  out << model.dim() << " " << format_number(model.offset) << "\n";
  for (int i = 0; i < model.dim(); ++i)
    for (int j = i; j < model.dim(); ++j)
      if (model.q(i, j) != 0.0)
        out << i << " " << j << " " << format_number(model.q(i, j)) << "\n";
}

}  // namespace cf
