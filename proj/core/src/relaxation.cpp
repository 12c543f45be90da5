#include "momsos/relaxation.hpp"

#include <map>
#include <stdexcept>

#include "momsos/moment_matrix.hpp"

namespace momsos {

int MomentRelaxation::var_of(const MultiIndex& alpha) const {
  const MonomialBasis& basis = cached_basis(instance.dimension, 2 * order);
  int idx = basis.index_of(alpha);
  if (idx <= 0) {
    throw std::invalid_argument("MomentRelaxation::var_of: not a decision moment");
  }
  return idx - 1;  // variable 0 is the first degree-1 moment; phi_0 is pinned
}

const MultiIndex& MomentRelaxation::alpha_of(int var) const {
  const MonomialBasis& basis = cached_basis(instance.dimension, 2 * order);
  if (var < 0 || var + 1 >= static_cast<int>(basis.size())) {
    throw std::invalid_argument("MomentRelaxation::alpha_of: variable out of range");
  }
  return basis.at(static_cast<size_t>(var) + 1);
}

std::vector<double> MomentRelaxation::encode_moments(const MomentSequence& phi) const {
  if (phi.dimension() != instance.dimension || phi.max_degree() != 2 * order) {
    throw std::invalid_argument("MomentRelaxation::encode_moments: shape mismatch");
  }
  return std::vector<double>(phi.values().begin() + 1, phi.values().end());
}

MomentRelaxation build_relaxation(const Instance& inst, int n) {
  if (!inst.preprocessed) {
    throw std::invalid_argument("build_relaxation: instance not preprocessed");
  }
  if (n < n_min(inst)) {
    throw std::invalid_argument("build_relaxation: order below n_min");
  }
  const int d = inst.dimension;
  const MonomialBasis& full = cached_basis(d, 2 * n);
  const int num_vars = static_cast<int>(full.size()) - 1;

  MomentRelaxation rel;
  rel.instance = inst;
  rel.order = n;
  rel.problem = ConicProblem(num_vars);

  // Objective phi(f): the constant coefficient multiplies the pinned phi_0.
  for (const auto& [alpha, coef] : inst.objective.terms()) {
    if (alpha.total_degree() == 0) {
      rel.problem.set_objective_offset(coef);
    } else {
      rel.problem.add_objective(full.index_of(alpha) - 1, coef);
    }
  }

  // One block per g_j, j = 0..m+1, entry (r, c) = sum_gamma g_gamma
  // phi_{alpha_r + alpha_c + gamma}; g_0 = 1 gives the plain moment matrix.
  auto add_localizing_block = [&](const Polynomial& g, int k) {
    const MonomialBasis& rows = cached_basis(d, k);
    int block = rel.problem.add_block(BlockKind::PSD, static_cast<int>(rows.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
      for (size_t c = r; c < rows.size(); ++c) {
        MultiIndex ab = rows.at(r) + rows.at(c);
        std::map<int, double> cell;  // var (kConstant for phi_0) -> coefficient
        for (const auto& [gamma, coef] : g.terms()) {
          MultiIndex target = ab + gamma;
          int idx = full.index_of(target);
          cell[idx == 0 ? ConicProblem::kConstant : idx - 1] += coef;
        }
        for (const auto& [var, coef] : cell) {
          rel.problem.add_entry(block, static_cast<int>(r), static_cast<int>(c), var, coef);
        }
      }
    }
  };

  add_localizing_block(Polynomial::constant(d, 1.0), n);
  for (const Polynomial& g : inst.constraints) {
    int dj = (*g.degree() + 1) / 2;
    add_localizing_block(g, n - dj);
  }
  return rel;
}

RelaxationSolution decode(const MomentRelaxation& relaxation, const ConicSolution& raw) {
  if (raw.status != SolveStatus::Optimal) {
    throw std::invalid_argument("decode: solver status is " + to_string(raw.status) +
                                ", expected optimal");
  }
  const Instance& inst = relaxation.instance;
  const int n = relaxation.order;

  RelaxationSolution sol;
  sol.status = SolveStatus::Optimal;
  sol.bound = raw.objective;
  sol.iterations = raw.iterations;
  sol.primal_residual = raw.primal_residual;
  sol.dual_residual = raw.dual_residual;
  sol.duality_gap = raw.duality_gap;
  sol.message = raw.message;

  MomentSequence phi(inst.dimension, 2 * n);
  phi[0] = 1.0;
  if (raw.x.size() != phi.size() - 1) {
    throw std::invalid_argument("decode: solution length does not match the moment basis");
  }
  for (size_t i = 0; i < raw.x.size(); ++i) phi[i + 1] = raw.x[i];

  // Independent re-validation through the moment-matrix builders.
  bool ok = is_psd(moment_matrix(phi, n), 1e-6);
  for (const Polynomial& g : inst.constraints) {
    if (!ok) break;
    int dj = (*g.degree() + 1) / 2;
    ok = is_psd(localizing_matrix(phi, g, n - dj), 1e-6);
  }
  if (!ok) {
    sol.status = SolveStatus::NumericalFailure;
    sol.message = "decoded moments fail PSD re-validation at 1e-6";
  }
  sol.moments = std::move(phi);
  return sol;
}

RelaxationSolution solve_relaxation(const Instance& inst, int n,
                                    const SolverSettings& settings) {
  MomentRelaxation rel = build_relaxation(inst, n);
  ConicSolution raw = solve(rel.problem, settings);
  if (raw.status != SolveStatus::Optimal) {
    RelaxationSolution sol;
    sol.status = raw.status;
    sol.iterations = raw.iterations;
    sol.primal_residual = raw.primal_residual;
    sol.dual_residual = raw.dual_residual;
    sol.duality_gap = raw.duality_gap;
    sol.message = raw.message;
    return sol;
  }
  return decode(rel, raw);
}

}  // namespace momsos
