#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momsos/conic.hpp"
#include "momsos/instance.hpp"
#include "momsos/moment_sequence.hpp"

namespace momsos {

/// The order-n moment relaxation of an instance, as a conic problem:
///
///   rho_n = min phi(f)  s.t.  phi_0 = 1,  M_{n-d_j}(g_j phi) psd for
///                             j = 0..m+1 (g_0 = 1 is the moment matrix),
///
/// with decision variables the moments of degree 1..2n in graded-lex order
/// (phi_0 is pinned by substitution, so f's constant term rides in the
/// objective offset). Block j has side s(n - d_j), d_j = ceil(deg g_j / 2).
struct MomentRelaxation {
  Instance instance;  // preprocessed, scaled coordinates
  int order = 0;
  ConicProblem problem{0};

  /// Decision-variable index of moment alpha (1 <= |alpha| <= 2n).
  int var_of(const MultiIndex& alpha) const;
  /// Moment multi-index of decision variable i.
  const MultiIndex& alpha_of(int var) const;
  /// Flattens a moment sequence of degree 2n into a decision vector (tests
  /// use this to feed hand-built feasible points through decode).
  std::vector<double> encode_moments(const MomentSequence& phi) const;
};

struct RelaxationSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  double bound = 0.0;                    // rho_n, meaningful when optimal
  std::optional<MomentSequence> moments; // scaled coordinates, degree 2n
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  std::string message;
};

/// Assembles the order-n relaxation. Requires a preprocessed instance and
/// n >= n_min(instance).
MomentRelaxation build_relaxation(const Instance& inst, int n);

/// Reassembles the moment sequence (reinserting phi_0 = 1) from a raw solver
/// result and re-validates every block PSD against the decoded moments with
/// tolerance 1e-6 — an independent check through the moment-matrix builders,
/// not the conic encoding. A re-validation miss downgrades the status to
/// NumericalFailure. Requires raw.status == Optimal.
RelaxationSolution decode(const MomentRelaxation& relaxation, const ConicSolution& raw);

/// build + solve + decode in one call.
RelaxationSolution solve_relaxation(const Instance& inst, int n,
                                    const SolverSettings& settings = {});

}  // namespace momsos
