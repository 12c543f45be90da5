#pragma once

#include <Eigen/Dense>

#include "momsos/moment_sequence.hpp"
#include "momsos/polynomial.hpp"

namespace momsos {

/// Moment matrix M_n(phi): rows/columns indexed by the degree-n monomial
/// basis, entry (a, b) = phi_{a+b}. Requires max_degree(phi) >= 2n.
Eigen::MatrixXd moment_matrix(const MomentSequence& phi, int n);

/// Localizing matrix M_n(g.phi): entry (a, b) = sum_g g_gamma phi_{a+b+gamma}.
/// Requires max_degree(phi) >= 2n + deg(g). Equals moment_matrix applied to
/// the shifted sequence; assembled directly to avoid materializing it.
Eigen::MatrixXd localizing_matrix(const MomentSequence& phi, const Polynomial& g, int n);

/// Numerically positive semidefinite: lambda_min >= -tol_scale * (1 + ||M||_F).
/// The relative term keeps the test meaningful across matrix scales.
bool is_psd(const Eigen::MatrixXd& m, double tol_scale = 1e-8);

/// Smallest eigenvalue of a symmetric matrix (selfadjoint solver).
double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace momsos
