#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "momsos/conic.hpp"
#include "momsos/instance.hpp"
#include "momsos/polynomial.hpp"

namespace momsos {

/// A weighted matrix-SOS decomposition of the objective's Hessian,
///
///   hessian(f) = sum_{j=0}^{m+1} L_j(x) L_j(x)' g_j(x)      (g_0 = 1),
///
/// witnessing convexity of f on Omega. gram_blocks holds the PSD Gram
/// matrices over the tensor bases { x^alpha y_k : |alpha| <= bound_j },
/// factors the recovered L_j (d x r_j), degrees the measured a_j =
/// max_{k,l} deg L_j(k,l). The reconstruction residual is the max
/// coefficient mismatch of the identity above; a bundle is only ever
/// returned with residual <= 1e-6 and every Gram block PSD.
struct CertificateBundle {
  std::vector<Eigen::MatrixXd> gram_blocks;  // j = 0..m+1
  std::vector<PolyMatrix> factors;           // L_j
  std::vector<int> degrees;                  // a_j (coefficients below 1e-7 dropped)
  std::vector<int> bounds;                   // the search bounds abar_j
  std::vector<int> constraint_degrees;       // deg g_j, j = 1..m+1
  double residual = 0.0;
  double t_star = 0.0;  // phase-1 margin: max t with G_j - t I psd, t <= 1
};

/// Degree-matched starting bounds for the certificate search:
/// abar_j = max(0, ceil((deg f - 2 - deg g_j) / 2)), with deg g_0 = 0.
std::vector<int> default_certificate_bounds(const Polynomial& f,
                                            const std::vector<Polynomial>& constraints);

/// Searches for the decomposition above at the given per-j degree bounds
/// (bounds[0] for g_0 = 1, then one per constraint) via a single PSD
/// feasibility problem: coefficient matching is exact by construction
/// (zero-cone elimination), and feasibility is decided by maximizing the
/// smallest-eigenvalue margin t. Returns the bundle on success; absence
/// means "no certificate at these degrees", never a disproof of convexity.
/// Throws std::runtime_error on backend failure or when the reconstructed
/// identity misses by more than 1e-6.
std::optional<CertificateBundle> check_sos_convex_on_omega(
    const Polynomial& f, const std::vector<Polynomial>& constraints,
    const std::vector<int>& bounds, const SolverSettings& settings = {});

/// SOS-concavity of a constraint: -g must be globally SOS-convex, i.e.
/// -hessian(g) = L L'. Returns L on success (a zero d x 1 factor when the
/// Hessian vanishes), absence when no factorization exists at the bound.
std::optional<PolyMatrix> check_sos_concave(const Polynomial& g, int degree_bound,
                                            const SolverSettings& settings = {});

/// The explicit order at which the hierarchy is guaranteed exact for an
/// SOS-convex-on-Omega objective over SOS-concave constraints of degree at
/// most two: 1 + max(max_{j>=1}(a_j + 1), a_0). Throws when any constraint
/// degree exceeds 2 (the guarantee only covers that regime).
int exact_order_bound(const CertificateBundle& bundle);

}  // namespace momsos
