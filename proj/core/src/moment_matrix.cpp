#include "momsos/moment_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace momsos {

Eigen::MatrixXd moment_matrix(const MomentSequence& phi, int n) {
  if (n < 0) throw std::invalid_argument("moment_matrix: order must be >= 0");
  if (phi.max_degree() < 2 * n) {
    throw std::invalid_argument("moment_matrix: sequence truncated below degree 2n");
  }
  const MonomialBasis& basis = cached_basis(phi.dimension(), n);
  const int sz = static_cast<int>(basis.size());
  Eigen::MatrixXd m(sz, sz);
  for (int r = 0; r < sz; ++r) {
    for (int c = r; c < sz; ++c) {
      double v = phi.at(basis.at(r) + basis.at(c));
      m(r, c) = v;
      m(c, r) = v;
    }
  }
  return m;
}

Eigen::MatrixXd localizing_matrix(const MomentSequence& phi, const Polynomial& g, int n) {
  if (n < 0) throw std::invalid_argument("localizing_matrix: order must be >= 0");
  if (g.is_zero()) throw std::invalid_argument("localizing_matrix: g is the zero polynomial");
  if (g.dimension() != phi.dimension()) {
    throw std::invalid_argument("localizing_matrix: dimension mismatch");
  }
  if (phi.max_degree() < 2 * n + *g.degree()) {
    throw std::invalid_argument("localizing_matrix: sequence truncated below 2n + deg(g)");
  }
  const MonomialBasis& basis = cached_basis(phi.dimension(), n);
  const int sz = static_cast<int>(basis.size());
  Eigen::MatrixXd m(sz, sz);
  for (int r = 0; r < sz; ++r) {
    for (int c = r; c < sz; ++c) {
      MultiIndex ab = basis.at(r) + basis.at(c);
      double acc = 0.0;
      for (const auto& [gamma, coef] : g.terms()) acc += coef * phi.at(ab + gamma);
      m(r, c) = acc;
      m(c, r) = acc;
    }
  }
  return m;
}

bool is_psd(const Eigen::MatrixXd& m, double tol_scale) {
  return min_eigenvalue(m) >= -tol_scale * (1.0 + m.norm());
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("min_eigenvalue: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue: eigenvalue computation failed");
  }
  return es.eigenvalues().minCoeff();
}

}  // namespace momsos
