#include "momsos/certificate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "momsos/multi_index.hpp"

// The decomposition search poses one PSD-feasibility problem: find Gram
// matrices G_j over the tensor bases b_j = (x^alpha y_k) such that
//
//   y' hessian(f)(x) y  =  sum_j b_j' G_j b_j * g_j(x)   coefficientwise.
//
// Coefficient matching rides in a zero-cone block (eliminated exactly inside
// the solver), and feasibility of "all G_j psd" is decided by maximizing the
// margin t subject to G_j - t I psd and t <= 1: the matched family contains
// a PSD point exactly when the optimal margin is nonnegative.

namespace momsos {
namespace {

constexpr double kMarginAccept = -1e-7;   // smallest t* still counted feasible
constexpr double kEigenClip = 1e-9;       // Gram eigenvalues below this are dropped
constexpr double kDegreeDrop = 1e-7;      // factor coefficients below this don't set a_j
constexpr double kResidualCap = 1e-6;     // reconstruction mismatch past this is a failure

struct GramLayout {
  const MonomialBasis* xbasis;
  int d;
  int tensor_size;
  int var_base;

  int sym_vars() const { return tensor_size * (tensor_size + 1) / 2; }
  int var_of(int p, int q) const {  // p <= q
    return var_base + p * tensor_size - p * (p - 1) / 2 + (q - p);
  }
};

struct GramSearch {
  bool feasible = false;
  double t_star = 0.0;
  std::vector<Eigen::MatrixXd> grams;
};

GramSearch search_gram_decomposition(const PolyMatrix& target,
                                     const std::vector<Polynomial>& weights,
                                     const std::vector<int>& bounds,
                                     const SolverSettings& settings) {
  const int d = target.rows();
  std::vector<GramLayout> lay(weights.size());
  int nvars = 0;
  for (size_t j = 0; j < weights.size(); ++j) {
    if (bounds[j] < 0) throw std::invalid_argument("certificate search: negative degree bound");
    const MonomialBasis& bx = cached_basis(d, bounds[j]);
    lay[j] = GramLayout{&bx, d, static_cast<int>(bx.size()) * d, nvars};
    nvars += lay[j].sym_vars();
  }
  const int t_var = nvars;

  ConicProblem prob(nvars + 1);
  prob.set_objective(t_var, -1.0);  // maximize the margin t

  for (size_t j = 0; j < weights.size(); ++j) {
    int block = prob.add_block(BlockKind::PSD, lay[j].tensor_size);
    for (int p = 0; p < lay[j].tensor_size; ++p) {
      for (int q = p; q < lay[j].tensor_size; ++q) {
        prob.add_entry(block, p, q, lay[j].var_of(p, q), 1.0);
      }
      prob.add_entry(block, p, p, t_var, -1.0);
    }
  }
  int cap = prob.add_block(BlockKind::PSD, 1);  // t <= 1 keeps phase 1 bounded
  prob.add_entry(cap, 0, 0, ConicProblem::kConstant, 1.0);
  prob.add_entry(cap, 0, 0, t_var, -1.0);

  // Matching equations, keyed by (gamma, k <= l) for the monomial
  // x^gamma y_k y_l. Every key either side can produce gets an equation.
  auto key_of = [](const MultiIndex& gamma, int k, int l) {
    std::vector<int> key = gamma.exps;
    key.push_back(k);
    key.push_back(l);
    return key;
  };
  std::map<std::vector<int>, std::map<int, double>> equations;
  std::map<std::vector<int>, double> targets;

  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      double mult = k == l ? 1.0 : 2.0;  // y_k y_l collects H_kl + H_lk
      for (const auto& [gamma, coef] : target.at(k, l).terms()) {
        targets[key_of(gamma, k, l)] += mult * coef;
      }
    }
  }
  for (size_t j = 0; j < weights.size(); ++j) {
    const MonomialBasis& bx = *lay[j].xbasis;
    for (int p = 0; p < lay[j].tensor_size; ++p) {
      const MultiIndex& pa = bx.at(static_cast<size_t>(p / d));
      const int pk = p % d;
      for (int q = p; q < lay[j].tensor_size; ++q) {
        const MultiIndex& qa = bx.at(static_cast<size_t>(q / d));
        const int qk = q % d;
        const double pq_mult = p == q ? 1.0 : 2.0;  // b'Gb doubles off-diagonal terms
        MultiIndex ab = pa + qa;
        const int ky = std::min(pk, qk), ly = std::max(pk, qk);
        for (const auto& [delta, w] : weights[j].terms()) {
          equations[key_of(ab + delta, ky, ly)][lay[j].var_of(p, q)] += pq_mult * w;
        }
      }
    }
  }
  for (const auto& [key, coef] : targets) equations[key];  // unreachable targets still match

  int zb = prob.add_block(BlockKind::Zero, std::max<int>(1, static_cast<int>(equations.size())));
  int row = 0;
  for (const auto& [key, vars] : equations) {
    for (const auto& [var, coef] : vars) prob.add_entry(zb, row, row, var, coef);
    auto it = targets.find(key);
    if (it != targets.end() && it->second != 0.0) {
      prob.add_entry(zb, row, row, ConicProblem::kConstant, -it->second);
    }
    ++row;
  }

  ConicSolution raw = solve(prob, settings);
  GramSearch out;
  if (raw.status == SolveStatus::Infeasible) return out;  // matching inconsistent at these bounds
  if (raw.status != SolveStatus::Optimal) {
    throw std::runtime_error("certificate search: conic backend failed (" + raw.message + ")");
  }
  out.t_star = raw.x[static_cast<size_t>(t_var)];
  if (out.t_star < kMarginAccept) return out;  // matched family has no PSD member here

  out.feasible = true;
  for (size_t j = 0; j < weights.size(); ++j) {
    Eigen::MatrixXd g(lay[j].tensor_size, lay[j].tensor_size);
    for (int p = 0; p < lay[j].tensor_size; ++p) {
      for (int q = p; q < lay[j].tensor_size; ++q) {
        double v = raw.x[static_cast<size_t>(lay[j].var_of(p, q))];
        g(p, q) = v;
        g(q, p) = v;
      }
    }
    out.grams.push_back(std::move(g));
  }
  return out;
}

struct Factored {
  Eigen::MatrixXd clipped;  // exactly PSD reconstruction of the Gram block
  PolyMatrix factor;        // L, d x r
  int degree = 0;           // a = max entry degree after the coefficient drop
};

Factored factor_gram(const Eigen::MatrixXd& gram, const MonomialBasis& bx, int d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("certificate factorization: eigendecomposition failed");
  }
  std::vector<int> keep;
  for (int i = 0; i < gram.rows(); ++i) {
    if (es.eigenvalues()[i] >= kEigenClip) keep.push_back(i);
  }

  Factored out{Eigen::MatrixXd::Zero(gram.rows(), gram.cols()),
               PolyMatrix(d, std::max<int>(1, static_cast<int>(keep.size())), d), 0};
  for (size_t c = 0; c < keep.size(); ++c) {
    double lam = es.eigenvalues()[keep[c]];
    Eigen::VectorXd col = std::sqrt(lam) * es.eigenvectors().col(keep[c]);
    out.clipped += lam * es.eigenvectors().col(keep[c]) * es.eigenvectors().col(keep[c]).transpose();
    for (int k = 0; k < d; ++k) {
      Polynomial entry = Polynomial::zero(d);
      for (size_t a = 0; a < bx.size(); ++a) {
        double coef = col[static_cast<int>(a) * d + k];
        if (coef != 0.0) entry = entry + Polynomial::monomial(bx.at(a), coef);
      }
      out.factor.at(k, static_cast<int>(c)) = entry;
    }
  }
  for (int r = 0; r < out.factor.rows(); ++r) {
    for (int c = 0; c < out.factor.cols(); ++c) {
      for (const auto& [alpha, coef] : out.factor.at(r, c).terms()) {
        if (std::abs(coef) >= kDegreeDrop) {
          out.degree = std::max(out.degree, alpha.total_degree());
        }
      }
    }
  }
  return out;
}

// sum_j (L_j L_j') * g_j, entrywise coefficient distance to the target.
double reconstruction_residual(const PolyMatrix& target, const std::vector<PolyMatrix>& factors,
                               const std::vector<Polynomial>& weights) {
  const int d = target.rows();
  PolyMatrix sum(d, d, d);
  for (size_t j = 0; j < factors.size(); ++j) {
    PolyMatrix outer = gram_product(factors[j]);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        sum.at(r, c) = sum.at(r, c) + outer.at(r, c) * weights[j];
      }
    }
  }
  double residual = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      residual = std::max(residual, sum.at(r, c).coefficient_distance(target.at(r, c)));
    }
  }
  return residual;
}

}  // namespace

std::vector<int> default_certificate_bounds(const Polynomial& f,
                                            const std::vector<Polynomial>& constraints) {
  const int deg_f = f.degree_or(0);
  auto bound_for = [deg_f](int deg_g) {
    int num = deg_f - 2 - deg_g;
    return num <= 0 ? 0 : (num + 1) / 2;
  };
  std::vector<int> bounds;
  bounds.push_back(bound_for(0));
  for (const Polynomial& g : constraints) bounds.push_back(bound_for(*g.degree()));
  return bounds;
}

std::optional<CertificateBundle> check_sos_convex_on_omega(
    const Polynomial& f, const std::vector<Polynomial>& constraints,
    const std::vector<int>& bounds, const SolverSettings& settings) {
  if (bounds.size() != constraints.size() + 1) {
    throw std::invalid_argument(
        "check_sos_convex_on_omega: need one bound for g_0 = 1 plus one per constraint");
  }
  const int d = f.dimension();
  for (const Polynomial& g : constraints) {
    if (g.dimension() != d) {
      throw std::invalid_argument("check_sos_convex_on_omega: constraint dimension mismatch");
    }
    if (g.is_zero()) {
      throw std::invalid_argument("check_sos_convex_on_omega: zero constraint polynomial");
    }
  }

  std::vector<Polynomial> weights;
  weights.push_back(Polynomial::constant(d, 1.0));
  weights.insert(weights.end(), constraints.begin(), constraints.end());

  PolyMatrix target = hessian(f);
  GramSearch search = search_gram_decomposition(target, weights, bounds, settings);
  if (!search.feasible) return std::nullopt;

  CertificateBundle bundle;
  bundle.bounds = bounds;
  bundle.t_star = search.t_star;
  for (size_t j = 0; j < weights.size(); ++j) {
    Factored fac = factor_gram(search.grams[j], cached_basis(d, bounds[j]), d);
    bundle.gram_blocks.push_back(std::move(fac.clipped));
    bundle.factors.push_back(std::move(fac.factor));
    bundle.degrees.push_back(fac.degree);
  }
  for (const Polynomial& g : constraints) bundle.constraint_degrees.push_back(*g.degree());

  bundle.residual = reconstruction_residual(target, bundle.factors, weights);
  if (bundle.residual > kResidualCap) {
    throw std::runtime_error("check_sos_convex_on_omega: reconstruction residual " +
                             std::to_string(bundle.residual) + " exceeds 1e-6");
  }
  return bundle;
}

std::optional<PolyMatrix> check_sos_concave(const Polynomial& g, int degree_bound,
                                            const SolverSettings& settings) {
  const int d = g.dimension();
  std::vector<Polynomial> weights{Polynomial::constant(d, 1.0)};
  PolyMatrix target = hessian(-g);
  GramSearch search =
      search_gram_decomposition(target, weights, std::vector<int>{degree_bound}, settings);
  if (!search.feasible) return std::nullopt;

  Factored fac = factor_gram(search.grams[0], cached_basis(d, degree_bound), d);
  double residual = reconstruction_residual(target, {fac.factor}, weights);
  if (residual > kResidualCap) {
    throw std::runtime_error("check_sos_concave: reconstruction residual " +
                             std::to_string(residual) + " exceeds 1e-6");
  }
  return fac.factor;
}

int exact_order_bound(const CertificateBundle& bundle) {
  if (bundle.constraint_degrees.empty()) {
    throw std::invalid_argument("exact_order_bound: bundle has no constraints");
  }
  for (int deg : bundle.constraint_degrees) {
    if (deg > 2) {
      throw std::invalid_argument(
          "exact_order_bound: a constraint of degree above 2 is present; the explicit order "
          "guarantee only covers quadratic and linear constraints");
    }
  }
  int inner = bundle.degrees[0];  // a_0
  for (size_t j = 1; j < bundle.degrees.size(); ++j) {
    inner = std::max(inner, bundle.degrees[j] + 1);
  }
  return 1 + inner;
}

}  // namespace momsos
