#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "momsos/conic.hpp"

// Infeasible-start primal-dual interior-point method (HKM direction with a
// Mehrotra predictor-corrector) on the LMI form
//
//   min c'x   s.t.   S_b = C_b + sum_i x_i A_{b,i}  psd,
//
// with dual blocks Z_b psd satisfying sum_b <A_{b,i}, Z_b> = c_i and duality
// gap sum_b <S_b, Z_b>. Zero-cone blocks are removed beforehand by solving
// the equality system with an SVD and substituting x = x0 + N z (N a
// nullspace basis), which keeps the iteration purely PSD. Dense linear
// algebra throughout: the intended problems are desk-scale.

namespace momsos {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct DenseBlock {
  int side = 0;
  Eigen::MatrixXd C;
  std::vector<int> vars;                        // global variable ids, ascending
  std::vector<std::vector<BlockEntry>> sparse;  // per local var, row <= col
  std::vector<Eigen::MatrixXd> dense;           // per local var, full symmetric
};

// tr(A * M) where A is the symmetric matrix given by upper-triangle entries.
double sym_trace_dot(const std::vector<BlockEntry>& a, const Eigen::MatrixXd& m) {
  double acc = 0.0;
  for (const BlockEntry& e : a) {
    acc += e.row == e.col ? e.coef * m(e.row, e.col)
                          : e.coef * (m(e.row, e.col) + m(e.col, e.row));
  }
  return acc;
}

void assemble_block(const DenseBlock& b, const Eigen::VectorXd& x, Eigen::MatrixXd& out) {
  out = b.C;
  for (size_t k = 0; k < b.vars.size(); ++k) out += x[b.vars[k]] * b.dense[k];
}

// Largest step length t with M + t*D psd, given the Cholesky factor of M.
double step_to_boundary(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& dir) {
  Eigen::MatrixXd w = llt.matrixL().solve(dir);
  Eigen::MatrixXd wt = llt.matrixL().solve(w.transpose());
  w = 0.5 * (wt + wt.transpose());  // L^-1 D L^-T, symmetrized against roundoff
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return kInf;
  return -1.0 / lmin;
}

struct IpOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;
  int iterations = 0;
  double primal_res = kNaN;
  double dual_res = kNaN;
  double relgap = kNaN;
  std::string message;
};

IpOutcome run_ip(const Eigen::VectorXd& c, const std::vector<DenseBlock>& blocks,
                 const SolverSettings& st) {
  const int n = static_cast<int>(c.size());
  const int nb = static_cast<int>(blocks.size());
  int total_side = 0;
  for (const DenseBlock& b : blocks) total_side += b.side;

  const double c_scale = 1.0 + c.lpNorm<Eigen::Infinity>();
  double cmat_scale = 1.0;
  double amat_scale = 1.0;
  for (const DenseBlock& b : blocks) {
    cmat_scale = std::max(cmat_scale, b.C.norm());
    for (const Eigen::MatrixXd& a : b.dense) amat_scale = std::max(amat_scale, a.norm());
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::MatrixXd> S(nb), Z(nb);
  for (int b = 0; b < nb; ++b) {
    double beta = 1.0 + blocks[b].C.norm();
    for (const Eigen::MatrixXd& a : blocks[b].dense) beta = std::max(beta, 1.0 + a.norm());
    S[b] = beta * Eigen::MatrixXd::Identity(blocks[b].side, blocks[b].side);
    Z[b] = S[b];
  }
  double z_init_norm = 0.0;
  for (int b = 0; b < nb; ++b) z_init_norm += Z[b].squaredNorm();
  z_init_norm = std::sqrt(z_init_norm);

  std::vector<Eigen::MatrixXd> Fd(nb), dS(nb), dZ(nb), dS_aff(nb), dZ_aff(nb), Rc(nb);
  std::vector<Eigen::LLT<Eigen::MatrixXd>> llt_S(nb), llt_Z(nb);
  Eigen::MatrixXd B(n, n);
  Eigen::VectorXd astar_z(n), rhs(n), dx(n), dx_aff(n);
  IpOutcome out;
  int stalls = 0;

  // Schur right-hand side for centrality target Rc:
  //   rhs_i = sum_b tr(A_{b,i} (S^-1 Rc - S^-1 Fd Z + Z)) - c_i.
  auto build_rhs = [&](Eigen::VectorXd& r) {
    r = -c;
    for (int b = 0; b < nb; ++b) {
      Eigen::MatrixXd g = llt_S[b].solve(Rc[b] - Fd[b] * Z[b]) + Z[b];
      const DenseBlock& blk = blocks[b];
      for (size_t k = 0; k < blk.vars.size(); ++k) {
        r[blk.vars[k]] += sym_trace_dot(blk.sparse[k], g);
      }
    }
  };

  // Back-substitution: dS = Fd + sum dx_i A_i, dZ = S^-1 (Rc - dS Z), symmetrized.
  auto build_directions = [&](const Eigen::VectorXd& step, std::vector<Eigen::MatrixXd>& ds,
                              std::vector<Eigen::MatrixXd>& dz) {
    for (int b = 0; b < nb; ++b) {
      const DenseBlock& blk = blocks[b];
      ds[b] = Fd[b];
      for (size_t k = 0; k < blk.vars.size(); ++k) ds[b] += step[blk.vars[k]] * blk.dense[k];
      Eigen::MatrixXd raw = llt_S[b].solve(Rc[b] - ds[b] * Z[b]);
      dz[b] = 0.5 * (raw + raw.transpose());
    }
  };

  for (int iter = 0; iter < st.max_iterations; ++iter) {
    out.iterations = iter;

    // Residuals, gap, convergence.
    double primal_res = 0.0;
    for (int b = 0; b < nb; ++b) {
      assemble_block(blocks[b], x, Fd[b]);
      Fd[b] -= S[b];
      primal_res = std::max(primal_res, Fd[b].norm() / (1.0 + blocks[b].C.norm()));
    }
    astar_z.setZero();
    double dobj = 0.0, gap = 0.0;
    for (int b = 0; b < nb; ++b) {
      const DenseBlock& blk = blocks[b];
      for (size_t k = 0; k < blk.vars.size(); ++k) {
        astar_z[blk.vars[k]] += sym_trace_dot(blk.sparse[k], Z[b]);
      }
      dobj -= blocks[b].C.cwiseProduct(Z[b]).sum();
      gap += S[b].cwiseProduct(Z[b]).sum();
    }
    double pobj = c.dot(x);
    double dual_res = (c - astar_z).lpNorm<Eigen::Infinity>() / c_scale;
    double relgap = gap / (1.0 + std::abs(pobj) + std::abs(dobj));
    double mu = gap / total_side;

    out.primal_res = primal_res;
    out.dual_res = dual_res;
    out.relgap = relgap;
    if (st.verbose) {
      std::ostringstream line;
      line << "iter " << iter << " pobj " << pobj << " dobj " << dobj << " pres " << primal_res
           << " dres " << dual_res << " relgap " << relgap;
      out.message = line.str();
    }

    if (primal_res <= st.tolerance && dual_res <= st.tolerance && relgap <= st.tolerance) {
      out.status = SolveStatus::Optimal;
      out.x = x;
      return out;
    }

    // Farkas-type infeasibility: Z psd diverging with A*(Z) ~ 0 and <C, Z> < 0
    // certifies that no x satisfies all blocks.
    double zn = 0.0;
    for (int b = 0; b < nb; ++b) zn += Z[b].squaredNorm();
    zn = std::sqrt(zn);
    if (zn > 100.0 * (1.0 + z_init_norm)) {
      double cz = -dobj / zn;  // <C, Z> / ||Z||
      double az = astar_z.lpNorm<Eigen::Infinity>() / zn;
      if (az <= 1e-8 * amat_scale && cz < -1e-8 * cmat_scale) {
        out.status = SolveStatus::Infeasible;
        out.message = "dual improving ray found (Farkas certificate)";
        return out;
      }
    }
    if (pobj < -1e10 * (c_scale + cmat_scale) && primal_res <= std::sqrt(st.tolerance)) {
      out.status = SolveStatus::Unbounded;
      out.message = "objective diverging below any bound along feasible iterates";
      return out;
    }

    // Factor the iterates; a tiny diagonal bump retries borderline cases.
    bool factored = true;
    for (int b = 0; b < nb && factored; ++b) {
      llt_S[b].compute(S[b]);
      if (llt_S[b].info() != Eigen::Success) {
        S[b].diagonal().array() += 1e-13 * (1.0 + S[b].trace() / blocks[b].side);
        llt_S[b].compute(S[b]);
      }
      llt_Z[b].compute(Z[b]);
      if (llt_Z[b].info() != Eigen::Success) {
        Z[b].diagonal().array() += 1e-13 * (1.0 + Z[b].trace() / blocks[b].side);
        llt_Z[b].compute(Z[b]);
      }
      factored = llt_S[b].info() == Eigen::Success && llt_Z[b].info() == Eigen::Success;
    }
    if (!factored) {
      out.message = "iterate left the cone (Cholesky breakdown)";
      return out;
    }

    // Schur complement B_ik = sum_b tr(A_i S^-1 A_k Z): symmetric positive
    // definite for independent A_i (each factor symmetric + cyclic trace).
    B.setZero();
    for (int b = 0; b < nb; ++b) {
      const DenseBlock& blk = blocks[b];
      for (size_t k = 0; k < blk.vars.size(); ++k) {
        Eigen::MatrixXd t = llt_S[b].solve(blk.dense[k]) * Z[b];
        for (size_t i = 0; i < blk.vars.size(); ++i) {
          if (blk.vars[i] > blk.vars[k]) continue;
          B(blk.vars[i], blk.vars[k]) += sym_trace_dot(blk.sparse[i], t);
        }
      }
    }
    B.triangularView<Eigen::StrictlyLower>() = B.transpose();

    Eigen::LLT<Eigen::MatrixXd> llt_B(B);
    double ridge = 1e-14 * (1.0 + B.trace() / std::max(1, n));
    for (int tries = 0; llt_B.info() != Eigen::Success && tries < 6; ++tries) {
      B.diagonal().array() += ridge;
      llt_B.compute(B);
      ridge *= 100.0;
    }
    if (llt_B.info() != Eigen::Success) {
      out.message = "Schur complement not positive definite (dependent constraint maps?)";
      return out;
    }

    // Predictor: pure Newton step toward complementarity zero.
    for (int b = 0; b < nb; ++b) Rc[b] = -S[b] * Z[b];
    build_rhs(rhs);
    dx_aff = llt_B.solve(rhs);
    build_directions(dx_aff, dS_aff, dZ_aff);

    double ap_aff = 1.0, ad_aff = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap_aff = std::min(ap_aff, step_to_boundary(llt_S[b], dS_aff[b]));
      ad_aff = std::min(ad_aff, step_to_boundary(llt_Z[b], dZ_aff[b]));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b) {
      mu_aff += (S[b] + ap_aff * dS_aff[b]).cwiseProduct(Z[b] + ad_aff * dZ_aff[b]).sum();
    }
    mu_aff = std::max(mu_aff / total_side, 0.0);
    double sigma = mu > 0.0 ? std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0) : 0.0;

    // Corrector with Mehrotra's second-order term.
    for (int b = 0; b < nb; ++b) {
      Rc[b] = sigma * mu * Eigen::MatrixXd::Identity(blocks[b].side, blocks[b].side) -
              S[b] * Z[b] - dS_aff[b] * dZ_aff[b];
    }
    build_rhs(rhs);
    dx = llt_B.solve(rhs);
    build_directions(dx, dS, dZ);

    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, 0.98 * step_to_boundary(llt_S[b], dS[b]));
      ad = std::min(ad, 0.98 * step_to_boundary(llt_Z[b], dZ[b]));
    }
    ap = std::min(ap, 1.0);
    ad = std::min(ad, 1.0);

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        out.message = "step lengths collapsed";
        break;
      }
    } else {
      stalls = 0;
    }

    x += ap * dx;
    for (int b = 0; b < nb; ++b) {
      S[b] += ap * dS[b];
      S[b] = (0.5 * (S[b] + S[b].transpose())).eval();
      Z[b] += ad * dZ[b];
      Z[b] = (0.5 * (Z[b] + Z[b].transpose())).eval();
    }
  }

  // Out of iterations: accept a clear Farkas certificate, otherwise be honest.
  double zn = 0.0, cz_raw = 0.0;
  for (int b = 0; b < nb; ++b) {
    zn += Z[b].squaredNorm();
    cz_raw += blocks[b].C.cwiseProduct(Z[b]).sum();
  }
  zn = std::sqrt(zn);
  astar_z.setZero();
  for (int b = 0; b < nb; ++b) {
    const DenseBlock& blk = blocks[b];
    for (size_t k = 0; k < blk.vars.size(); ++k) {
      astar_z[blk.vars[k]] += sym_trace_dot(blk.sparse[k], Z[b]);
    }
  }
  if (zn > 10.0 * (1.0 + z_init_norm) && astar_z.lpNorm<Eigen::Infinity>() / zn <= 1e-6 * amat_scale &&
      cz_raw / zn < -1e-6 * cmat_scale) {
    out.status = SolveStatus::Infeasible;
    out.message = "dual improving ray found at iteration limit";
    return out;
  }
  if (out.message.empty()) {
    std::ostringstream msg;
    msg << "no convergence in " << st.max_iterations << " iterations (primal res "
        << out.primal_res << ", dual res " << out.dual_res << ", relgap " << out.relgap << ")";
    out.message = msg.str();
  }
  out.status = SolveStatus::NumericalFailure;
  return out;
}

// Collects every scalar equation carried by zero-cone blocks into E x = h.
void gather_equalities(const ConicProblem& problem, Eigen::MatrixXd& e, Eigen::VectorXd& h) {
  struct Cell {
    double constant = 0.0;
    std::vector<std::pair<int, double>> coefs;
  };
  std::vector<Cell> rows;
  for (const ConeBlock& blk : problem.blocks()) {
    if (blk.kind != BlockKind::Zero) continue;
    std::map<std::pair<int, int>, Cell> cells;
    for (const BlockEntry& en : blk.entries) {
      Cell& cell = cells[{en.row, en.col}];
      if (en.var == ConicProblem::kConstant) {
        cell.constant += en.coef;
      } else {
        cell.coefs.emplace_back(en.var, en.coef);
      }
    }
    for (auto& [rc, cell] : cells) rows.push_back(std::move(cell));
  }
  e.setZero(static_cast<int>(rows.size()), problem.num_vars());
  h.setZero(static_cast<int>(rows.size()));
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    h[r] = -rows[r].constant;
    for (const auto& [var, coef] : rows[r].coefs) e(r, var) += coef;
  }
}

// Builds the dense block view of a PSD cone block under x = x0 + N z,
// dropping nothing: reduced maps keep full accuracy.
DenseBlock reduce_block(const ConeBlock& blk, const Eigen::VectorXd& x0,
                        const Eigen::MatrixXd& nullsp) {
  DenseBlock db;
  db.side = blk.side;
  db.C = Eigen::MatrixXd::Zero(blk.side, blk.side);
  std::vector<Eigen::MatrixXd> maps(static_cast<size_t>(nullsp.cols()),
                                    Eigen::MatrixXd::Zero(blk.side, blk.side));
  auto deposit = [&](Eigen::MatrixXd& m, int r, int c, double v) {
    m(r, c) += v;
    if (r != c) m(c, r) += v;
  };
  for (const BlockEntry& en : blk.entries) {
    if (en.var == ConicProblem::kConstant) {
      deposit(db.C, en.row, en.col, en.coef);
    } else {
      deposit(db.C, en.row, en.col, en.coef * x0[en.var]);
      for (int j = 0; j < nullsp.cols(); ++j) {
        if (nullsp(en.var, j) != 0.0) {
          deposit(maps[static_cast<size_t>(j)], en.row, en.col, en.coef * nullsp(en.var, j));
        }
      }
    }
  }
  for (int j = 0; j < nullsp.cols(); ++j) {
    const Eigen::MatrixXd& a = maps[static_cast<size_t>(j)];
    if (a.cwiseAbs().maxCoeff() == 0.0) continue;
    db.vars.push_back(j);
    db.dense.push_back(a);
    std::vector<BlockEntry> sp;
    for (int r = 0; r < blk.side; ++r) {
      for (int c = r; c < blk.side; ++c) {
        if (a(r, c) != 0.0) sp.push_back(BlockEntry{r, c, j, a(r, c)});
      }
    }
    db.sparse.push_back(std::move(sp));
  }
  return db;
}

// Identity-substitution view (no zero blocks): keeps original sparsity.
DenseBlock direct_block(const ConeBlock& blk) {
  DenseBlock db;
  db.side = blk.side;
  db.C = Eigen::MatrixXd::Zero(blk.side, blk.side);
  std::map<int, std::vector<BlockEntry>> per_var;
  for (const BlockEntry& en : blk.entries) {
    if (en.var == ConicProblem::kConstant) {
      db.C(en.row, en.col) += en.coef;
      if (en.row != en.col) db.C(en.col, en.row) += en.coef;
    } else {
      per_var[en.var].push_back(en);
    }
  }
  for (auto& [var, entries] : per_var) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(blk.side, blk.side);
    for (const BlockEntry& en : entries) {
      a(en.row, en.col) += en.coef;
      if (en.row != en.col) a(en.col, en.row) += en.coef;
    }
    db.vars.push_back(var);
    db.dense.push_back(std::move(a));
    db.sparse.push_back(std::move(entries));
  }
  return db;
}

}  // namespace

ConicSolution solve(const ConicProblem& problem, const SolverSettings& settings) {
  const int n = problem.num_vars();
  Eigen::VectorXd c =
      Eigen::Map<const Eigen::VectorXd>(problem.objective().data(), n);

  ConicSolution sol;

  // Stage 1: eliminate zero-cone blocks via x = x0 + N z.
  Eigen::MatrixXd emat;
  Eigen::VectorXd h;
  gather_equalities(problem, emat, h);

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd nullsp;
  bool reduced = emat.rows() > 0;
  if (reduced) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(emat, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    x0 = svd.solve(h);
    double resid = (emat * x0 - h).lpNorm<Eigen::Infinity>();
    if (resid > 1e-9 * (1.0 + h.lpNorm<Eigen::Infinity>())) {
      sol.status = SolveStatus::Infeasible;
      sol.message = "equality (zero-cone) constraints are inconsistent";
      return sol;
    }
    nullsp = svd.matrixV().rightCols(n - svd.rank());
  }
  const int nred = reduced ? static_cast<int>(nullsp.cols()) : n;

  Eigen::VectorXd cred = reduced ? Eigen::VectorXd(nullsp.transpose() * c) : c;

  // Stage 2: dense views of the PSD blocks, with variable-free ones checked
  // up front by eigenvalue and dropped.
  std::vector<DenseBlock> blocks;
  for (size_t bi = 0; bi < problem.blocks().size(); ++bi) {
    const ConeBlock& blk = problem.blocks()[bi];
    if (blk.kind != BlockKind::PSD) continue;
    DenseBlock db = reduced ? reduce_block(blk, x0, nullsp) : direct_block(blk);
    if (db.vars.empty()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(db.C, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -10.0 * settings.tolerance * (1.0 + db.C.norm())) {
        sol.status = SolveStatus::Infeasible;
        std::ostringstream msg;
        msg << "block " << bi + 1 << " is pinned and not positive semidefinite (min eigenvalue "
            << es.eigenvalues().minCoeff() << ")";
        sol.message = msg.str();
        return sol;
      }
      continue;  // constant and satisfied: no effect on the iteration
    }
    blocks.push_back(std::move(db));
  }

  // Stage 3: degenerate shapes that need no iteration.
  Eigen::VectorXd xfull(n);
  if (nred == 0 || blocks.empty()) {
    if (nred > 0 && cred.lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + c.lpNorm<Eigen::Infinity>())) {
      sol.status = SolveStatus::Unbounded;
      sol.message = "free variables remain with a nonconstant objective and no psd block";
      return sol;
    }
    xfull = x0;  // z = 0
    sol.iterations = 0;
  } else {
    IpOutcome ip = run_ip(cred, blocks, settings);
    sol.iterations = ip.iterations;
    sol.primal_residual = ip.primal_res;
    sol.dual_residual = ip.dual_res;
    sol.duality_gap = ip.relgap;
    sol.message = ip.message;
    if (ip.status != SolveStatus::Optimal) {
      sol.status = ip.status;
      return sol;
    }
    xfull = reduced ? Eigen::VectorXd(x0 + nullsp * ip.x) : ip.x;
  }

  // Stage 4: self-validation against the original problem. A failed recheck
  // must surface as a failure, not as a quietly wrong "optimal".
  for (size_t bi = 0; bi < problem.blocks().size(); ++bi) {
    const ConeBlock& blk = problem.blocks()[bi];
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(blk.side, blk.side);
    for (const BlockEntry& en : blk.entries) {
      double v = en.var == ConicProblem::kConstant ? en.coef : en.coef * xfull[en.var];
      s(en.row, en.col) += v;
      if (en.row != en.col) s(en.col, en.row) += v;
    }
    if (blk.kind == BlockKind::PSD) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -10.0 * settings.tolerance) {
        sol.status = SolveStatus::NumericalFailure;
        std::ostringstream msg;
        msg << "self-validation failed: block " << bi + 1 << " min eigenvalue "
            << es.eigenvalues().minCoeff();
        sol.message = msg.str();
        return sol;
      }
    } else if (s.cwiseAbs().maxCoeff() > 1e-6) {
      sol.status = SolveStatus::NumericalFailure;
      std::ostringstream msg;
      msg << "self-validation failed: zero-cone block " << bi + 1 << " residual "
          << s.cwiseAbs().maxCoeff();
      sol.message = msg.str();
      return sol;
    }
  }

  sol.status = SolveStatus::Optimal;
  sol.x.assign(xfull.data(), xfull.data() + n);
  sol.objective = c.dot(xfull) + problem.objective_offset();
  return sol;
}

}  // namespace momsos
