#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace momsos {

enum class BlockKind { PSD, Zero };

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(SolveStatus status);

/// One nonzero of a block's affine map: coefficient of variable `var` at
/// matrix position (row, col), stored upper-triangle (row <= col) and
/// mirrored implicitly. var == ConicProblem::kConstant marks the constant
/// part of the block.
struct BlockEntry {
  int row;
  int col;
  int var;
  double coef;
};

struct ConeBlock {
  BlockKind kind;
  int side;
  std::vector<BlockEntry> entries;
};

/// Linear conic program in LMI form:
///
///   minimize    c'x + offset
///   subject to  S_b(x) = C_b + sum_i x_i A_{b,i}   for each block b,
///               S_b(x) psd   (PSD block)  or  S_b(x) = 0  (Zero block).
///
/// Blocks are sparse triplet maps from the decision vector to symmetric
/// matrices. Equalities ride in zero-cone blocks so moment relaxations and
/// Gram feasibility problems share one shape.
class ConicProblem {
 public:
  static constexpr int kConstant = -1;

  explicit ConicProblem(int num_vars);

  int num_vars() const { return num_vars_; }

  /// Appends a block, returns its index.
  int add_block(BlockKind kind, int side);

  /// Adds one affine-map nonzero; (row, col) is normalized to row <= col.
  /// Repeated (block, row, col, var) entries accumulate.
  void add_entry(int block, int row, int col, int var, double coef);

  void set_objective(int var, double coef);
  void add_objective(int var, double coef);
  void set_objective_offset(double value) { objective_offset_ = value; }
  double objective_offset() const { return objective_offset_; }

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<ConeBlock>& blocks() const { return blocks_; }

  /// Debug dump, one line per nonzero. Format (1-based indices):
  ///   sdp 1
  ///   vars <N>
  ///   offset <value>
  ///   obj <var> <coef>
  ///   block <idx> <psd|zero> <side>
  ///   ent <block> <row> <col> <var> <coef>
  /// where var 0 denotes the constant part and rows satisfy row <= col.
  void dump(std::ostream& os) const;

 private:
  int num_vars_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  std::vector<ConeBlock> blocks_;
};

struct SolverSettings {
  double tolerance = 1e-8;  // feasibility residuals and relative gap
  int max_iterations = 200;
  bool verbose = false;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<double> x;  // empty unless status == Optimal
  double objective = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  std::string message;  // diagnostics, mainly for non-optimal statuses
};

/// Primal-dual interior-point solve. Zero-cone blocks are eliminated exactly
/// (nullspace substitution) before iterating on the PSD blocks. Optimal
/// results are self-validated by recomputing block eigenvalues from x; a
/// failed recheck is reported as NumericalFailure, never as Optimal.
ConicSolution solve(const ConicProblem& problem, const SolverSettings& settings = {});

}  // namespace momsos
