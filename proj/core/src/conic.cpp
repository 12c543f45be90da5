#include "momsos/conic.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace momsos {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

ConicProblem::ConicProblem(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("ConicProblem: negative variable count");
  objective_.assign(static_cast<size_t>(num_vars), 0.0);
}

int ConicProblem::add_block(BlockKind kind, int side) {
  if (side <= 0) throw std::invalid_argument("ConicProblem::add_block: side must be positive");
  blocks_.push_back(ConeBlock{kind, side, {}});
  return static_cast<int>(blocks_.size()) - 1;
}

void ConicProblem::add_entry(int block, int row, int col, int var, double coef) {
  if (block < 0 || block >= static_cast<int>(blocks_.size())) {
    throw std::invalid_argument("ConicProblem::add_entry: block index out of range");
  }
  ConeBlock& b = blocks_[static_cast<size_t>(block)];
  if (row < 0 || row >= b.side || col < 0 || col >= b.side) {
    throw std::invalid_argument("ConicProblem::add_entry: matrix position out of range");
  }
  if (var < kConstant || var >= num_vars_) {
    throw std::invalid_argument("ConicProblem::add_entry: variable index out of range");
  }
  if (coef == 0.0) return;
  if (row > col) std::swap(row, col);
  b.entries.push_back(BlockEntry{row, col, var, coef});
}

void ConicProblem::set_objective(int var, double coef) {
  if (var < 0 || var >= num_vars_) {
    throw std::invalid_argument("ConicProblem::set_objective: variable index out of range");
  }
  objective_[static_cast<size_t>(var)] = coef;
}

void ConicProblem::add_objective(int var, double coef) {
  if (var < 0 || var >= num_vars_) {
    throw std::invalid_argument("ConicProblem::add_objective: variable index out of range");
  }
  objective_[static_cast<size_t>(var)] += coef;
}

void ConicProblem::dump(std::ostream& os) const {
  os << std::setprecision(17);
  os << "sdp 1\n";
  os << "vars " << num_vars_ << "\n";
  os << "offset " << objective_offset_ << "\n";
  for (int i = 0; i < num_vars_; ++i) {
    if (objective_[static_cast<size_t>(i)] != 0.0) {
      os << "obj " << i + 1 << " " << objective_[static_cast<size_t>(i)] << "\n";
    }
  }
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const ConeBlock& blk = blocks_[b];
    os << "block " << b + 1 << " " << (blk.kind == BlockKind::PSD ? "psd" : "zero") << " "
       << blk.side << "\n";
  }
  for (size_t b = 0; b < blocks_.size(); ++b) {
    for (const BlockEntry& e : blocks_[b].entries) {
      os << "ent " << b + 1 << " " << e.row + 1 << " " << e.col + 1 << " " << e.var + 1 << " "
         << e.coef << "\n";
    }
  }
}

}  // namespace momsos
