#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "momsos/conic.hpp"
#include "momsos/moment_matrix.hpp"

using momsos::BlockKind;
using momsos::ConicProblem;
using momsos::ConicSolution;
using momsos::SolveStatus;

namespace {

// min x  s.t.  [[1, x], [x, 1]] psd  ->  x* = -1.
ConicProblem arrow_problem() {
  ConicProblem p(1);
  const int b = p.add_block(BlockKind::PSD, 2);
  p.add_entry(b, 0, 0, ConicProblem::kConstant, 1.0);
  p.add_entry(b, 1, 1, ConicProblem::kConstant, 1.0);
  p.add_entry(b, 0, 1, 0, 1.0);
  p.set_objective(0, 1.0);
  return p;
}

}  // namespace

TEST_CASE("2x2 correlation block: min and max of the off-diagonal") {
  const ConicSolution lo = momsos::solve(arrow_problem());
  REQUIRE(lo.status == SolveStatus::Optimal);
  CHECK(lo.objective == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(lo.x[0] == doctest::Approx(-1.0).epsilon(1e-7));

  ConicProblem hi = arrow_problem();
  hi.set_objective(0, -1.0);  // maximize x
  const ConicSolution s = momsos::solve(hi);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("affine 1x1 block min x s.t. x >= 2") {
  ConicProblem p(1);
  const int b = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b, 0, 0, 0, 1.0);
  p.add_entry(b, 0, 0, ConicProblem::kConstant, -2.0);
  p.set_objective(0, 1.0);
  p.set_objective_offset(0.25);
  const ConicSolution s = momsos::solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(s.objective == doctest::Approx(2.25).epsilon(1e-6));  // offset included
}

TEST_CASE("zero block pins variables by elimination") {
  // x1 = 0.3 (zero block); minimize x2 with x2 - x1 >= 0.
  ConicProblem p(2);
  const int z = p.add_block(BlockKind::Zero, 1);
  p.add_entry(z, 0, 0, 0, 1.0);
  p.add_entry(z, 0, 0, ConicProblem::kConstant, -0.3);
  const int b = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b, 0, 0, 1, 1.0);
  p.add_entry(b, 0, 0, 0, -1.0);
  p.set_objective(1, 1.0);
  const ConicSolution s = momsos::solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(s.x[1] == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("pure equality problem solves without any PSD block") {
  ConicProblem p(2);
  const int z = p.add_block(BlockKind::Zero, 2);
  p.add_entry(z, 0, 0, 0, 1.0);
  p.add_entry(z, 0, 0, ConicProblem::kConstant, -1.5);
  p.add_entry(z, 1, 1, 0, 1.0);
  p.add_entry(z, 1, 1, 1, 1.0);
  p.add_entry(z, 1, 1, ConicProblem::kConstant, -2.0);  // x1 + x2 = 2
  p.set_objective(0, 1.0);
  p.set_objective(1, 1.0);
  const ConicSolution s = momsos::solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(s.x[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("inconsistent equalities are infeasible") {
  ConicProblem p(1);
  const int z = p.add_block(BlockKind::Zero, 2);
  p.add_entry(z, 0, 0, 0, 1.0);
  p.add_entry(z, 0, 0, ConicProblem::kConstant, -1.0);  // x = 1
  p.add_entry(z, 1, 1, 0, 1.0);
  p.add_entry(z, 1, 1, ConicProblem::kConstant, -2.0);  // x = 2
  const ConicSolution s = momsos::solve(p);
  CHECK(s.status == SolveStatus::Infeasible);
}

TEST_CASE("variable-free negative block is infeasible up front") {
  ConicProblem p(1);
  const int b = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b, 0, 0, ConicProblem::kConstant, -1.0);  // [-1] psd, no variable
  const int c = p.add_block(BlockKind::PSD, 1);
  p.add_entry(c, 0, 0, 0, 1.0);
  p.set_objective(0, 1.0);
  const ConicSolution s = momsos::solve(p);
  CHECK(s.status == SolveStatus::Infeasible);
}

TEST_CASE("conflicting one-sided blocks are infeasible (Farkas)") {
  // x - 1 >= 0 and -x >= 0 cannot hold together.
  ConicProblem p(1);
  const int b1 = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b1, 0, 0, 0, 1.0);
  p.add_entry(b1, 0, 0, ConicProblem::kConstant, -1.0);
  const int b2 = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b2, 0, 0, 0, -1.0);
  p.set_objective(0, 1.0);
  const ConicSolution s = momsos::solve(p);
  CHECK(s.status == SolveStatus::Infeasible);
}

TEST_CASE("free descent direction is unbounded") {
  // min -x s.t. x >= 0: objective decreases without bound.
  ConicProblem p(1);
  const int b = p.add_block(BlockKind::PSD, 1);
  p.add_entry(b, 0, 0, 0, 1.0);
  p.set_objective(0, -1.0);
  const ConicSolution s = momsos::solve(p);
  CHECK(s.status == SolveStatus::Unbounded);
}

TEST_CASE("unconstrained variable after elimination is unbounded") {
  ConicProblem p(2);
  const int z = p.add_block(BlockKind::Zero, 1);
  p.add_entry(z, 0, 0, 0, 1.0);
  p.add_entry(z, 0, 0, ConicProblem::kConstant, -1.0);  // x1 = 1, x2 free
  p.set_objective(1, 1.0);
  const ConicSolution s = momsos::solve(p);
  CHECK(s.status == SolveStatus::Unbounded);
}

TEST_CASE("solves are deterministic") {
  const ConicSolution a = momsos::solve(arrow_problem());
  const ConicSolution b = momsos::solve(arrow_problem());
  REQUIRE(a.status == SolveStatus::Optimal);
  REQUIRE(b.status == SolveStatus::Optimal);
  CHECK(a.objective == b.objective);  // same code path, bit-identical
  CHECK(a.x[0] == b.x[0]);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("solution satisfies its own blocks within the validation margin") {
  // Self-validation promises every PSD block at lambda_min >= -10 * tolerance.
  const momsos::SolverSettings settings;  // tolerance 1e-8
  const ConicSolution s = momsos::solve(arrow_problem(), settings);
  REQUIRE(s.status == SolveStatus::Optimal);
  Eigen::MatrixXd m(2, 2);
  m << 1.0, s.x[0], s.x[0], 1.0;
  CHECK(momsos::min_eigenvalue(m) >= -10 * settings.tolerance);
}

TEST_CASE("entry accumulation matches a single combined entry") {
  ConicProblem split(1);
  int b = split.add_block(BlockKind::PSD, 2);
  split.add_entry(b, 0, 0, ConicProblem::kConstant, 1.0);
  split.add_entry(b, 1, 1, ConicProblem::kConstant, 1.0);
  split.add_entry(b, 0, 1, 0, 0.25);
  split.add_entry(b, 1, 0, 0, 0.75);  // same cell, mirrored; accumulates to 1.0
  split.set_objective(0, 1.0);
  const ConicSolution a = momsos::solve(split);
  const ConicSolution c = momsos::solve(arrow_problem());
  REQUIRE(a.status == SolveStatus::Optimal);
  CHECK(a.objective == doctest::Approx(c.objective).epsilon(1e-9));
}

TEST_CASE("problem validation throws on malformed input") {
  ConicProblem p(1);
  const int b = p.add_block(BlockKind::PSD, 2);
  CHECK_THROWS_AS(p.add_entry(b + 7, 0, 0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p.add_entry(b, -1, 0, 0, 1.0), std::invalid_argument);   // negative row
  CHECK_THROWS_AS(p.add_entry(b, 0, 2, 0, 1.0), std::invalid_argument);   // beyond side
  CHECK_THROWS_AS(p.add_entry(b, 0, 0, 5, 1.0), std::invalid_argument);   // no such var
  CHECK_THROWS_AS(p.set_objective(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)p.add_block(BlockKind::PSD, 0), std::invalid_argument);
  CHECK_THROWS_AS(ConicProblem(-1), std::invalid_argument);
}

TEST_CASE("dump format is the documented sparse triplet text") {
  ConicProblem p = arrow_problem();
  p.set_objective_offset(0.5);
  std::ostringstream os;
  p.dump(os);
  const std::string text = os.str();
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() >= 6);
  CHECK(lines[0] == "sdp 1");
  CHECK(lines[1] == "vars 1");
  CHECK(lines[2].rfind("offset 0.5", 0) == 0);
  CHECK(lines[3] == "obj 1 1");
  CHECK(lines[4] == "block 1 psd 2");
  // one line per nonzero: block row col var coef; var 0 is the constant part
  CHECK(lines[5] == "ent 1 1 1 0 1");
  CHECK(lines[6] == "ent 1 2 2 0 1");
  CHECK(lines[7] == "ent 1 1 2 1 1");
}
