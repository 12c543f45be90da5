#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momsos/polynomial.hpp"

namespace momsos {

/// A polynomial optimization problem: minimize `objective` over
/// Omega = { x : g_j(x) >= 0 for all j }, with Omega contained in the
/// centered ball of radius `radius` (the radius is user-supplied; it is not
/// inferred). Preprocessing rescales to the unit ball and appends the
/// redundant ball constraint 1 - ||x||^2 unless an equal constraint already
/// exists. After preprocessing all polynomials live in scaled coordinates;
/// points map back to original coordinates as x = radius * x_scaled.
struct Instance {
  int dimension = 0;
  double radius = 1.0;
  Polynomial objective{1};
  std::vector<Polynomial> constraints;
  bool preprocessed = false;
  int ball_index = -1;  // position of 1 - ||x||^2 once preprocessed

  // Optional regression metadata carried through from instance files.
  std::string name;
  std::optional<double> expected_value;
  std::optional<std::vector<double>> expected_minimizer;
};

/// The ball polynomial 1 - ||x||^2 in dimension d.
Polynomial ball_constraint(int dimension);

/// Throws std::invalid_argument when fields are inconsistent (dimension
/// mismatches, nonpositive or non-finite radius, zero constraint polynomial).
void validate_instance(const Instance& inst);

/// Rescales by `radius`, appends the ball constraint (skipped when a
/// constraint already equals it coefficientwise within 1e-12), and marks the
/// instance preprocessed. Idempotent: a preprocessed instance is returned
/// unchanged.
Instance preprocess(const Instance& inst);

/// Smallest admissible relaxation order:
/// max(ceil(deg f / 2), max_j ceil(deg g_j / 2)). Requires preprocessed.
int n_min(const Instance& inst);

/// radius * x_scaled, the back-map to original coordinates.
std::vector<double> to_original_coordinates(const Instance& inst,
                                            const std::vector<double>& x_scaled);

}  // namespace momsos
