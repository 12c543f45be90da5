#include "momsos/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace momsos {

Polynomial ball_constraint(int dimension) {
  Polynomial g = Polynomial::constant(dimension, 1.0);
  for (int i = 0; i < dimension; ++i) {
    Polynomial xi = Polynomial::variable(dimension, i);
    g = g - xi * xi;
  }
  return g;
}

void validate_instance(const Instance& inst) {
  if (inst.dimension < 1) {
    throw std::invalid_argument("instance: dimension must be at least 1");
  }
  if (!std::isfinite(inst.radius) || inst.radius <= 0.0) {
    throw std::invalid_argument("instance: radius must be finite and positive");
  }
  if (inst.objective.dimension() != inst.dimension) {
    throw std::invalid_argument("instance: objective dimension mismatch");
  }
  for (size_t j = 0; j < inst.constraints.size(); ++j) {
    if (inst.constraints[j].dimension() != inst.dimension) {
      throw std::invalid_argument("instance: constraint " + std::to_string(j + 1) +
                                  " dimension mismatch");
    }
    if (inst.constraints[j].is_zero()) {
      throw std::invalid_argument("instance: constraint " + std::to_string(j + 1) +
                                  " is the zero polynomial");
    }
  }
  if (inst.expected_minimizer &&
      static_cast<int>(inst.expected_minimizer->size()) != inst.dimension) {
    throw std::invalid_argument("instance: expected_minimizer length mismatch");
  }
}

Instance preprocess(const Instance& inst) {
  validate_instance(inst);
  if (inst.preprocessed) return inst;

  Instance out = inst;
  out.objective = inst.objective.scale_substitute(inst.radius);
  out.constraints.clear();
  Polynomial ball = ball_constraint(inst.dimension);
  out.ball_index = -1;
  for (const Polynomial& g : inst.constraints) {
    Polynomial scaled = g.scale_substitute(inst.radius);
    if (out.ball_index < 0 && scaled.coefficient_distance(ball) <= 1e-12) {
      out.ball_index = static_cast<int>(out.constraints.size());
    }
    out.constraints.push_back(std::move(scaled));
  }
  if (out.ball_index < 0) {
    out.ball_index = static_cast<int>(out.constraints.size());
    out.constraints.push_back(ball);
  }
  out.preprocessed = true;
  return out;
}

int n_min(const Instance& inst) {
  if (!inst.preprocessed) throw std::invalid_argument("n_min: instance not preprocessed");
  // ceil(deg/2) via integer arithmetic; the zero polynomial contributes 0.
  auto half_up = [](int deg) { return (deg + 1) / 2; };
  int n = half_up(inst.objective.degree_or(0));
  for (const Polynomial& g : inst.constraints) n = std::max(n, half_up(*g.degree()));
  return n;
}

std::vector<double> to_original_coordinates(const Instance& inst,
                                            const std::vector<double>& x_scaled) {
  std::vector<double> x(x_scaled.size());
  for (size_t i = 0; i < x.size(); ++i) x[i] = inst.radius * x_scaled[i];
  return x;
}

}  // namespace momsos
