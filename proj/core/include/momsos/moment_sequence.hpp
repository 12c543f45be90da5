#pragma once

#include <span>
#include <vector>

#include "momsos/multi_index.hpp"
#include "momsos/polynomial.hpp"

namespace momsos {

/// Truncated moment sequence: one value phi_a per monomial x^a with
/// |a| <= max_degree, laid out in graded-lex basis order. Reading a moment
/// outside the stored range is a hard error rather than an implicit zero --
/// a silent zero would corrupt shifted sequences without any visible symptom.
class MomentSequence {
 public:
  MomentSequence(int dimension, int max_degree);

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  size_t size() const { return values_.size(); }

  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }

  double at(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, double value);

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Moments of the Dirac measure at x: phi_a = x^a.
  static MomentSequence atomic(std::span<const double> x, int max_degree);

 private:
  int dimension_;
  int max_degree_;
  std::vector<double> values_;
};

/// Riesz functional: phi(f) = sum_a f_a phi_a. Requires deg f <= phi's range.
double riesz_apply(const MomentSequence& phi, const Polynomial& f);

/// Shifted sequence (g . phi)_a = sum_g g_gamma phi_{a+gamma}, truncated to
/// degree max_degree(phi) - deg(g). The shift consumes range: asking for more
/// than that is the out-of-range hard error above.
MomentSequence shift_sequence(const MomentSequence& phi, const Polynomial& g);

}  // namespace momsos
