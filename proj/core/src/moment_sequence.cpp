#include "momsos/moment_sequence.hpp"

#include <stdexcept>
#include <string>

namespace momsos {

MomentSequence::MomentSequence(int dimension, int max_degree)
    : dimension_(dimension), max_degree_(max_degree) {
  if (dimension < 1) throw std::invalid_argument("MomentSequence: dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("MomentSequence: max_degree must be >= 0");
  values_.assign(cached_basis(dimension, max_degree).size(), 0.0);
}

double MomentSequence::at(const MultiIndex& alpha) const {
  const MonomialBasis& basis = cached_basis(dimension_, max_degree_);
  int idx = basis.index_of(alpha);
  if (idx < 0) {
    throw std::invalid_argument("MomentSequence::at: moment of degree " +
                                std::to_string(alpha.total_degree()) +
                                " requested from a sequence truncated at degree " +
                                std::to_string(max_degree_));
  }
  return values_[static_cast<size_t>(idx)];
}

void MomentSequence::set(const MultiIndex& alpha, double value) {
  const MonomialBasis& basis = cached_basis(dimension_, max_degree_);
  int idx = basis.index_of(alpha);
  if (idx < 0) {
    throw std::invalid_argument("MomentSequence::set: multi-index outside stored range");
  }
  values_[static_cast<size_t>(idx)] = value;
}

MomentSequence MomentSequence::atomic(std::span<const double> x, int max_degree) {
  const int d = static_cast<int>(x.size());
  MomentSequence phi(d, max_degree);
  const MonomialBasis& basis = cached_basis(d, max_degree);
  for (size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& a = basis.at(i);
    double m = 1.0;
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < a.exps[j]; ++k) m *= x[j];
    }
    phi[i] = m;
  }
  return phi;
}

double riesz_apply(const MomentSequence& phi, const Polynomial& f) {
  if (f.dimension() != phi.dimension()) {
    throw std::invalid_argument("riesz_apply: dimension mismatch");
  }
  double acc = 0.0;
  for (const auto& [alpha, coef] : f.terms()) acc += coef * phi.at(alpha);
  return acc;
}

MomentSequence shift_sequence(const MomentSequence& phi, const Polynomial& g) {
  if (g.dimension() != phi.dimension()) {
    throw std::invalid_argument("shift_sequence: dimension mismatch");
  }
  if (g.is_zero()) {
    throw std::invalid_argument("shift_sequence: shifting by the zero polynomial");
  }
  const int out_degree = phi.max_degree() - *g.degree();
  if (out_degree < 0) {
    throw std::invalid_argument("shift_sequence: deg(g) exceeds the stored moment range");
  }
  MomentSequence out(phi.dimension(), out_degree);
  const MonomialBasis& basis = cached_basis(phi.dimension(), out_degree);
  for (size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& a = basis.at(i);
    double acc = 0.0;
    for (const auto& [gamma, coef] : g.terms()) acc += coef * phi.at(a + gamma);
    out[i] = acc;
  }
  return out;
}

}  // namespace momsos
