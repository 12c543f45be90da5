#include "momsos/polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace momsos {

Polynomial Polynomial::constant(int dimension, double c) {
  Polynomial p(dimension);
  p.add_term(MultiIndex::zeros(dimension), c);
  p.cleanup();
  return p;
}

Polynomial Polynomial::variable(int dimension, int i) {
  if (i < 0 || i >= dimension) {
    throw std::invalid_argument("Polynomial::variable: index " + std::to_string(i) +
                                " out of range for dimension " + std::to_string(dimension));
  }
  MultiIndex a = MultiIndex::zeros(dimension);
  a.exps[i] = 1;
  return monomial(a, 1.0);
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, double coef) {
  Polynomial p(alpha.dimension());
  p.add_term(alpha, coef);
  p.cleanup();
  return p;
}

Polynomial Polynomial::from_terms(
    int dimension, const std::vector<std::pair<std::vector<int>, double>>& terms) {
  Polynomial p(dimension);
  for (const auto& [exps, coef] : terms) {
    if (static_cast<int>(exps.size()) != dimension) {
      throw std::invalid_argument("Polynomial::from_terms: exponent tuple has " +
                                  std::to_string(exps.size()) + " entries, expected " +
                                  std::to_string(dimension));
    }
    for (int e : exps) {
      if (e < 0) throw std::invalid_argument("Polynomial::from_terms: negative exponent");
    }
    p.add_term(MultiIndex{exps}, coef);
  }
  p.cleanup();
  return p;
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  // Terms are graded-lex ordered, so the last term carries the total degree.
  return terms_.rbegin()->first.total_degree();
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw std::invalid_argument("Polynomial::eval: point has " + std::to_string(x.size()) +
                                " coordinates, expected " + std::to_string(dimension_));
  }
  double acc = 0.0;
  for (const auto& [alpha, coef] : terms_) {
    double m = coef;
    for (int i = 0; i < dimension_; ++i) {
      for (int k = 0; k < alpha.exps[i]; ++k) m *= x[i];
    }
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= dimension_) {
    throw std::invalid_argument("Polynomial::derivative: index out of range");
  }
  Polynomial out(dimension_);
  for (const auto& [alpha, coef] : terms_) {
    if (alpha.exps[i] == 0) continue;
    MultiIndex b = alpha;
    b.exps[i] -= 1;
    out.add_term(b, coef * alpha.exps[i]);
  }
  out.cleanup();
  return out;
}

Polynomial Polynomial::scale_substitute(double radius) const {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("Polynomial::scale_substitute: radius must be positive");
  }
  Polynomial out(dimension_);
  for (const auto& [alpha, coef] : terms_) {
    out.add_term(alpha, coef * std::pow(radius, alpha.total_degree()));
  }
  out.cleanup();
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (dimension_ != other.dimension_) {
    throw std::invalid_argument("Polynomial::operator+: dimension mismatch");
  }
  Polynomial out = *this;
  for (const auto& [alpha, coef] : other.terms_) out.add_term(alpha, coef);
  out.cleanup();
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  if (dimension_ != other.dimension_) {
    throw std::invalid_argument("Polynomial::operator-: dimension mismatch");
  }
  Polynomial out = *this;
  for (const auto& [alpha, coef] : other.terms_) out.add_term(alpha, -coef);
  out.cleanup();
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (dimension_ != other.dimension_) {
    throw std::invalid_argument("Polynomial::operator*: dimension mismatch");
  }
  Polynomial out(dimension_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      out.add_term(a + b, ca * cb);
    }
  }
  out.cleanup();
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(dimension_);
  for (const auto& [alpha, coef] : terms_) out.add_term(alpha, coef * s);
  out.cleanup();
  return out;
}

double Polynomial::coefficient_distance(const Polynomial& other) const {
  if (dimension_ != other.dimension_) {
    throw std::invalid_argument("Polynomial::coefficient_distance: dimension mismatch");
  }
  double dist = 0.0;
  for (const auto& [alpha, coef] : terms_) {
    dist = std::max(dist, std::abs(coef - other.coefficient(alpha)));
  }
  for (const auto& [alpha, coef] : other.terms_) {
    dist = std::max(dist, std::abs(coef - coefficient(alpha)));
  }
  return dist;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, coef] : terms_) {
    if (!first) os << (coef >= 0 ? " + " : " - ");
    else if (coef < 0) os << "-";
    first = false;
    os << std::abs(coef);
    for (int i = 0; i < dimension_; ++i) {
      if (alpha.exps[i] == 0) continue;
      os << "*x" << i + 1;
      if (alpha.exps[i] > 1) os << "^" << alpha.exps[i];
    }
  }
  return os.str();
}

void Polynomial::add_term(const MultiIndex& alpha, double coef) {
  if (alpha.dimension() != dimension_) {
    throw std::invalid_argument("Polynomial::add_term: multi-index dimension mismatch");
  }
  auto [it, inserted] = terms_.try_emplace(alpha, coef);
  if (!inserted) it->second += coef;
}

void Polynomial::cleanup() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kCoefficientCleanup) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

PolyMatrix::PolyMatrix(int rows, int cols, int dimension)
    : rows_(rows), cols_(cols), dimension_(dimension) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("PolyMatrix: rows and cols must be positive");
  }
  entries_.assign(static_cast<size_t>(rows) * cols, Polynomial::zero(dimension));
}

Polynomial& PolyMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw std::invalid_argument("PolyMatrix::at: index out of range");
  }
  return entries_[static_cast<size_t>(r) * cols_ + c];
}

const Polynomial& PolyMatrix::at(int r, int c) const {
  return const_cast<PolyMatrix*>(this)->at(r, c);
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r) {
    for (int c = r + 1; c < cols_; ++c) {
      if (!(at(r, c) == at(c, r))) return false;
    }
  }
  return true;
}

std::vector<double> PolyMatrix::eval(std::span<const double> x) const {
  std::vector<double> out(static_cast<size_t>(rows_) * cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      out[static_cast<size_t>(r) * cols_ + c] = at(r, c).eval(x);
    }
  }
  return out;
}

int PolyMatrix::max_entry_degree() const {
  int deg = 0;
  for (const auto& p : entries_) deg = std::max(deg, p.degree_or(0));
  return deg;
}

PolyMatrix hessian(const Polynomial& p) {
  const int d = p.dimension();
  PolyMatrix h(d, d, d);
  for (int i = 0; i < d; ++i) {
    Polynomial di = p.derivative(i);
    for (int j = i; j < d; ++j) {
      Polynomial dij = di.derivative(j);
      h.at(i, j) = dij;
      h.at(j, i) = dij;
    }
  }
  return h;
}

PolyMatrix gram_product(const PolyMatrix& a) {
  PolyMatrix out(a.rows(), a.rows(), a.dimension());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = r; c < a.rows(); ++c) {
      Polynomial acc = Polynomial::zero(a.dimension());
      for (int k = 0; k < a.cols(); ++k) acc = acc + a.at(r, k) * a.at(c, k);
      out.at(r, c) = acc;
      out.at(c, r) = acc;
    }
  }
  return out;
}

}  // namespace momsos
