#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momsos/multi_index.hpp"

namespace momsos {

/// Coefficients with magnitude below this are dropped after arithmetic, so
/// sparse term maps stay sparse. Tests account for it.
inline constexpr double kCoefficientCleanup = 1e-14;

/// Sparse multivariate polynomial with real coefficients. Immutable by
/// convention once built through the named constructors / operators; all
/// operations return new values. Stored coefficients are never exactly zero.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, double, GradedLexLess>;

  explicit Polynomial(int dimension) : dimension_(dimension) {}

  static Polynomial zero(int dimension) { return Polynomial(dimension); }
  static Polynomial constant(int dimension, double c);
  /// x_i (0-based variable index).
  static Polynomial variable(int dimension, int i);
  static Polynomial monomial(const MultiIndex& alpha, double coef);
  /// Builds from (exponents, coefficient) pairs; repeated exponents accumulate.
  static Polynomial from_terms(int dimension,
                               const std::vector<std::pair<std::vector<int>, double>>& terms);

  int dimension() const { return dimension_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  /// Total degree; nullopt for the zero polynomial ("minus infinity" role),
  /// so that half-degree formulas cannot silently treat 0 as degree-0.
  std::optional<int> degree() const;
  int degree_or(int fallback) const { return degree().value_or(fallback); }

  /// Coefficient of x^alpha (0.0 when absent).
  double coefficient(const MultiIndex& alpha) const;

  /// Sum of f_a * x^a, terms accumulated in graded-lex order.
  double eval(std::span<const double> x) const;
  double eval(const std::vector<double>& x) const { return eval(std::span<const double>(x)); }

  /// Partial derivative with respect to variable i.
  Polynomial derivative(int i) const;

  /// p'(x') = p(R x'): every coefficient c_a picks up a factor R^|a|.
  Polynomial scale_substitute(double radius) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }

  bool operator==(const Polynomial& other) const {
    return dimension_ == other.dimension_ && terms_ == other.terms_;
  }

  /// Max |coefficient difference| against `other`, for closeness checks.
  double coefficient_distance(const Polynomial& other) const;

  std::string to_string() const;

 private:
  void add_term(const MultiIndex& alpha, double coef);
  void cleanup();

  int dimension_;
  TermMap terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

/// Dense grid of polynomials sharing one dimension; used for Hessians and
/// for the factor matrices of convexity certificates.
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, int dimension);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dimension() const { return dimension_; }

  Polynomial& at(int r, int c);
  const Polynomial& at(int r, int c) const;

  bool is_symmetric() const;

  /// Entry-wise evaluation into a dense matrix (row-major vector of values).
  std::vector<double> eval(std::span<const double> x) const;

  /// Max over entries of the entry's total degree (0 when all entries vanish).
  int max_entry_degree() const;

 private:
  int rows_, cols_, dimension_;
  std::vector<Polynomial> entries_;
};

/// d x d symmetric matrix of second partials of p.
PolyMatrix hessian(const Polynomial& p);

/// A * A^T where A is a PolyMatrix.
PolyMatrix gram_product(const PolyMatrix& a);

}  // namespace momsos
