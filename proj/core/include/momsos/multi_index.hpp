#pragma once

#include <cstdint>
#include <vector>

namespace momsos {

/// Exponent vector of a monomial x^a = x_1^{a_1} ... x_d^{a_d}.
struct MultiIndex {
  std::vector<int> exps;

  MultiIndex() = default;
  explicit MultiIndex(int dimension) : exps(static_cast<size_t>(dimension), 0) {}
  explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}
  MultiIndex(std::initializer_list<int> e) : exps(e) {}

  static MultiIndex zeros(int dimension) { return MultiIndex(dimension); }

  int dimension() const { return static_cast<int>(exps.size()); }

  /// Total degree |a| = sum of entries.
  int total_degree() const;

  MultiIndex operator+(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const { return exps == other.exps; }
  bool operator!=(const MultiIndex& other) const { return exps != other.exps; }
};

/// Graded lexicographic order: lower total degree first; ties broken so that
/// (1,0) precedes (0,1). This is the one ordering every matrix index map in
/// the project derives from.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

/// s(n) = binom(d + n, n), the number of monomials of degree <= n in d vars.
std::int64_t basis_size(int dimension, int degree);

/// All multi-indices with |a| <= degree, in graded lexicographic order.
std::vector<MultiIndex> monomial_basis(int dimension, int degree);

/// A monomial basis together with its position lookup. Rows and columns of
/// every moment/localizing/Gram matrix are indexed by one of these.
class MonomialBasis {
 public:
  MonomialBasis(int dimension, int degree);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const MultiIndex& operator[](int i) const { return elements_[static_cast<size_t>(i)]; }
  const MultiIndex& at(std::int64_t i) const { return elements_.at(static_cast<size_t>(i)); }
  const std::vector<MultiIndex>& elements() const { return elements_; }

  /// Position of `alpha` in the basis, or -1 if |alpha| exceeds the degree.
  int index_of(const MultiIndex& alpha) const;

 private:
  int dimension_;
  int degree_;
  std::vector<MultiIndex> elements_;
};

/// Shared, lazily built basis cache (one instance per (dimension, degree)).
/// Returned references stay valid for the lifetime of the process.
const MonomialBasis& cached_basis(int dimension, int degree);

}  // namespace momsos
