#include "momsos/multi_index.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace momsos {

int MultiIndex::total_degree() const {
  int s = 0;
  for (int e : exps) s += e;
  return s;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (exps.size() != other.exps.size())
    throw std::invalid_argument("MultiIndex: dimension mismatch in addition");
  MultiIndex r(dimension());
  for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] + other.exps[i];
  return r;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da < db;
  // within a degree class, the index with the larger leading exponent comes
  // first, so that e.g. (1,0) precedes (0,1)
  for (size_t i = 0; i < a.exps.size(); ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  }
  return false;
}

std::int64_t basis_size(int dimension, int degree) {
  if (dimension < 1) throw std::invalid_argument("basis_size: dimension must be positive");
  if (degree < 0) return 0;
  // binom(d + n, n) accumulated without intermediate overflow
  std::int64_t r = 1;
  for (int i = 1; i <= dimension; ++i) {
    r = r * (degree + i) / i;
  }
  return r;
}

namespace {

void enumerate_exact_degree(int dimension, int degree, int pos, MultiIndex& scratch,
                            std::vector<MultiIndex>& out) {
  if (pos == dimension - 1) {
    scratch.exps[static_cast<size_t>(pos)] = degree;
    out.push_back(scratch);
    return;
  }
  // descending first exponent realizes the graded-lex tie-break directly
  for (int e = degree; e >= 0; --e) {
    scratch.exps[static_cast<size_t>(pos)] = e;
    enumerate_exact_degree(dimension, degree - e, pos + 1, scratch, out);
  }
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int dimension, int degree) {
  if (dimension < 1) throw std::invalid_argument("monomial_basis: dimension must be positive");
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  out.reserve(static_cast<size_t>(basis_size(dimension, degree)));
  MultiIndex scratch(dimension);
  for (int n = 0; n <= degree; ++n) {
    enumerate_exact_degree(dimension, n, 0, scratch, out);
  }
  return out;
}

MonomialBasis::MonomialBasis(int dimension, int degree)
    : dimension_(dimension), degree_(degree), elements_(monomial_basis(dimension, degree)) {}

int MonomialBasis::index_of(const MultiIndex& alpha) const {
  if (alpha.dimension() != dimension_)
    throw std::invalid_argument("MonomialBasis::index_of: dimension mismatch");
  if (alpha.total_degree() > degree_) return -1;
  auto it = std::lower_bound(elements_.begin(), elements_.end(), alpha, GradedLexLess{});
  // basis is complete up to `degree_`, so the element is always present
  return static_cast<int>(it - elements_.begin());
}

const MonomialBasis& cached_basis(int dimension, int degree) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(dimension, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<MonomialBasis>(dimension, degree)).first;
  }
  return *it->second;
}

}  // namespace momsos
