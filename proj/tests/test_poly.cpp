#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"
#include "momsos/multi_index.hpp"
#include "momsos/polynomial.hpp"
#include "test_util.hpp"

using momsos::MultiIndex;
using momsos::Polynomial;
using momsos::PolyMatrix;

TEST_CASE("graded lex basis order and sizes") {
  const auto basis = momsos::monomial_basis(2, 2);
  REQUIRE(basis.size() == 6);
  CHECK(basis[0] == MultiIndex{0, 0});
  CHECK(basis[1] == MultiIndex{1, 0});  // (1,0) precedes (0,1)
  CHECK(basis[2] == MultiIndex{0, 1});
  CHECK(basis[3] == MultiIndex{2, 0});
  CHECK(basis[4] == MultiIndex{1, 1});
  CHECK(basis[5] == MultiIndex{0, 2});

  CHECK(momsos::basis_size(2, 2) == 6);
  CHECK(momsos::basis_size(2, 1) == 3);
  CHECK(momsos::basis_size(3, 2) == 10);
  CHECK(momsos::basis_size(1, 4) == 5);

  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 5; ++n) {
      const auto b = momsos::monomial_basis(d, n);
      CHECK(static_cast<std::int64_t>(b.size()) == momsos::basis_size(d, n));
      for (size_t i = 0; i + 1 < b.size(); ++i) {
        CHECK(momsos::graded_lex_less(b[i], b[i + 1]));  // strictly increasing
      }
    }
  }
}

TEST_CASE("MonomialBasis lookup") {
  const momsos::MonomialBasis basis(3, 4);
  for (int i = 0; i < basis.size(); ++i) {
    CHECK(basis.index_of(basis[i]) == i);
  }
  MultiIndex too_big{5, 0, 0};
  CHECK(basis.index_of(too_big) == -1);

  const auto& c1 = momsos::cached_basis(3, 4);
  const auto& c2 = momsos::cached_basis(3, 4);
  CHECK(&c1 == &c2);  // shared cache entry
  CHECK(c1.size() == basis.size());
}

TEST_CASE("multi-index arithmetic") {
  MultiIndex a{1, 2, 0};
  MultiIndex b{0, 1, 3};
  CHECK((a + b) == MultiIndex{1, 3, 3});
  CHECK(a.total_degree() == 3);
  CHECK(MultiIndex::zeros(4).total_degree() == 0);
}

TEST_CASE("polynomial term accumulation and cleanup") {
  Polynomial p = Polynomial::from_terms(1, {{{2}, 0.5}, {{2}, 0.25}, {{0}, 1e-15}});
  CHECK(p.term_count() == 1);  // duplicates merged, dust dropped
  CHECK(p.coefficient(MultiIndex{2}) == doctest::Approx(0.75).epsilon(1e-15));

  Polynomial z = Polynomial::from_terms(2, {{{1, 0}, 1e-20}});
  CHECK(z.is_zero());
  CHECK(!z.degree().has_value());
  CHECK(z.degree_or(-1) == -1);

  CHECK(Polynomial::constant(2, 3.0).degree() == 0);
  CHECK(testutil::cubic_on_disk().objective.degree() == 3);
}

TEST_CASE("cancellation yields the zero polynomial") {
  Polynomial x = Polynomial::variable(2, 0);
  Polynomial diff = x - x;
  CHECK(diff.is_zero());
  CHECK(!diff.degree().has_value());
}

TEST_CASE("evaluation is linear and multiplicative") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Polynomial p = Polynomial::from_terms(2, {{{2, 1}, 0.3}, {{0, 2}, -1.2}, {{1, 0}, 2.0}});
  Polynomial q = Polynomial::from_terms(2, {{{1, 1}, -0.7}, {{0, 0}, 0.4}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x{uni(rng), uni(rng)};
    CHECK((p + 2.0 * q).eval(x) ==
          doctest::Approx(p.eval(x) + 2.0 * q.eval(x)).epsilon(1e-12));
    CHECK((p * q).eval(x) == doctest::Approx(p.eval(x) * q.eval(x)).epsilon(1e-10));
    CHECK((-p).eval(x) == doctest::Approx(-p.eval(x)).epsilon(1e-15));
  }
}

TEST_CASE("derivatives, exact coefficients") {
  // 0.125 x1^3 keeps every derivative coefficient exactly representable.
  Polynomial f = Polynomial::from_terms(2, {{{3, 0}, 0.125}, {{1, 1}, 2.0}, {{0, 2}, 1.0}});
  Polynomial d1 = f.derivative(0);
  Polynomial expected1 = Polynomial::from_terms(2, {{{2, 0}, 0.375}, {{0, 1}, 2.0}});
  CHECK(d1 == expected1);
  Polynomial d2 = f.derivative(1);
  Polynomial expected2 = Polynomial::from_terms(2, {{{1, 0}, 2.0}, {{0, 1}, 2.0}});
  CHECK(d2 == expected2);
}

TEST_CASE("gradient matches finite differences") {
  const Polynomial f = testutil::cubic_on_disk().objective;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-0.7, 0.7);
  const double h = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x{uni(rng), uni(rng)};
    for (int i = 0; i < 2; ++i) {
      std::vector<double> xp = x, xm = x;
      xp[static_cast<size_t>(i)] += h;
      xm[static_cast<size_t>(i)] -= h;
      const double fd = (f.eval(xp) - f.eval(xm)) / (2 * h);
      CHECK(f.derivative(i).eval(x) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("hessian structure and finite differences") {
  const Polynomial f = testutil::cubic_on_disk().objective;
  const PolyMatrix h = momsos::hessian(f);
  REQUIRE(h.rows() == 2);
  REQUIRE(h.cols() == 2);
  CHECK(h.is_symmetric());

  Polynomial expected00 = Polynomial::from_terms(2, {{{1, 0}, 1.0}, {{0, 0}, 1.0}});
  CHECK(h.at(0, 0).coefficient_distance(expected00) <= 1e-12);
  CHECK(h.at(0, 1).is_zero());
  CHECK(h.at(1, 1).coefficient_distance(Polynomial::constant(2, 1.0)) <= 1e-12);

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> uni(-0.6, 0.6);
  const double s = 1e-4;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x{uni(rng), uni(rng)};
    const auto vals = h.eval(x);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        std::vector<double> xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[i] += s; xpp[j] += s;
        xpm[i] += s; xpm[j] -= s;
        xmp[i] -= s; xmp[j] += s;
        xmm[i] -= s; xmm[j] -= s;
        const double fd =
            (f.eval(xpp) - f.eval(xpm) - f.eval(xmp) + f.eval(xmm)) / (4 * s * s);
        CHECK(vals[static_cast<size_t>(i * 2 + j)] == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("scale substitution") {
  const Polynomial f = testutil::cubic_on_disk().objective;

  // p_R(x) = p(Rx), checked pointwise.
  const double R = 1.7;
  const Polynomial fr = f.scale_substitute(R);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x{uni(rng), uni(rng)};
    std::vector<double> rx{R * x[0], R * x[1]};
    CHECK(fr.eval(x) == doctest::Approx(f.eval(rx)).epsilon(1e-12));
  }

  // Powers of two keep the round trip exact.
  CHECK(f.scale_substitute(2.0).scale_substitute(0.5) == f);

  CHECK_THROWS_AS((void)f.scale_substitute(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)f.scale_substitute(-1.0), std::invalid_argument);
}

TEST_CASE("poly matrix evaluation and gram product") {
  PolyMatrix a(2, 2, 1);
  a.at(0, 0) = Polynomial::variable(1, 0);
  a.at(0, 1) = Polynomial::constant(1, 1.0);
  a.at(1, 0) = Polynomial::zero(1);
  a.at(1, 1) = Polynomial::from_terms(1, {{{2}, 1.0}});

  const PolyMatrix g = momsos::gram_product(a);  // a a^T
  CHECK(g.is_symmetric());
  std::vector<double> x{0.8};
  const auto av = a.eval(x);
  const auto gv = g.eval(x);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      double dot = 0.0;
      for (int k = 0; k < 2; ++k) dot += av[r * 2 + k] * av[c * 2 + k];
      CHECK(gv[static_cast<size_t>(r * 2 + c)] == doctest::Approx(dot).epsilon(1e-12));
    }
  }
  CHECK(g.max_entry_degree() == 4);
  CHECK(PolyMatrix(2, 2, 1).max_entry_degree() == 0);
}
