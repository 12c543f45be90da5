#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"
#include "momsos/moment_matrix.hpp"
#include "momsos/moment_sequence.hpp"
#include "momsos/polynomial.hpp"
#include "test_util.hpp"

using momsos::MomentSequence;
using momsos::MultiIndex;
using momsos::Polynomial;

namespace {

double direct_power(const std::vector<double>& z, const MultiIndex& a) {
  double v = 1.0;
  for (size_t i = 0; i < z.size(); ++i) {
    for (int k = 0; k < a.exps[i]; ++k) v *= z[i];
  }
  return v;
}

// Moments of sum_i w_i * dirac(z_i), built from raw powers only.
MomentSequence mixture_moments(const std::vector<std::vector<double>>& atoms,
                               const std::vector<double>& weights, int degree) {
  const int d = static_cast<int>(atoms[0].size());
  MomentSequence phi(d, degree);
  for (const MultiIndex& a : momsos::monomial_basis(d, degree)) {
    double v = 0.0;
    for (size_t i = 0; i < atoms.size(); ++i) v += weights[i] * direct_power(atoms[i], a);
    phi.set(a, v);
  }
  return phi;
}

}  // namespace

TEST_CASE("atomic moments are monomial values") {
  std::vector<double> z{0.3, -0.5};
  const MomentSequence phi = MomentSequence::atomic(z, 4);
  CHECK(phi.at(MultiIndex{0, 0}) == 1.0);
  for (const MultiIndex& a : momsos::monomial_basis(2, 4)) {
    CHECK(phi.at(a) == doctest::Approx(direct_power(z, a)).epsilon(1e-14));
  }
}

TEST_CASE("riesz functional on a Dirac mass is evaluation") {
  const Polynomial f = testutil::cubic_on_disk().objective;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto z = testutil::random_ball_point(rng, 2);
    const MomentSequence phi = MomentSequence::atomic(z, 3);
    CHECK(momsos::riesz_apply(phi, f) == doctest::Approx(f.eval(z)).epsilon(1e-12));
  }
}

TEST_CASE("riesz functional is linear") {
  Polynomial p = Polynomial::from_terms(2, {{{2, 0}, 1.5}, {{0, 1}, -2.0}});
  Polynomial q = Polynomial::from_terms(2, {{{1, 1}, 0.25}, {{0, 0}, 1.0}});
  std::vector<double> z{0.4, 0.2};
  const MomentSequence phi = MomentSequence::atomic(z, 2);
  CHECK(momsos::riesz_apply(phi, p + 2.0 * q) ==
        doctest::Approx(momsos::riesz_apply(phi, p) + 2.0 * momsos::riesz_apply(phi, q))
            .epsilon(1e-13));
}

TEST_CASE("out-of-range moment access is a hard error") {
  MomentSequence phi(2, 2);
  CHECK_THROWS_AS((void)phi.at(MultiIndex{2, 1}), std::invalid_argument);  // degree 3 > 2
  CHECK_THROWS_AS(phi.set(MultiIndex{0, 3}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)phi.at(MultiIndex{1}), std::invalid_argument);  // wrong dimension
  // riesz on a polynomial of higher degree than stored moments must throw too
  Polynomial cubic = Polynomial::from_terms(2, {{{3, 0}, 1.0}});
  CHECK_THROWS_AS((void)momsos::riesz_apply(phi, cubic), std::invalid_argument);
}

TEST_CASE("shifted sequence of Lebesgue moments on [0,1]") {
  // phi_k = 1/(k+1); g = x(1-x) gives (g phi)_k = 1/(k+2) - 1/(k+3).
  MomentSequence phi(1, 7);
  for (int k = 0; k <= 7; ++k) phi.set(MultiIndex{k}, 1.0 / (k + 1));
  const Polynomial g = Polynomial::from_terms(1, {{{1}, 1.0}, {{2}, -1.0}});
  const MomentSequence shifted = momsos::shift_sequence(phi, g);
  CHECK(shifted.max_degree() == 5);
  for (int k = 0; k <= 5; ++k) {
    CHECK(shifted.at(MultiIndex{k}) ==
          doctest::Approx(1.0 / (k + 2) - 1.0 / (k + 3)).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)momsos::shift_sequence(phi, Polynomial::zero(1)),
                  std::invalid_argument);
  // Shift consuming more degree than available must throw.
  const Polynomial g8 = Polynomial::from_terms(1, {{{8}, 1.0}});
  CHECK_THROWS_AS((void)momsos::shift_sequence(phi, g8), std::invalid_argument);
}

TEST_CASE("moment matrix is Hankel in one dimension") {
  std::vector<double> z{0.7};
  const MomentSequence phi = MomentSequence::atomic(z, 4);
  const Eigen::MatrixXd m = momsos::moment_matrix(phi, 2);
  REQUIRE(m.rows() == 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      CHECK(m(r, c) == phi.at(MultiIndex{r + c}));  // bitwise
    }
  }
  CHECK_THROWS_AS((void)momsos::moment_matrix(phi, 3), std::invalid_argument);
}

TEST_CASE("quadratic form identity c' M c = phi(p^2)") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const auto basis = momsos::monomial_basis(2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<double>> atoms{testutil::random_ball_point(rng, 2),
                                           testutil::random_ball_point(rng, 2)};
    const MomentSequence phi = mixture_moments(atoms, {0.6, 0.4}, 4);
    // random polynomial of degree <= 2 over the basis
    Polynomial p = Polynomial::zero(2);
    Eigen::VectorXd coef(static_cast<int>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i) {
      coef(static_cast<int>(i)) = uni(rng);
      p = p + Polynomial::monomial(basis[i], coef(static_cast<int>(i)));
    }
    const Eigen::MatrixXd m = momsos::moment_matrix(phi, 2);
    const double quad = coef.dot(m * coef);
    CHECK(quad == doctest::Approx(momsos::riesz_apply(phi, p * p)).epsilon(1e-10));
  }
}

TEST_CASE("localizing matrix equals moment matrix of the shifted sequence") {
  std::mt19937 rng(31);
  const Polynomial g = momsos::ball_constraint(2);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<double>> atoms{testutil::random_ball_point(rng, 2),
                                           testutil::random_ball_point(rng, 2),
                                           testutil::random_ball_point(rng, 2)};
    const MomentSequence phi = mixture_moments(atoms, {0.5, 0.3, 0.2}, 6);
    const Eigen::MatrixXd direct = momsos::localizing_matrix(phi, g, 2);
    const Eigen::MatrixXd viaShift = momsos::moment_matrix(momsos::shift_sequence(phi, g), 2);
    REQUIRE(direct.rows() == viaShift.rows());
    CHECK((direct - viaShift).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("atomic mixtures give PSD moment and localizing matrices") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<double>> atoms{testutil::random_ball_point(rng, 2),
                                           testutil::random_ball_point(rng, 2)};
    const MomentSequence phi = mixture_moments(atoms, {0.5, 0.5}, 6);
    CHECK(momsos::min_eigenvalue(momsos::moment_matrix(phi, 3)) >= -1e-10);
    CHECK(momsos::min_eigenvalue(
              momsos::localizing_matrix(phi, momsos::ball_constraint(2), 2)) >= -1e-10);
  }
}

TEST_CASE("Jensen inequality for the convex objective over atomic measures") {
  const Polynomial f = testutil::cubic_on_disk().objective;
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<double>> atoms;
    std::vector<double> w;
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) {
      atoms.push_back(testutil::random_ball_point(rng, 2));
      w.push_back(uni(rng));
      wsum += w.back();
    }
    for (double& wi : w) wi /= wsum;
    const MomentSequence phi = mixture_moments(atoms, w, 3);
    const double lhs = momsos::riesz_apply(phi, f);  // phi(f) = sum w_i f(z_i)
    const std::vector<double> mean{phi.at(MultiIndex{1, 0}), phi.at(MultiIndex{0, 1})};
    CHECK(lhs >= f.eval(mean) - 1e-10);
  }
}

TEST_CASE("is_psd thresholding") {
  Eigen::MatrixXd good = Eigen::MatrixXd::Identity(3, 3);
  good(0, 0) = 0.0;  // singular but PSD
  CHECK(momsos::is_psd(good));
  Eigen::MatrixXd noisy = Eigen::MatrixXd::Identity(2, 2);
  noisy(0, 0) = -1e-9;  // within scaled tolerance
  CHECK(momsos::is_psd(noisy, 1e-8));
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = -1e-6;
  CHECK(!momsos::is_psd(bad, 1e-8));
}
