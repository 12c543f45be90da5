#include "momsos/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace momsos {
namespace {

constexpr int kBlockSize = 10000;       // Halton indices per candidate block
constexpr double kFeasSlack = 1e-12;    // accepted constraint slack while searching
constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;

const unsigned kPrimes[] = {2, 3, 5, 7, 11};

// Quasi-uniform point in the closed unit ball: the first d Halton coordinates
// become a direction through the inverse normal CDF, the last one a radius
// with the u^(1/d) volume correction.
std::vector<double> ball_point(std::uint64_t index, int d) {
  std::vector<double> x(static_cast<size_t>(d));
  double norm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    x[static_cast<size_t>(i)] = inverse_normal_cdf(halton(index, kPrimes[i]));
    norm2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
  }
  double norm = std::sqrt(norm2);
  if (norm < 1e-12) {
    x.assign(static_cast<size_t>(d), 0.0);
    x[0] = 1.0;
    norm = 1.0;
  }
  double r = std::pow(halton(index, kPrimes[d]), 1.0 / d);
  for (double& xi : x) xi *= r / norm;
  return x;
}

bool feasible(const Instance& inst, const std::vector<double>& x) {
  for (const Polynomial& g : inst.constraints) {
    if (g.eval(x) < -kFeasSlack) return false;
  }
  return true;
}

struct PolishOutcome {
  std::vector<double> x;
  double value;
  bool stationary;  // backtracking found no acceptable step before the budget ran out
};

// Projected gradient descent: ball projection is analytic, the remaining
// constraints act by rejecting trial points during the backtracking search.
PolishOutcome polish(const Instance& inst, const std::vector<Polynomial>& grads,
                     std::vector<double> x, int steps) {
  const int d = inst.dimension;
  double fx = inst.objective.eval(x);
  bool stationary = false;
  std::vector<double> cand(static_cast<size_t>(d));
  for (int it = 0; it < steps; ++it) {
    std::vector<double> g(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) g[static_cast<size_t>(i)] = grads[static_cast<size_t>(i)].eval(x);

    bool accepted = false;
    for (double eta = 1.0; eta >= 1e-14; eta *= kShrink) {
      double norm2 = 0.0;
      for (int i = 0; i < d; ++i) {
        cand[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - eta * g[static_cast<size_t>(i)];
        norm2 += cand[static_cast<size_t>(i)] * cand[static_cast<size_t>(i)];
      }
      if (norm2 > 1.0) {
        double scale = 1.0 / std::sqrt(norm2);
        for (double& ci : cand) ci *= scale;
      }
      if (!feasible(inst, cand)) continue;
      double fc = inst.objective.eval(cand);
      double move2 = 0.0;
      for (int i = 0; i < d; ++i) {
        double di = cand[static_cast<size_t>(i)] - x[static_cast<size_t>(i)];
        move2 += di * di;
      }
      if (fc <= fx - (kArmijo / eta) * move2) {
        x = cand;
        fx = fc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stationary = true;
      break;
    }
  }
  return PolishOutcome{std::move(x), fx, stationary};
}

}  // namespace

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: argument outside (0, 1)");
  }
  // Acklam's rational approximation (central + tail branches).
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // One Halley refinement pushes the error to full double precision.
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

OracleResult brute_force_min(const Instance& inst, int samples, int polish_steps,
                             unsigned seed) {
  if (!inst.preprocessed) {
    throw std::invalid_argument("brute_force_min: instance not preprocessed");
  }
  if (inst.dimension > 4) {
    throw std::invalid_argument("brute_force_min: oracle is desk-scale only (dimension <= 4)");
  }
  if (samples < 1000) {
    throw std::invalid_argument("brute_force_min: need at least 1000 samples");
  }
  const int d = inst.dimension;
  std::vector<Polynomial> grads;
  for (int i = 0; i < d; ++i) grads.push_back(inst.objective.derivative(i));

  // Candidate blocks are tied to absolute Halton indices, so extending the
  // sample budget only appends candidates and the result is monotone.
  struct Candidate {
    std::vector<double> x;
    double value;
  };
  std::vector<Candidate> candidates;
  std::vector<double> best_sample;
  double best_sample_value = std::numeric_limits<double>::infinity();
  double least_violation = std::numeric_limits<double>::infinity();

  const std::uint64_t offset = static_cast<std::uint64_t>(seed) * 1000003ULL;
  std::vector<double> block_best;
  double block_best_value = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= samples; ++k) {
    std::vector<double> x = ball_point(offset + static_cast<std::uint64_t>(k), d);
    double worst = 0.0;
    for (const Polynomial& g : inst.constraints) worst = std::max(worst, -g.eval(x));
    if (worst <= kFeasSlack) {
      double v = inst.objective.eval(x);
      if (v < best_sample_value) {
        best_sample_value = v;
        best_sample = x;
      }
      if (v < block_best_value) {
        block_best_value = v;
        block_best = std::move(x);
      }
    } else {
      least_violation = std::min(least_violation, worst);
    }
    if (k % kBlockSize == 0 || k == samples) {
      if (!block_best.empty()) {
        candidates.push_back(Candidate{std::move(block_best), block_best_value});
      }
      block_best.clear();
      block_best_value = std::numeric_limits<double>::infinity();
    }
  }

  if (candidates.empty()) {
    std::ostringstream msg;
    msg << "brute_force_min: no feasible sample among " << samples
        << " ball points; least constraint violation seen was " << least_violation;
    throw std::runtime_error(msg.str());
  }

  OracleResult out;
  out.samples_used = samples;
  out.value = best_sample_value;
  std::vector<double> argmin_scaled = best_sample;
  out.polish_converged = false;
  for (const Candidate& cand : candidates) {
    PolishOutcome po = polish(inst, grads, cand.x, polish_steps);
    if (po.value < out.value) {
      out.value = po.value;
      argmin_scaled = po.x;
      out.polish_converged = po.stationary;
    }
  }
  out.argmin = to_original_coordinates(inst, argmin_scaled);
  return out;
}

}  // namespace momsos
