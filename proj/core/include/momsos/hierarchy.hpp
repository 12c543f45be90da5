#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "momsos/certificate.hpp"
#include "momsos/instance.hpp"
#include "momsos/relaxation.hpp"

namespace momsos {

/// Outcome of the exactness test on one solved relaxation: xhat is the
/// first-moment vector mapped back to original coordinates, and `exact`
/// holds when xhat lies in Omega within tol and f(xhat) <= rho_n + tol —
/// in which case xhat is a certified global minimizer.
struct ExtractResult {
  std::vector<double> minimizer;  // original coordinates
  bool feasible = false;          // g_j(xhat) >= -tol for every j
  bool exact = false;
  double value = 0.0;             // f(xhat)
  double gap = 0.0;               // f(xhat) - rho_n
};

/// Requires solution.status == Optimal (with decoded moments). Never throws
/// on mere inexactness: that is reported through the flags.
ExtractResult extract_and_test(const RelaxationSolution& solution, const Instance& instance,
                               double tol);

struct OrderRecord {
  int order = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
  double bound = 0.0;  // rho_n, meaningful when optimal
  std::vector<double> minimizer;
  double value = 0.0;  // f at the extracted point
  double gap = 0.0;
  bool feasible_point = false;
  bool exact = false;
  int iterations = 0;
  std::string message;
};

struct HierarchyReport {
  Instance instance;  // preprocessed form actually solved
  int n_min = 0;
  int n_start = 0;
  int n_max = 0;
  double tolerance = 1e-6;

  std::vector<OrderRecord> orders;  // every attempted order, in order

  bool certified = false;
  int certified_order = -1;  // -1 when not certified
  double best_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> minimizer;  // certified minimizer, else best feasible point found
  std::optional<double> minimizer_value;

  std::optional<CertificateBundle> certificate;
  std::optional<int> predicted_order;  // exact_order_bound when a certificate was found
  bool exactness_without_certificate = false;
  std::string certificate_note;  // what the certificate search did, in words
  double certificate_ms = 0.0;   // wall time spent in the certificate search
};

/// Runs the hierarchy on (a preprocessed copy of) the instance. When
/// certify_first is set and every constraint is quadratic or linear, a
/// certificate search runs first with bounds escalated from the
/// degree-matched defaults by +0, +1, ... up to +escalation_cap; on success
/// the order loop starts at max(n_min, exact_order_bound) and that value is
/// recorded as predicted_order. Orders n, n+1, ..., n_max are solved until
/// the exactness test fires; every attempt lands in the report.
/// n_start_override pins the first order explicitly (it must be in
/// [n_min, n_max]); with n_start_override == n_max that is a single-order run.
HierarchyReport run_hierarchy(const Instance& instance, int n_max, double tol,
                              bool certify_first, const SolverSettings& solver = {},
                              int escalation_cap = 2,
                              std::optional<int> n_start_override = std::nullopt);

}  // namespace momsos
