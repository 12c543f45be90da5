#include "momsos/hierarchy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace momsos {

ExtractResult extract_and_test(const RelaxationSolution& solution, const Instance& instance,
                               double tol) {
  if (solution.status != SolveStatus::Optimal || !solution.moments) {
    throw std::invalid_argument("extract_and_test: relaxation solution is not optimal");
  }
  const int d = instance.dimension;
  const MomentSequence& phi = *solution.moments;

  std::vector<double> x_scaled(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    MultiIndex ei = MultiIndex::zeros(d);
    ei.exps[i] = 1;
    x_scaled[static_cast<size_t>(i)] = phi.at(ei);
  }

  ExtractResult out;
  out.feasible = true;
  for (const Polynomial& g : instance.constraints) {
    if (g.eval(x_scaled) < -tol) {
      out.feasible = false;
      break;
    }
  }
  // Objective values are invariant under the scaling substitution, so the
  // scaled evaluation is f at the back-mapped point.
  out.value = instance.objective.eval(x_scaled);
  out.gap = out.value - solution.bound;
  out.exact = out.feasible && out.value <= solution.bound + tol;
  out.minimizer = to_original_coordinates(instance, x_scaled);
  return out;
}

HierarchyReport run_hierarchy(const Instance& instance, int n_max, double tol,
                              bool certify_first, const SolverSettings& solver,
                              int escalation_cap, std::optional<int> n_start_override) {
  Instance inst = preprocess(instance);

  HierarchyReport report;
  report.instance = inst;
  report.n_min = n_min(inst);
  report.n_max = n_max;
  report.tolerance = tol;
  if (n_max < report.n_min) {
    throw std::invalid_argument("run_hierarchy: n_max is below n_min");
  }
  if (n_start_override &&
      (*n_start_override < report.n_min || *n_start_override > n_max)) {
    throw std::invalid_argument("run_hierarchy: start order must lie in [n_min, n_max]");
  }

  int start = report.n_min;
  if (certify_first) {
    const auto cert_t0 = std::chrono::steady_clock::now();
    bool quadratic = true;
    for (const Polynomial& g : inst.constraints) quadratic = quadratic && *g.degree() <= 2;
    if (!quadratic) {
      report.certificate_note =
          "certificate search skipped: a constraint of degree above 2 carries no explicit "
          "order guarantee";
    } else {
      std::vector<int> base = default_certificate_bounds(inst.objective, inst.constraints);
      for (int step = 0; step <= escalation_cap && !report.certificate; ++step) {
        std::vector<int> bounds = base;
        for (int& b : bounds) b += step;
        try {
          report.certificate =
              check_sos_convex_on_omega(inst.objective, inst.constraints, bounds, solver);
          if (!report.certificate) {
            report.certificate_note = "no certificate found at degree bounds up to +" +
                                      std::to_string(step) + " over the matched defaults";
          }
        } catch (const std::runtime_error& e) {
          report.certificate_note = std::string("certificate search failed: ") + e.what();
        }
      }
      if (report.certificate) {
        report.predicted_order = exact_order_bound(*report.certificate);
        // The relaxation is undefined below n_min, so the loop starts at the
        // larger of the two; the guarantee covers every n past the bound.
        start = std::max(report.n_min, *report.predicted_order);
        report.certificate_note = "certificate found; hierarchy is exact from order " +
                                  std::to_string(*report.predicted_order);
      }
    }
    report.certificate_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - cert_t0)
            .count();
  }
  if (start > n_max) start = report.n_min;  // never skip past the user's ceiling
  if (n_start_override) start = *n_start_override;
  report.n_start = start;

  double best_value = std::numeric_limits<double>::infinity();
  for (int n = start; n <= n_max; ++n) {
    RelaxationSolution sol = solve_relaxation(inst, n, solver);
    OrderRecord rec;
    rec.order = n;
    rec.status = sol.status;
    rec.iterations = sol.iterations;
    rec.message = sol.message;

    if (sol.status == SolveStatus::Optimal) {
      rec.bound = sol.bound;
      if (std::isnan(report.best_bound) || sol.bound > report.best_bound) {
        report.best_bound = sol.bound;
      }
      ExtractResult ex = extract_and_test(sol, inst, tol);
      rec.minimizer = ex.minimizer;
      rec.value = ex.value;
      rec.gap = ex.gap;
      rec.feasible_point = ex.feasible;
      rec.exact = ex.exact;
      if (ex.feasible && ex.value < best_value) {
        best_value = ex.value;
        report.minimizer = ex.minimizer;
        report.minimizer_value = ex.value;
      }
      report.orders.push_back(std::move(rec));
      if (ex.exact) {
        report.certified = true;
        report.certified_order = n;
        report.minimizer = report.orders.back().minimizer;
        report.minimizer_value = report.orders.back().value;
        break;
      }
    } else {
      report.orders.push_back(std::move(rec));
      if (sol.status == SolveStatus::Infeasible) break;  // higher orders only shrink
    }
  }

  report.exactness_without_certificate = report.certified && !report.certificate.has_value();
  return report;
}

}  // namespace momsos
