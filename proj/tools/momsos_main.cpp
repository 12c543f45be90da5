#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "momsos/brute_force.hpp"
#include "momsos/hierarchy.hpp"
#include "momsos/instance_io.hpp"
#include "momsos/relaxation.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string format_point(const std::vector<double>& x) {
  std::string s = "[";
  char buf[64];
  for (size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.7f", x[i]);
    s += buf;
    if (i + 1 < x.size()) s += ", ";
  }
  return s + "]";
}

void write_file(const std::string& path, const std::string& text, const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(std::string("cannot open ") + what + " file: " + path);
  out << text;
  if (!out) throw std::runtime_error(std::string("cannot write ") + what + " file: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "momsos: bounds and certified global minima for polynomial programs on compact "
      "ball-bounded feasible sets, via the moment-SOS hierarchy"};
  std::string instance_path;
  std::string report_path;
  std::string dump_path;
  int order = 0;
  int max_order = 0;
  int samples = 100000;
  double tol = 1e-6;
  bool certify = false;
  bool oracle = false;

  app.add_option("--instance", instance_path, "instance JSON file")->required();
  CLI::Option* opt_order =
      app.add_option("--order", order, "solve exactly this relaxation order");
  CLI::Option* opt_max =
      app.add_option("--max-order", max_order,
                     "walk orders n_min..n until the exactness test fires (default n_min+3)");
  opt_order->excludes(opt_max);
  app.add_option("--tol", tol, "exactness/feasibility tolerance (default 1e-6)");
  app.add_flag("--certify", certify,
               "search for a Hessian decomposition certificate before solving");
  app.add_flag("--oracle", oracle, "cross-check the bound against the sampling oracle");
  app.add_option("--samples", samples, "oracle sample budget (default 100000)");
  app.add_option("--report", report_path, "write a JSON run report to this path");
  app.add_option("--dump-sdp", dump_path,
                 "write the first solved SDP in sparse triplet text form to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto t0 = Clock::now();
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      throw std::invalid_argument("--tol must be a positive number");
    }

    const momsos::Instance inst = momsos::load_instance(instance_path);
    const momsos::Instance pre = momsos::preprocess(inst);
    const int nmin = momsos::n_min(pre);

    const bool single = opt_order->count() > 0;
    int n_max = 0;
    std::optional<int> n_start;
    if (single) {
      if (order < nmin) {
        throw std::invalid_argument("--order " + std::to_string(order) +
                                    " is below the smallest admissible order n_min = " +
                                    std::to_string(nmin));
      }
      n_max = order;
      n_start = order;
    } else if (opt_max->count() > 0) {
      if (max_order < nmin) {
        throw std::invalid_argument("--max-order " + std::to_string(max_order) +
                                    " is below the smallest admissible order n_min = " +
                                    std::to_string(nmin));
      }
      n_max = max_order;
    } else {
      n_max = nmin + 3;
    }

    std::cout << "instance: " << (inst.name.empty() ? instance_path : inst.name)
              << "  (dimension " << inst.dimension << ", radius " << inst.radius
              << ", constraints incl. ball: " << pre.constraints.size() << ")\n";
    std::cout << "n_min = " << nmin << ", orders " << (n_start ? *n_start : nmin) << ".."
              << n_max << ", tol = " << tol << "\n";

    const auto t_run = Clock::now();
    const momsos::HierarchyReport report =
        momsos::run_hierarchy(inst, n_max, tol, certify, momsos::SolverSettings{}, 2, n_start);
    const double run_ms = ms_since(t_run);

    if (certify) {
      if (report.certificate) {
        std::cout << "certificate: found (degrees a = [";
        for (size_t j = 0; j < report.certificate->degrees.size(); ++j) {
          std::cout << report.certificate->degrees[j]
                    << (j + 1 < report.certificate->degrees.size() ? ", " : "");
        }
        std::cout << "], residual " << report.certificate->residual << ") -> exact from order "
                  << *report.predicted_order << "\n";
      } else {
        std::cout << "certificate: " << report.certificate_note << "\n";
      }
    }

    for (const momsos::OrderRecord& rec : report.orders) {
      std::cout << "order " << rec.order << ": " << momsos::to_string(rec.status);
      if (rec.status == momsos::SolveStatus::Optimal) {
        std::printf("  rho_%d = %.10g  f(xhat) = %.10g  gap = %.3g%s", rec.order, rec.bound,
                    rec.value, rec.gap, rec.exact ? "  exact" : "");
      } else if (!rec.message.empty()) {
        std::cout << "  (" << rec.message << ")";
      }
      std::cout << "\n";
    }

    if (report.certified) {
      std::cout << "certified global minimizer at order " << report.certified_order << "\n";
      std::printf("  f* = %.10g\n", *report.minimizer_value);
      std::cout << "  x* = " << format_point(report.minimizer) << "\n";
    } else if (!std::isnan(report.best_bound)) {
      std::printf("best lower bound: %.10g (no exactness certificate within order %d)\n",
                  report.best_bound, report.n_max);
      if (!report.minimizer.empty() && report.minimizer_value) {
        std::printf("best feasible point found: f = %.10g at %s\n", *report.minimizer_value,
                    format_point(report.minimizer).c_str());
      }
    } else {
      std::cout << "no relaxation solved to optimality\n";
    }

    std::optional<momsos::OracleResult> oracle_result;
    double oracle_ms = 0.0;
    if (oracle) {
      const auto t_oracle = Clock::now();
      oracle_result = momsos::brute_force_min(report.instance, samples);
      oracle_ms = ms_since(t_oracle);
      std::printf("oracle: value = %.10g at %s (%d samples)\n", oracle_result->value,
                  format_point(oracle_result->argmin).c_str(), oracle_result->samples_used);
      if (!std::isnan(report.best_bound)) {
        std::printf("oracle agreement: |bound - oracle| = %.3g\n",
                    std::abs(report.best_bound - oracle_result->value));
      }
    }

    if (!dump_path.empty()) {
      const momsos::MomentRelaxation relax =
          momsos::build_relaxation(report.instance, report.n_start);
      std::ofstream out(dump_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open dump file: " + dump_path);
      relax.problem.dump(out);
      if (!out) throw std::runtime_error("cannot write dump file: " + dump_path);
      std::cout << "sdp (order " << report.n_start << ") dumped to " << dump_path << "\n";
    }

    if (!report_path.empty()) {
      momsos::ReportTimings timings;
      timings.certificate_ms = report.certificate_ms;
      timings.relaxation_ms = run_ms - report.certificate_ms;
      timings.oracle_ms = oracle_ms;
      timings.total_ms = ms_since(t0);
      write_file(report_path, momsos::report_to_json(report, oracle_result, timings),
                 "report");
      std::cout << "report written to " << report_path << "\n";
    }

    if (single) {
      // A pinned order asks for the bound rho_n itself: success is a solved
      // relaxation, whether or not the exactness test fires on top of it.
      const bool solved = !report.orders.empty() &&
                          report.orders.front().status == momsos::SolveStatus::Optimal;
      if (!solved) {
        std::cerr << "error: relaxation did not solve to optimality\n";
        return 1;
      }
      return 0;
    }
    if (report.certified) return 0;
    const bool any_bound = !std::isnan(report.best_bound);
    if (any_bound) return 2;  // bounds exist, but no certified minimizer within n_max
    std::cerr << "error: no relaxation order solved to optimality\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
