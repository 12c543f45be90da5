#include "momsos/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "momsos/conic.hpp"

namespace momsos {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Polynomial parse_terms(const json& arr, int dimension, const std::string& where) {
  if (!arr.is_array()) {
    throw std::invalid_argument("instance: " + where + " must be a list of {exps, coef} terms");
  }
  std::vector<std::pair<std::vector<int>, double>> terms;
  int pos = 0;
  for (const auto& t : arr) {
    ++pos;
    const std::string at = "instance: " + where + " term " + std::to_string(pos);
    if (!t.is_object()) {
      throw std::invalid_argument(at + ": expected an object with exps and coef");
    }
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (it.key() != "exps" && it.key() != "coef") {
        throw std::invalid_argument(at + ": unknown field \"" + it.key() + "\"");
      }
    }
    if (!t.contains("exps") || !t.contains("coef")) {
      throw std::invalid_argument(at + ": needs both exps and coef");
    }
    const json& ex = t.at("exps");
    if (!ex.is_array()) {
      throw std::invalid_argument(at + ": exps must be a list of integers");
    }
    if (static_cast<int>(ex.size()) != dimension) {
      throw std::invalid_argument(at + ": exps has length " + std::to_string(ex.size()) +
                                  ", expected " + std::to_string(dimension));
    }
    std::vector<int> exps;
    exps.reserve(ex.size());
    for (const auto& e : ex) {
      if (!e.is_number_integer()) {
        throw std::invalid_argument(at + ": exps entries must be nonnegative integers");
      }
      const long long v = e.get<long long>();
      if (v < 0 || v > 1000000) {
        throw std::invalid_argument(at + ": exps entry " + std::to_string(v) +
                                    " is out of range");
      }
      exps.push_back(static_cast<int>(v));
    }
    const json& c = t.at("coef");
    if (!c.is_number()) {
      throw std::invalid_argument(at + ": coef must be a finite number");
    }
    const double coef = c.get<double>();
    if (!std::isfinite(coef)) {
      throw std::invalid_argument(at + ": coef must be a finite number");
    }
    terms.emplace_back(std::move(exps), coef);
  }
  return Polynomial::from_terms(dimension, terms);
}

ordered_json term_list(const Polynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [alpha, coef] : p.terms()) {
    ordered_json t;
    t["exps"] = alpha.exps;
    t["coef"] = coef;
    arr.push_back(std::move(t));
  }
  return arr;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("instance: top level must be a JSON object");
  }
  static const char* known[] = {"dimension",      "radius",         "objective",
                                "constraints",    "name",           "expected_value",
                                "expected_minimizer"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) {
      throw std::invalid_argument("instance: unknown field \"" + it.key() + "\"");
    }
  }
  for (const char* req : {"dimension", "radius", "objective", "constraints"}) {
    if (!j.contains(req)) {
      throw std::invalid_argument(std::string("instance: missing required field \"") + req +
                                  "\"");
    }
  }

  Instance inst;
  const json& jd = j.at("dimension");
  if (!jd.is_number_integer() || jd.get<long long>() < 1 || jd.get<long long>() > 1000) {
    throw std::invalid_argument("instance: dimension must be an integer in [1, 1000]");
  }
  inst.dimension = static_cast<int>(jd.get<long long>());

  const json& jr = j.at("radius");
  if (!jr.is_number() || !std::isfinite(jr.get<double>()) || jr.get<double>() <= 0.0) {
    throw std::invalid_argument("instance: radius must be a finite positive number");
  }
  inst.radius = jr.get<double>();

  inst.objective = parse_terms(j.at("objective"), inst.dimension, "objective");

  const json& jc = j.at("constraints");
  if (!jc.is_array()) {
    throw std::invalid_argument("instance: constraints must be a list of term lists");
  }
  int ci = 0;
  for (const auto& g : jc) {
    ++ci;
    inst.constraints.push_back(
        parse_terms(g, inst.dimension, "constraint " + std::to_string(ci)));
  }

  if (j.contains("name")) {
    if (!j.at("name").is_string()) {
      throw std::invalid_argument("instance: name must be a string");
    }
    inst.name = j.at("name").get<std::string>();
  }
  if (j.contains("expected_value")) {
    const json& ev = j.at("expected_value");
    if (!ev.is_number() || !std::isfinite(ev.get<double>())) {
      throw std::invalid_argument("instance: expected_value must be a finite number");
    }
    inst.expected_value = ev.get<double>();
  }
  if (j.contains("expected_minimizer")) {
    const json& em = j.at("expected_minimizer");
    if (!em.is_array() || static_cast<int>(em.size()) != inst.dimension) {
      throw std::invalid_argument("instance: expected_minimizer must be a list of " +
                                  std::to_string(inst.dimension) + " numbers");
    }
    std::vector<double> x;
    for (const auto& e : em) {
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        throw std::invalid_argument("instance: expected_minimizer entries must be finite numbers");
      }
      x.push_back(e.get<double>());
    }
    inst.expected_minimizer = std::move(x);
  }

  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read instance file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw std::runtime_error("cannot read instance file: " + path);
  }
  try {
    return parse_instance(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string emit_instance(const Instance& inst) {
  validate_instance(inst);
  ordered_json out;
  if (!inst.name.empty()) out["name"] = inst.name;
  out["dimension"] = inst.dimension;
  out["radius"] = inst.radius;
  out["objective"] = term_list(inst.objective);
  ordered_json cons = ordered_json::array();
  for (const Polynomial& g : inst.constraints) cons.push_back(term_list(g));
  out["constraints"] = std::move(cons);
  if (inst.expected_value) out["expected_value"] = *inst.expected_value;
  if (inst.expected_minimizer) out["expected_minimizer"] = *inst.expected_minimizer;
  return out.dump(2) + "\n";
}

std::string report_to_json(const HierarchyReport& report,
                           const std::optional<OracleResult>& oracle,
                           const ReportTimings& timings) {
  ordered_json r;
  r["instance"]["name"] = report.instance.name;
  r["instance"]["dimension"] = report.instance.dimension;
  r["instance"]["radius"] = report.instance.radius;
  r["instance"]["constraint_count"] = report.instance.constraints.size();
  r["n_min"] = report.n_min;
  r["n_start"] = report.n_start;
  r["n_max"] = report.n_max;
  r["tolerance"] = report.tolerance;

  ordered_json orders = ordered_json::array();
  for (const OrderRecord& rec : report.orders) {
    ordered_json o;
    o["order"] = rec.order;
    o["status"] = to_string(rec.status);
    o["bound"] = rec.bound;
    o["minimizer"] = rec.minimizer;
    o["value"] = rec.value;
    o["gap"] = rec.gap;
    o["feasible_point"] = rec.feasible_point;
    o["exact"] = rec.exact;
    o["iterations"] = rec.iterations;
    o["message"] = rec.message;
    orders.push_back(std::move(o));
  }
  r["orders"] = std::move(orders);

  r["certified"] = report.certified;
  r["certified_order"] = report.certified_order;
  r["best_bound"] = report.best_bound;  // serialized as null until some order solves
  r["minimizer"] = report.minimizer;
  if (report.minimizer_value) {
    r["minimizer_value"] = *report.minimizer_value;
  } else {
    r["minimizer_value"] = nullptr;
  }

  if (report.certificate) {
    const CertificateBundle& b = *report.certificate;
    ordered_json c;
    c["degrees"] = b.degrees;
    c["bounds"] = b.bounds;
    c["constraint_degrees"] = b.constraint_degrees;
    c["residual"] = b.residual;
    c["t_star"] = b.t_star;
    r["certificate"] = std::move(c);
  } else {
    r["certificate"] = nullptr;
  }
  if (report.predicted_order) {
    r["predicted_order"] = *report.predicted_order;
  } else {
    r["predicted_order"] = nullptr;
  }
  r["exactness_without_certificate"] = report.exactness_without_certificate;
  r["certificate_note"] = report.certificate_note;

  if (oracle) {
    ordered_json o;
    o["value"] = oracle->value;
    o["argmin"] = oracle->argmin;
    o["samples_used"] = oracle->samples_used;
    o["polish_converged"] = oracle->polish_converged;
    o["gap_to_best_bound"] = oracle->value - report.best_bound;
    r["oracle"] = std::move(o);
  } else {
    r["oracle"] = nullptr;
  }

  r["timings_ms"]["total"] = timings.total_ms;
  r["timings_ms"]["certificate"] = timings.certificate_ms;
  r["timings_ms"]["relaxation"] = timings.relaxation_ms;
  r["timings_ms"]["oracle"] = timings.oracle_ms;
  return r.dump(2) + "\n";
}

}  // namespace momsos
