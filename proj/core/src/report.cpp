#include "locclab/report.hpp"

#include "locclab/errors.hpp"

namespace locclab::io {

Json to_json(const NormalFormResult& r) {
  Json j;
  j["status"] = status_name(r.status);
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["scale"] = r.scale;
  j["critical"] = state_to_json(r.critical);
  j["accumulated"] = operator_to_json(r.accumulated);
  j["norm_trace"] = r.norm_trace;
  return j;
}

Json to_json(const StabilizerCertificate& c) {
  Json j;
  j["verdict"] = verdict_name(c.verdict);
  j["reason"] = c.reason;
  j["evidence_only"] = true;
  j["criticality_residual"] = c.criticality_residual;
  j["lie_dimension"] = c.lie_dimension;
  j["pair_kernel_dimension"] = c.pair_kernel_dimension;
  j["diagonal_solution_count"] = c.diagonal_solution_count ? Json(*c.diagonal_solution_count) : Json(nullptr);
  j["spectral_checks_passed"] = c.spectral_checks_passed;
  Json checks = Json::array();
  for (const auto& s : c.spectral_checks) {
    Json e;
    e["name"] = s.name;
    e["passed"] = s.passed;
    e["deviation"] = s.deviation;
    checks.push_back(std::move(e));
  }
  j["spectral_checks"] = std::move(checks);
  j["restarts"] = c.restarts;
  Json found = Json::array();
  for (const auto& f : c.heuristic_search_found) {
    Json e;
    e["restart"] = f.restart;
    e["residual"] = f.residual;
    e["distance"] = f.distance;
    e["operator"] = operator_to_json(f.op);
    found.push_back(std::move(e));
  }
  j["heuristic_search_found"] = std::move(found);
  return j;
}

Json to_json(const ConversionReport& r) {
  Json j;
  j["p_max"] = r.p_max;
  j["lambda_max"] = r.lambda_max;
  j["factor_lambda_max"] = r.factor_lambda_max;
  j["deterministic"] = r.deterministic;
  j["lu_witness"] = r.lu_witness ? operator_to_json(*r.lu_witness) : Json(nullptr);
  return j;
}

Json to_json(const SepResult& r) {
  Json j;
  j["feasible"] = r.feasible;
  j["p"] = r.p;
  j["residual"] = r.residual;
  j["affine_residual"] = r.affine_residual;
  j["method"] = r.method;
  return j;
}

Json to_json(const LuEquivResult& r) {
  Json j;
  j["decision"] = decision_name(r.decision);
  j["reason"] = r.reason;
  j["factor_mismatch"] = r.factor_mismatch;
  j["witness_residual"] = r.witness_residual;
  j["witness"] = r.witness ? operator_to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const RateReport& r) {
  Json j;
  j["pmax_bound"] = r.pmax_bound ? Json(*r.pmax_bound) : Json(nullptr);
  j["eisert_bound"] = r.eisert_bound ? Json(*r.eisert_bound) : Json(nullptr);
  j["best"] = r.best;
  return j;
}

Json to_json(const SimulationResult& r) {
  Json j;
  j["shots"] = r.shots;
  j["successes"] = r.successes;
  j["empirical_rate"] = r.rate;
  j["exact_rate"] = r.exact;
  Json t = Json::object();
  for (const auto& [k, v] : r.branch_tallies) t[k] = v;
  j["branch_tallies"] = std::move(t);
  return j;
}

Json to_json(const Spectrum& s) {
  Json j;
  j["eigenvalues"] = std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
  Json groups = Json::array();
  for (const auto& g : s.groups) groups.push_back(Json::array({g.value, g.multiplicity}));
  j["groups"] = std::move(groups);
  return j;
}

SepInstance sep_instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("SEP instance must be a JSON object");
  if (!j.contains("H") || !j.contains("symmetries") || !j.contains("r")) {
    throw ParseError("SEP instance needs fields H, symmetries, r");
  }
  if (!j.at("symmetries").is_array()) throw ParseError("symmetries must be an array");
  if (!j.at("r").is_number()) throw ParseError("r must be a number");
  SepInstance inst{operator_from_json(j.at("H")), {}, j.at("r").get<double>()};
  for (const auto& s : j.at("symmetries")) inst.symmetries.push_back(operator_from_json(s));
  return inst;
}

Json sep_instance_to_json(const SepInstance& inst) {
  Json j;
  j["H"] = operator_to_json(inst.h_factors);
  Json syms = Json::array();
  for (const auto& s : inst.symmetries) syms.push_back(operator_to_json(s));
  j["symmetries"] = std::move(syms);
  j["r"] = inst.r;
  return j;
}

}  // namespace locclab::io
