#include "monostab/report.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#ifndef MONOSTAB_VERSION
#define MONOSTAB_VERSION "0.0.0"
#endif

namespace monostab {

using nlohmann::json;

namespace {

json vectors(const std::vector<StateVector>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

template <class T>
json optional_or_null(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(x);
}

json header(const RunContext& ctx) {
  return {{"tool", "monostab"},
          {"tool_version", version()},
          {"seed", ctx.seed},
          {"config_hash", ctx.config_hash}};
}

json condition_i_json(const ConditionI& c, const RouteSpec& route) {
  json j = {{"established", c.established},
            {"route", to_string(route.kind)},
            {"evidence", evidence_name(route.kind)},
            {"notes", c.notes}};
  if (c.probe_lo) j["uniqueness_v_lo"] = to_json(*c.probe_lo);
  if (c.probe_hi) j["uniqueness_v_hi"] = to_json(*c.probe_hi);
  if (!c.supported_by.empty()) j["supported_by"] = c.supported_by;
  if (c.sampled_hi || c.analytic_bound_hi) {
    j["contraction"] = {
        {"analytic_bound_v_hi", optional_number(c.analytic_bound_hi)},
        {"analytic_bound_v_lo", optional_number(c.analytic_bound_lo)},
        {"sampled_v_hi", optional_or_null(c.sampled_hi)},
        {"sampled_v_lo", optional_or_null(c.sampled_lo)},
        {"sampled_region",
         c.sampled_region ? json{{"low", to_json(c.sampled_region->low())},
                                 {"high", to_json(c.sampled_region->high())}}
                          : json(nullptr)},
        {"caveat", "sampled ratios are lower bounds on the Lipschitz constant"}};
  }
  if (c.concavity_hi || c.concavity_lo) {
    j["concavity"] = {{"v_hi", optional_or_null(c.concavity_hi)},
                      {"v_lo", optional_or_null(c.concavity_lo)}};
  }
  if (c.bracket) {
    const auto& b = *c.bracket;
    j["bracket"] = {{"a", to_json(b.a)},           {"b", to_json(b.b)},
                    {"w_a_v_hi", to_json(b.w_a_hi)}, {"w_a_v_lo", to_json(b.w_a_lo)},
                    {"w_b_v_hi", to_json(b.w_b_hi)}, {"w_b_v_lo", to_json(b.w_b_lo)},
                    {"pass", b.pass}};
  }
  if (c.space_bounded) j["space_bounded"] = *c.space_bounded;
  return j;
}

json condition_ii_json(const ConditionII& c) {
  json points = json::array();
  for (const auto& p : c.points) {
    json pj = p.bounds ? to_json(*p.bounds) : json{{"x", to_json(p.x)}};
    if (!p.error.empty()) pj["error"] = p.error;
    pj["pass"] = p.bounds.has_value();
    points.push_back(std::move(pj));
  }
  return {{"established", c.established}, {"points", std::move(points)}};
}

}  // namespace

const char* version() { return MONOSTAB_VERSION; }

json to_json(const StateVector& x) { return x.values(); }
json to_json(const ShockVector& v) { return v.values(); }

json to_json(const OrderedNormalPair& pair) {
  return {{"v_hi", to_json(pair.shocks.v_hi)},
          {"v_lo", to_json(pair.shocks.v_lo)},
          {"p_up", pair.p_up},
          {"p_down", pair.p_down},
          {"dominance_samples", pair.dominance_samples}};
}

json to_json(const BoundingPair& bp) {
  return {{"x", to_json(bp.x)},
          {"y_lo", to_json(bp.y_lo)},
          {"y_hi", to_json(bp.y_hi)},
          {"y_lo_source", to_string(bp.lo_source)},
          {"y_hi_source", to_string(bp.hi_source)},
          {"search_steps", bp.search_steps},
          {"y_lo_residual", bp.lo_residual},
          {"y_hi_residual", bp.hi_residual}};
}

json to_json(const SplittingCertificate& cert) {
  return {{"x_low", to_json(cert.x_low)},
          {"x_high", to_json(cert.x_high)},
          {"z_start", to_json(cert.z_start)},
          {"y_start", to_json(cert.y_start)},
          {"z_substituted", cert.z_substituted},
          {"y_substituted", cert.y_substituted},
          {"C", to_json(cert.C)},
          {"C_star", to_json(cert.C_star)},
          {"x_split", to_json(cert.x_split)},
          {"m", cert.m},
          {"m_counts", "transitions"},
          {"prob_bound", cert.prob_bound},
          {"residual_z", cert.residual_z},
          {"residual_y", cert.residual_y},
          {"trace_z", vectors(cert.trace_z)},
          {"trace_y", vectors(cert.trace_y)}};
}

json to_json(const UniquenessProbe& probe) {
  json limits = json::array();
  for (const auto& l : probe.limits) limits.push_back(optional_or_null(l));
  json j = {{"verdict", to_string(probe.verdict)},
            {"starts", vectors(probe.starts)},
            {"limits", std::move(limits)},
            {"failures", probe.failures},
            {"spread", probe.spread}};
  if (probe.witnesses) {
    j["witnesses"] = {to_json(probe.witnesses->first), to_json(probe.witnesses->second)};
  }
  return j;
}

json to_json(const ContractionEstimate& est) {
  json j = {{"constant_lower_bound", est.constant_lower_bound},
            {"sample_count", est.sample_count},
            {"is_contraction_evidence", est.is_contraction_evidence}};
  if (est.worst_pair) j["worst_pair"] = {to_json(est.worst_pair->first), to_json(est.worst_pair->second)};
  return j;
}

json to_json(const ConcavityVerdict& verdict) {
  json coords = json::array();
  for (const auto& c : verdict.coords) {
    json cj = {{"verdict", to_string(c.verdict)},
               {"worst_violation", c.worst_violation},
               {"strict_pairs", c.strict_pairs},
               {"min_strict_gap", c.min_strict_gap}};
    if (c.witness) {
      cj["witness"] = {{"x", to_json(c.witness->x)},
                       {"y", to_json(c.witness->y)},
                       {"lambda", c.witness->lambda},
                       {"gap", c.witness->gap}};
    }
    coords.push_back(std::move(cj));
  }
  return {{"coordinates", std::move(coords)}, {"all_strict", verdict.all_strict()}};
}

json to_json(const BinomialEstimate& b) {
  return {{"successes", b.successes},   {"trials", b.trials},
          {"estimate", b.estimate},     {"ci95", {b.ci_low, b.ci_high}},
          {"ci95_exact", {b.exact_low, b.exact_high}}};
}

json to_json(const TightnessReport& t) {
  json containing = json::array();
  for (std::size_t e = 0; e < t.epsilons.size(); ++e) {
    containing.push_back({{"epsilon", t.epsilons[e]},
                          {"radius", optional_number(t.containing_radius[e])}});
  }
  return {{"starts", vectors(t.starts)},
          {"horizon", t.horizon},
          {"reps", t.reps},
          {"checkpoints", t.checkpoints},
          {"radii", t.radii},
          {"mass_outside", t.mass_outside},
          {"containing_radius", std::move(containing)},
          {"pass", t.pass},
          {"caveat", "diagnostic only; tightness is not proven"}};
}

json to_json(const CouplingResult& c) {
  json witnesses = json::array();
  for (const auto& w : c.witnesses) {
    witnesses.push_back({{"rep", w.rep},
                         {"step", w.step},
                         {"low_state", to_json(w.low_state)},
                         {"high_state", to_json(w.high_state)}});
  }
  return {{"mode", CouplingResult::kMode},
          {"reps", c.reps},
          {"horizon", c.horizon},
          {"violations", c.violations},
          {"witnesses", std::move(witnesses)},
          {"max_final_gap", c.max_final_gap},
          {"pass", c.violations == 0}};
}

json to_json(const CrossingResult& c) {
  return {{"mode", CrossingResult::kMode}, {"m", c.m}, {"probability", to_json(c.probability)}};
}

json to_json(const ConvergenceReport& c) {
  json pairs = json::array();
  for (const auto& p : c.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"curve", p.curve},
                     {"final_distance", p.final_distance}});
  }
  return {{"starts", vectors(c.starts)},
          {"metric", to_string(c.metric)},
          {"threshold", c.threshold},
          {"burn_in", c.burn_in},
          {"samples", c.n_samples},
          {"thinning", c.thinning},
          {"checkpoints", c.checkpoints},
          {"pairs", std::move(pairs)},
          {"max_final_distance", c.max_final_distance},
          {"pass", c.pass},
          {"caveat",
           "convergence is checked on per-coordinate marginals, not in the weak topology on "
           "joint laws"}};
}

json certificate_document(const StabilityReport& report, const RunContext& ctx) {
  json doc = header(ctx);
  doc["kind"] = "certificate";
  doc["model"] = {{"config", ctx.config}, {"hash", ctx.config_hash}};

  json pair = report.normal_pair ? to_json(*report.normal_pair)
                                 : json{{"v_hi", to_json(report.pair.v_hi)},
                                        {"v_lo", to_json(report.pair.v_lo)}};
  pair["valid"] = report.normal_pair.has_value();
  if (!report.normal_pair_error.empty()) pair["error"] = report.normal_pair_error;
  doc["pair"] = std::move(pair);

  json route = {{"name", to_string(report.route.kind)}, {"evidence", evidence_name(report.route.kind)}};
  if (report.route.a) route["a"] = to_json(*report.route.a);
  if (report.route.b) route["b"] = to_json(*report.route.b);
  doc["route"] = std::move(route);

  doc["test_points"] = vectors(report.test_points);
  doc["condition_i"] = condition_i_json(report.condition_i, report.route);
  doc["condition_ii"] = condition_ii_json(report.condition_ii);
  doc["splitting"] = optional_or_null(report.splitting);
  if (!report.splitting_error.empty()) doc["splitting_error"] = report.splitting_error;
  json pairs = json::array();
  for (const auto& c : report.splitting_pairs) pairs.push_back(to_json(c));
  doc["splitting_pairs"] = std::move(pairs);
  doc["tightness"] = optional_or_null(report.tightness);
  if (!report.tightness_error.empty()) doc["tightness_error"] = report.tightness_error;
  if (report.empirical_crossing) {
    const auto& cc = *report.empirical_crossing;
    doc["empirical_crossing"] = {{"result", to_json(cc.result)},
                                 {"bound", cc.bound},
                                 {"sigma", cc.sigma},
                                 {"sound", cc.sound}};
  } else {
    doc["empirical_crossing"] = nullptr;
  }
  doc["overall"] = report.overall();
  doc["certified"] = report.certified;
  doc["failure_reason"] = report.failure_reason.empty() ? json(nullptr) : json(report.failure_reason);

  const auto& o = report.options;
  doc["tolerances"] = {{"tol", o.tol},
                       {"max_iter", o.max_iter},
                       {"separation", 100.0 * o.tol},
                       {"concavity_tol", o.concavity_tol},
                       {"search_cap", o.search_cap}};
  doc["budgets"] = {{"dominance_samples", o.dominance_samples},
                    {"sampling_radius", o.sampling_radius},
                    {"contraction_pairs", o.contraction_pairs},
                    {"concavity_triples", o.concavity_triples},
                    {"tightness_horizon", o.tightness_horizon},
                    {"tightness_reps", o.tightness_reps},
                    {"crossing_reps", o.crossing_reps}};
  return doc;
}

json report_document(const std::string& kind, json body, const RunContext& ctx) {
  json doc = header(ctx);
  doc["kind"] = kind;
  doc["model"] = {{"config", ctx.config}, {"hash", ctx.config_hash}};
  doc["result"] = std::move(body);
  return doc;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

std::string trajectories_csv(const std::vector<Trajectory>& runs, const RunContext& ctx) {
  std::string out = "# monostab " + std::string(version()) + " seed=" + std::to_string(ctx.seed) +
                    " config_hash=" + ctx.config_hash + "\n";
  const std::size_t n = runs.empty() ? 0 : runs.front().start.size();
  out += "rep,step";
  for (std::size_t i = 0; i < n; ++i) out += ",coord_" + std::to_string(i);
  out += "\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t k = 0; k < runs[r].states.size(); ++k) {
      out += std::to_string(r) + "," + std::to_string(k);
      for (double x : runs[r].states[k]) out += "," + shortest(x);
      out += "\n";
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace monostab
