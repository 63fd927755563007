#include "substar/report.hpp"

#include <fmt/format.h>

#include "substar/dynamics.hpp"
#include "substar/gadget.hpp"
#include "substar/kms.hpp"
#include "substar/ktheory.hpp"
#include "substar/relations.hpp"

namespace substar {

namespace {

Json exact(const Rational& q) { return {{"kind", "exact"}, {"value", q.get_str()}}; }

Json tagged(const TraceValue& t) {
  if (t.exact) return exact(*t.exact);
  return {{"kind", "interval"}, {"value", t.value.str(20)}, {"radius", t.error.str(3)}};
}

Json group_pair(const KGroupsB& k) { return {{"K0", k.K0.to_string()}, {"K1", k.K1.to_string()}}; }

Json not_applicable(const std::string& reason) {
  return {{"applicable", false}, {"reason", "not applicable (" + reason + ")"}};
}

/// Empty when the substitution supports the operator-side sections.
std::string structural_gap(const Substitution& s) {
  if (!is_primitive(s).primitive) return "not primitive";
  if (!is_proper(s)) return "not proper";
  return {};
}

}  // namespace

void RunConfig::validate() const {
  if (depth < 8) throw Error(fmt::format("--depth must be >= 8 (got {})", depth));
  if (probe_depth < 2 || probe_depth > 8) throw Error(fmt::format("--probe-depth must be in 2..8 (got {})", probe_depth));
  if (stages < 3) throw Error(fmt::format("--stages must be >= 3 (got {})", stages));
  if (samples < 1) throw Error("--samples must be >= 1");
  if (format != "text" && format != "json" && format != "dot") throw Error("--format must be text, json or dot");
}

std::size_t RunConfig::periodicity_bound(const Substitution& s) const {
  if (bound || !is_primitive(s).primitive || !is_proper(s)) return bound;
  return aperiodicity_threshold(s);
}

Json classify_json(const Substitution& s, const RunConfig& cfg) {
  Json rules = Json::object();
  for (Letter a = 0; a < s.size(); ++a) rules[s.alphabet().symbol(a)] = s.spell(s.image(a));
  Json out{{"command", "classify"}, {"rules", rules}};
  const auto prim = is_primitive(s);
  out["primitive"] = {{"value", prim.primitive}, {"witness", prim.witness}};
  if (const auto p = is_proper(s)) {
    out["proper"] = {{"value", true}, {"first", s.alphabet().symbol(p->first)}, {"last", s.alphabet().symbol(p->last)}};
  } else {
    out["proper"] = {{"value", false}};
  }
  if (const auto n = is_para_periodic(s)) {
    out["para_periodic"] = {{"value", true}, {"N", *n}};
  } else {
    out["para_periodic"] = {{"value", false}};
  }
  if (auto gap = structural_gap(s); !gap.empty()) {
    out["periodicity"] = {{"kind", "unknown"}, {"reason", "decided only for proper primitive input"}};
    return out;
  }
  const auto bound = cfg.periodicity_bound(s);
  const auto per = periodicity(s, bound);
  if (const auto* p = std::get_if<Periodic>(&per)) {
    out["periodicity"] = {{"kind", "periodic"}, {"period", p->period}, {"power", p->power}};
  } else if (const auto* a = std::get_if<Aperiodic>(&per)) {
    out["periodicity"] = {{"kind", "aperiodic"}, {"certified_bound", a->certified_bound}};
  } else {
    const auto& u = std::get<Unknown>(per);
    out["periodicity"] = {{"kind", "unknown"}, {"bound", u.bound}, {"required", u.required}};
  }
  return out;
}

Json relations_json(const Substitution& s, const RunConfig& cfg, bool mutant) {
  if (auto gap = structural_gap(s); !gap.empty()) throw Error("relations need a proper primitive substitution: " + gap);
  Diagram d(s, cfg.depth);
  Algebra alg(d);
  auto rels = relation_suite(d);
  if (mutant) rels.push_back(mutant_relation(d));
  const auto results = run_relations(alg, rels, cfg.probe_depth);
  Json out{{"command", "relations"}, {"probe_depth", cfg.probe_depth}, {"count", results.size()}};
  std::size_t failures = 0, mismatches = 0;
  Json families = Json::object(), rows = Json::array();
  for (const auto& r : results) {
    failures += !r.pass;
    mismatches += !r.symbolic.coefficients_match;
    auto& fam = families[r.family];
    if (fam.is_null()) fam = {{"count", 0}, {"failures", 0}};
    fam["count"] = fam["count"].get<int>() + 1;
    fam["failures"] = fam["failures"].get<int>() + (r.pass ? 0 : 1);
    rows.push_back({{"id", r.id},
                    {"family", r.family},
                    {"pass", r.pass},
                    {"direct", r.direct_pass},
                    {"coefficients_match", r.symbolic.coefficients_match},
                    {"probes", r.symbolic.probes},
                    {"witness", r.witness}});
  }
  out["failures"] = failures;
  out["coefficient_mismatches"] = mismatches;
  out["families"] = families;
  out["results"] = rows;
  out["pass"] = failures == 0;
  return out;
}

Json kgroups_json(const Substitution& s, const RunConfig& cfg) {
  if (!is_primitive(s).primitive) throw Error("K-groups need a primitive substitution");
  Json out{{"command", "kgroups"}};
  const auto kb = k_groups_B(s);
  out["K0"] = kb.K0.to_string();
  out["K1"] = kb.K1.to_string();
  const auto kf = k_groups_F(s);
  out["F"] = {{"K0", kf.K0.to_string()}, {"K1", kf.K1.to_string()}};
  const auto er = eventual_range(occurrence_int_matrix(s));
  out["eventual_range"] = {{"rank", er.rank}, {"stage", er.stage}, {"A", er.A.to_string()}};
  out["ker_one_minus_tau"] = kernel_one_minus_tau(s).to_string();
  out["coker_one_minus_tau"] = cokernel_one_minus_tau(s).to_string();
  const auto oracle = brute_force_k_oracle(s, cfg.stages);
  Json stages = Json::array();
  for (const auto& st : oracle.stages) {
    stages.push_back({{"stage", st.stage}, {"coker", st.coker.to_string()}, {"ker_rank", st.ker_rank}});
  }
  out["oracle"] = {{"stages", stages},
                   {"stabilized", oracle.stabilized},
                   {"stable_from", oracle.stable_from},
                   {"agrees", oracle.agrees}};
  const auto powers = power_invariance_check(s, 3);
  Json pw = Json::array();
  for (std::size_t i = 0; i < powers.groups.size(); ++i) {
    auto g = group_pair(powers.groups[i]);
    g["power"] = i + 1;
    pw.push_back(std::move(g));
  }
  out["powers"] = {{"groups", pw}, {"invariant", powers.pass}};
  out["pass"] = oracle.agrees;
  return out;
}

Json measures_json(const Substitution& s, const RunConfig& cfg) {
  if (auto gap = structural_gap(s); !gap.empty()) return not_applicable(gap);
  Diagram d(s, cfg.depth);
  Trace t(d);
  const auto& p = t.perron();
  Json out{{"applicable", true}};
  if (p.exact) {
    Json v = Json::array();
    for (const auto& x : p.v) v.push_back(exact(x));
    out["lambda"] = exact(p.lambda);
    out["v"] = v;
  } else {
    Json v = Json::array();
    for (const auto& x : p.v_approx) v.push_back({{"kind", "interval"}, {"value", x.str(20)}, {"radius", p.residual.str(3)}});
    out["lambda"] = {{"kind", "interval"},
                     {"value", ((p.lambda_lo + p.lambda_hi) / 2).str(20)},
                     {"radius", ((p.lambda_hi - p.lambda_lo) / 2).str(3)}};
    out["v"] = v;
  }
  Json cylinders = Json::array();
  for (unsigned l = 1; l <= 3; ++l) {
    for (Letter a = 0; a < s.size(); ++a) {
      cylinders.push_back({{"vertex", fmt::format("{}@{}", s.alphabet().symbol(a), l)},
                           {"measure", tagged(t.cylinder_measure(Vertex{a, l}))}});
    }
  }
  out["cylinders"] = cylinders;
  Json sums = Json::array();
  bool ok = true;
  for (unsigned n = 2; n <= 6; ++n) {
    TraceValue total;
    if (p.exact) total.exact = Rational(0);
    for (const auto& f : d.enumerate_paths(n)) {
      const auto mu = t.cylinder_measure(f);
      if (total.exact) *total.exact += *mu.exact;
      total.value += mu.value;
      total.error += mu.error;
    }
    if (total.exact) {
      total.value = Real(total.exact->get_num().get_str()) / Real(total.exact->get_den().get_str());
      ok = ok && *total.exact == 1;
    } else {
      ok = ok && abs(total.value - 1) <= Real("1e-12");
    }
    sums.push_back({{"level", n}, {"total", tagged(total)}});
  }
  out["level_sums"] = sums;
  out["pass"] = ok;
  return out;
}

Json kms_json(const Substitution& s, const RunConfig& cfg) {
  if (auto gap = structural_gap(s); !gap.empty()) return not_applicable(gap);
  const auto n = is_para_periodic(s);
  if (!n) return not_applicable("not para-periodic");
  Diagram d(s, cfg.depth);
  Algebra alg(d);
  Trace t(d);
  const auto r = kms_sample(alg, t, cfg.samples, cfg.seed);
  Json branches = Json::object();
  for (std::size_t i = 0; i < kKmsBranches; ++i) branches[to_string(static_cast<KmsBranch>(i))] = r.per_branch[i];
  return {{"applicable", true}, {"N", *n},         {"pairs", r.pairs},
          {"failures", r.failures}, {"branches", branches}, {"first_failure", r.first_failure},
          {"pass", r.failures == 0}};
}

Json dynamics_json(const Substitution& s, const RunConfig& cfg) {
  if (auto gap = structural_gap(s); !gap.empty()) return not_applicable(gap);
  Diagram d(s, cfg.depth);
  const auto bound = cfg.periodicity_bound(s);
  const auto label = classify_F_sigma(s, bound);
  Json out{{"applicable", true}, {"F_label", {{"kind", label.kind}, {"label", label.label}}}};
  const auto per = periodicity(s, bound);
  bool ok = true;
  if (const auto* p = std::get_if<Periodic>(&per)) {
    const auto o = odometer_profile(s, bound);
    out["odometer"] = {{"period", o.period}, {"power", o.power}, {"base", o.base}};
    Json orbits = Json::array();
    std::size_t expected = p->period;
    for (unsigned n = 1; n <= 6; ++n, expected *= p->power) {
      const auto c = cylinder_orbit(d, n);
      ok = ok && c.cyclic && c.period == expected;
      orbits.push_back({{"level", n}, {"period", c.period}, {"expected", expected}, {"cyclic", c.cyclic}});
    }
    out["cylinder_orbits"] = orbits;
  } else if (std::holds_alternative<Aperiodic>(per)) {
    constexpr std::size_t kLetters = 10000;
    const auto w = vershik_reading(d, kLetters, bound);
    const bool match = w == fixed_point_prefix(s, d.first_letter(), kLetters);
    ok = match;
    out["reading"] = {{"letters", kLetters},
                      {"prefix", s.spell(Word(w.begin(), w.begin() + 64))},
                      {"matches_fixed_word", match}};
  }
  out["pass"] = ok;
  return out;
}

Json gadget_json(const Substitution& s, const RunConfig& cfg) {
  if (auto gap = structural_gap(s); !gap.empty()) return not_applicable(gap);
  constexpr std::size_t kMonomials = 100;
  Diagram d(s, std::max(cfg.depth, 24u));
  Algebra alg(d);
  Json out{{"applicable", true}};
  Json ann = Json::array();
  bool ok = true;
  for (unsigned N : {2u, 3u}) {
    const auto r = annihilation_check(alg, N, kMonomials, cfg.seed + N);
    ok = ok && r.pass();
    ann.push_back({{"N", N},
                   {"samples", r.samples},
                   {"symbolic_failures", r.symbolic_failures},
                   {"operator_failures", r.operator_failures},
                   {"first_failure", r.first_failure}});
  }
  out["annihilation"] = ann;
  const auto c = compression_check(alg, 2, 4, cfg.seed);
  Json paths = Json::array();
  for (const auto& p : c.p) paths.push_back(d.describe(p));
  ok = ok && c.verdict.pass;
  out["compression"] = {{"N", c.N},
                        {"Y", c.y},
                        {"p", paths},
                        {"identity", c.verdict.pass},
                        {"probes", c.verdict.probes},
                        {"normal_form_is_one", c.symbolic_one}};
  out["pass"] = ok;
  return out;
}

Json report_json(const Substitution& s, const RunConfig& cfg) {
  Json out{{"tool", "substar"}, {"format_version", 1}};
  out["config"] = {{"depth", cfg.depth},   {"probe_depth", cfg.probe_depth}, {"bound", cfg.periodicity_bound(s)},
                   {"stages", cfg.stages}, {"samples", cfg.samples},         {"seed", cfg.seed}};
  out["classification"] = classify_json(s, cfg);
  out["classification"].erase("command");
  const auto gap = structural_gap(s);
  if (gap.empty()) {
    Diagram d(s, cfg.depth);
    Json counts = Json::array();
    for (unsigned n = 2; n <= 8; ++n) {
      counts.push_back({{"level", n}, {"paths", d.count_paths(n)}, {"max_nu", d.max_nu(n)}});
    }
    out["diagram"] = {{"depth", cfg.depth}, {"levels", counts}};
    auto rel = relations_json(s, cfg);
    Json failing = Json::array();
    for (const auto& r : rel["results"]) {
      if (!r["pass"].get<bool>()) failing.push_back({{"id", r["id"]}, {"witness", r["witness"]}});
    }
    rel.erase("results");
    rel.erase("command");
    rel["failing"] = failing;
    out["relations"] = rel;
  } else {
    out["diagram"] = not_applicable(gap);
    out["relations"] = not_applicable(gap);
  }
  out["measures"] = measures_json(s, cfg);
  out["kms"] = kms_json(s, cfg);
  if (is_primitive(s).primitive) {
    out["kgroups"] = kgroups_json(s, cfg);
    out["kgroups"].erase("command");
  } else {
    out["kgroups"] = not_applicable("not primitive");
  }
  out["dynamics"] = dynamics_json(s, cfg);
  out["gadget"] = gadget_json(s, cfg);
  bool ok = true;
  for (const char* key : {"relations", "measures", "kms", "kgroups", "dynamics", "gadget"}) {
    if (out[key].contains("pass")) ok = ok && out[key]["pass"].get<bool>();
  }
  out["pass"] = ok;
  return out;
}

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

bool is_tagged(const Json& v) { return v.is_object() && v.contains("kind") && v.contains("value") && v.size() <= 3; }

std::string tagged_text(const Json& v) {
  if (v["kind"] == "exact") return v["value"].get<std::string>() + " (exact)";
  return v["value"].get<std::string>() + " +- " + v["radius"].get<std::string>();
}

void render(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) {
      if (is_tagged(item)) {
        out += pad + key + ": " + tagged_text(item) + "\n";
      } else if (item.is_structured() && !item.empty()) {
        out += pad + key + ":\n";
        render(item, indent + 2, out);
      } else {
        out += pad + key + ": " + (item.is_structured() ? "-" : scalar(item)) + "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (is_tagged(item)) {
        out += pad + "- " + tagged_text(item) + "\n";
      } else if (item.is_object()) {
        std::string inner;
        render(item, indent + 2, inner);
        inner.replace(static_cast<std::size_t>(indent), 2, "- ");
        out += inner;
      } else {
        out += pad + "- " + scalar(item) + "\n";
      }
    }
  } else {
    out += pad + scalar(v) + "\n";
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::string out;
  render(doc, 0, out);
  return out;
}

}  // namespace substar
