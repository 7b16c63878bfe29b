#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmx/control.hpp"
#include "qmx/extend.hpp"
#include "qmx/presentation.hpp"
#include "qmx/report.hpp"
#include "qmx/scenario.hpp"
#include "qmx/scl.hpp"

namespace qmx {

struct RunResult {
  Report report;
  int exit_code = 0;
  std::vector<std::pair<std::string, double>> timings_ms;  // stderr material, never in the report
};

namespace detail {

struct PipeState {
  CtxPtr ctx;
  SubgroupSpec K = WholeGroup{};
  std::optional<RelAlphabet> alph;
  std::vector<Quasimorphism> qms;
  std::optional<Rat> fitted_C0;  // raw fit published by check-controlled
  ScenarioBudgets budgets;
  std::uint64_t seed = 0;
};

inline CtxPtr build_group(const GroupConfig& g) {
  if (g.type == "free") return make_free_group(g.generators);
  if (g.type == "free_abelian") return make_free_abelian(g.generators);
  if (g.type == "heisenberg") return make_heisenberg();
  if (g.type == "z_cross_f2") return make_z_cross_f2();
  return make_sc_quotient(g.generators, g.relators);
}

inline SubgroupSpec build_subgroup(const SubgroupConfig& s, const CtxPtr& ctx) {
  if (s.type == "whole") return WholeGroup{};
  if (s.type == "kernel") {
    Homomorphism h;
    h.target = make_free_abelian({"t"});
    for (const std::string& im : s.images) h.images.push_back(parse_word(h.target->pres.alphabet, im));
    return KernelSpec{std::move(h)};
  }
  NormalClosureSpec n;
  for (const std::string& w : s.words) n.words.push_back(parse_word(ctx->pres.alphabet, w));
  // membership behind a normal closure is only decided through a certified
  // C'(1/6) quotient; without the certificate the description stays declarative and
  // any membership query reports the undecidability instead of guessing
  try {
    n.quotient = make_sc_quotient(ctx->pres.alphabet.names, s.words);
  } catch (const Error&) {
    n.quotient = nullptr;
  }
  return n;
}

inline Quasimorphism build_qm(const QmSpecConfig& q, const CtxPtr& ctx) {
  if (q.kind == "exponent_sum") return exponent_qm(ctx, q.weights, q.name);
  Word pat = parse_word(ctx->pres.alphabet, q.pattern);
  if (q.kind == "brooks_little") {
    Quasimorphism phi = brooks_qm(ctx, pat, q.name);
    if (q.certified_defect) phi.certified_defect_upper = *q.certified_defect;
    return phi;
  }
  Quasimorphism base = brooks_qm(ctx, pat, q.name + "_base");
  return homogenized_power_qm(base, static_cast<unsigned>(q.N), q.certified_defect, q.name);
}

inline const Quasimorphism& pick_qm(const PipeState& st, const Json& params) {
  if (params.contains("qm")) {
    std::string name = params["qm"].get<std::string>();
    for (const Quasimorphism& q : st.qms)
      if (q.name == name) return q;
    fail(Errc::schema_error, "no quasimorphism named '" + name + "'");
  }
  if (st.qms.empty()) fail(Errc::schema_error, "scenario declares no quasimorphisms");
  return st.qms.front();
}

inline std::string wstr(const PipeState& st, const Word& w) { return word_str(st.ctx->pres.alphabet, w); }

// Extension constants: explicit task parameters win; C0 falls back to the
// clamped control fit, D to the quasimorphism's certified defect bound (with
// no certificate there is nothing sound to extend against).
inline ExtensionParams derive_extension_params(const PipeState& st, const Json& p, const Quasimorphism& phi) {
  Rat C0 = 1;
  if (p.contains("C0"))
    C0 = detail::get_rat(p["C0"], "params.C0");
  else if (st.fitted_C0 && *st.fitted_C0 > 0)
    C0 = *st.fitted_C0;
  Rat D = 0;
  if (p.contains("D_upper")) {
    D = detail::get_rat(p["D_upper"], "params.D_upper");
  } else if (phi.certified_defect_upper) {
    D = *phi.certified_defect_upper;
  } else {
    fail(Errc::schema_error, "extension needs a certified defect bound for '" + phi.name +
                                 "' (set certified_defect or D_upper)");
  }
  ExtensionParams params = make_extension_params(C0, D);
  if (p.contains("C")) params.C = detail::get_rat(p["C"], "params.C");
  if (p.contains("x_length_cap")) params.x_length_cap = p["x_length_cap"].get<int>();
  if (p.contains("declared_slack")) params.declared_slack = detail::get_rat(p["declared_slack"], "params.declared_slack");
  if (p.contains("slack")) params.declared_slack = detail::get_rat(p["slack"], "params.slack");
  if (p.contains("pool_radius")) params.enumeration.pool_radius = p["pool_radius"].get<int>();
  if (p.contains("extra_pool_letters")) params.enumeration.extra_pool_letters = p["extra_pool_letters"].get<int>();
  params.enumeration.max_x_letters = params.x_length_cap;
  params.enumeration.max_candidates = st.budgets.max_candidates;
  return params;
}

inline Json params_echo(const ExtensionParams& p) {
  return Json{{"C", rat_str(p.C)},
              {"C0", rat_str(p.C0)},
              {"D_upper", rat_str(p.D_upper)},
              {"declared_slack", rat_str(p.declared_slack)},
              {"epsilon", rat_str(p.epsilon)},
              {"extra_pool_letters", p.enumeration.extra_pool_letters},
              {"pool_radius", p.enumeration.pool_radius},
              {"qg", Json::array({p.qg_lambda, p.qg_mu})},
              {"qinv_upper", rat_str(p.qinv_upper)},
              {"x_length_cap", p.x_length_cap}};
}

// ---- task bodies ---------------------------------------------------------

inline void run_check_controlled(PipeState& st, const Json& p, TaskResult& out) {
  int maxlen = p["maxlen"].get<int>();
  int window = p.contains("window") ? p["window"].get<int>() : 3;
  const Quasimorphism& phi = pick_qm(st, p);
  EnumOptions opts;
  opts.max_candidates = st.budgets.max_candidates;
  std::vector<RelWord> kernel = kernel_enumerate(*st.alph, maxlen, opts);
  ControlProfile prof = control_profile(phi, *st.alph, kernel, window);
  st.fitted_C0 = prof.fitted_C0;
  Rat clamped = prof.fitted_C0 > 0 ? prof.fitted_C0 : Rat(1);

  Json lengths = Json::array();
  std::string csv = "length,max_abs_phi_tilde\n";
  for (const auto& [n, v] : prof.per_length) {
    lengths.push_back(Json::array({n, rat_str(v)}));
    csv += std::to_string(n) + "," + rat_str(v) + "\n";
  }
  out.data = Json{{"qm", phi.name},
                  {"maxlen", maxlen},
                  {"kernel_elements", kernel.size()},
                  {"fitted_C0", rat_str(prof.fitted_C0)},
                  {"fitted_C0_clamped", rat_str(clamped)},
                  {"verdict", to_string(prof.verdict)},
                  {"window", prof.window},
                  {"per_length", std::move(lengths)}};
  out.csv = std::move(csv);
}

inline void run_estimate_delta(PipeState& st, const Json& p, TaskResult& out) {
  std::uint32_t radius = p["radius"].get<std::uint32_t>();
  std::size_t samples = p["triangle_samples"].get<std::size_t>();
  RelBall rb = rel_ball(*st.alph, radius, {st.budgets.max_ball_elements});
  Rat delta = estimate_delta(rb, samples, st.seed);

  std::string csv = "src,dst,label_kind,label\n";
  for (const RelEdge& e : rb.edges) {
    const Word& lab = e.kind == 'X' ? st.alph->X[e.label] : st.alph->K_pool[e.label];
    csv += std::to_string(e.src) + "," + std::to_string(e.dst) + "," + e.kind + "," + wstr(st, lab) + "\n";
  }
  out.data = Json{{"radius", radius},
                  {"ball_size", rb.size()},
                  {"edges", rb.edges.size()},
                  {"delta_lower", rat_str(delta)},
                  {"triangle_samples", samples}};
  out.csv = std::move(csv);
}

inline void run_extend(PipeState& st, const Json& p, TaskResult& out) {
  const Quasimorphism& phi = pick_qm(st, p);
  ExtensionParams params = derive_extension_params(st, p, phi);
  ExtendedQm ext = extended_qm(phi, params, *st.alph);

  std::vector<Word> elements;
  std::vector<std::optional<int>> hints;
  if (p.contains("ball_radius")) {
    Ball b = ball(st.ctx, p["ball_radius"].get<std::uint32_t>(), {{}, st.budgets.max_ball_elements});
    for (std::size_t i = 0; i < b.size(); ++i) {
      elements.push_back(b.elements[i]);
      hints.push_back(static_cast<int>(b.dist[i]));
    }
  } else {
    for (const auto& t : p["elements"]) {
      elements.push_back(st.ctx->reduce(parse_word(st.ctx->pres.alphabet, t.get<std::string>())));
      hints.push_back(std::nullopt);
    }
  }

  Json rows = Json::array();
  std::string csv = "element,lower,upper,value,certified,searched_x,witness\n";
  std::size_t certified = 0;
  std::vector<RelWord> certified_witnesses;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Word& g = elements[i];
    ExtensionValue v = extension_value(g, phi, params, *st.alph, hints[i]);
    ext.cache->emplace(st.ctx->has_canonical() ? st.ctx->canonical_key(g) : word_key(g), v);
    Rat value = qm_eval(ext.qm, g);
    std::string witness = rel_word_str(*st.alph, v.witness);
    if (v.certified) {
      ++certified;
      certified_witnesses.push_back(v.witness);
    }
    rows.push_back(Json{{"element", wstr(st, g)},
                        {"lower", rat_str(v.lower)},
                        {"upper", rat_str(v.upper)},
                        {"value", rat_str(value)},
                        {"certified", v.certified},
                        {"searched_x", v.searched_x},
                        {"witness", witness}});
    csv += wstr(st, g) + "," + rat_str(v.lower) + "," + rat_str(v.upper) + "," + rat_str(value) + "," +
           (v.certified ? "true" : "false") + "," + std::to_string(v.searched_x) + "," + witness + "\n";
  }
  out.data = Json{{"qm", phi.name},
                  {"params", params_echo(params)},
                  {"elements", elements.size()},
                  {"certified", certified},
                  {"uncertified", elements.size() - certified},
                  {"rows", std::move(rows)}};
  if (p.contains("audit") && p["audit"].get<bool>()) {
    std::uint32_t ar = p.contains("audit_radius") ? p["audit_radius"].get<std::uint32_t>()
                                                  : (p.contains("ball_radius") ? p["ball_radius"].get<std::uint32_t>() + 2 : 6);
    RelBall rb = rel_ball(*st.alph, ar, {st.budgets.max_ball_elements});
    AuditResult audit = witness_quasigeodesic_audit(certified_witnesses, rb, params.qg_lambda, params.qg_mu);
    out.data["audit"] = Json{{"radius", ar},
                             {"witnesses", certified_witnesses.size()},
                             {"passed", audit.passed},
                             {"failed", audit.failed},
                             {"fraction", rat_str(audit.fraction)}};
  }
  out.csv = std::move(csv);
}

inline void run_defect_report(PipeState& st, const Json& p, TaskResult& out) {
  const Quasimorphism& phi = pick_qm(st, p);
  ExtensionParams params = derive_extension_params(st, p, phi);
  ExtendedQm ext = extended_qm(phi, params, *st.alph);

  std::vector<std::uint32_t> radii;
  for (const auto& r : p["radii"]) radii.push_back(r.get<std::uint32_t>());
  std::uint32_t max_radius = *std::max_element(radii.begin(), radii.end());
  std::size_t pair_budget = p["pair_budget"].get<std::size_t>();

  Ball b = ball(st.ctx, max_radius, {{}, st.budgets.max_ball_elements});
  ExtensionDefectReport rep = defect_report(ext.qm, b, pair_budget, st.seed, radii);

  Json rows = Json::array();
  std::string csv = "radius,defect,pairs\n";
  for (const DefectReportRow& row : rep.per_radius) {
    rows.push_back(Json{{"radius", row.radius}, {"defect", rat_str(row.defect)}, {"pairs", row.pairs}});
    csv += std::to_string(row.radius) + "," + rat_str(row.defect) + "," + std::to_string(row.pairs) + "\n";
  }
  out.data = Json{{"qm", phi.name},
                  {"params", params_echo(params)},
                  {"per_radius", std::move(rows)},
                  {"empirical_defect", rat_str(rep.empirical_defect)},
                  {"sample_spec", rep.sample_spec},
                  {"values_computed", ext.cache->size()},
                  {"values_uncertified", ext.uncertified->size()}};
  out.csv = std::move(csv);
}

inline void run_scl_bounds(PipeState& st, const Json& p, TaskResult& out) {
  SclBoundInputs in;
  if (p.contains("n_list")) {
    in.n_list.clear();
    for (const auto& n : p["n_list"]) in.n_list.push_back(n.get<unsigned>());
  }
  if (p.contains("q")) in.q = p["q"].get<int>();
  if (p.contains("radius")) in.radius = p["radius"].get<std::uint32_t>();
  if (p.contains("N")) in.homogenize_N = p["N"].get<unsigned>();
  in.search.product_budget = st.budgets.max_candidates;

  std::vector<Quasimorphism> family;
  if (p.contains("qm"))
    family.push_back(pick_qm(st, p));
  else
    family = st.qms;

  // plain scl in the ambient group unless the task opts into the relative
  // (G, K) version, which needs conjugation-invariant quasimorphisms
  SubgroupSpec K = WholeGroup{};
  if (p.contains("mixed") && p["mixed"].get<bool>()) K = st.K;

  Json rows = Json::array();
  std::string csv = "element,lower,lower_provenance,upper,upper_provenance,mixed_flag\n";
  for (const auto& t : p["elements"]) {
    Word g = st.ctx->reduce(parse_word(st.ctx->pres.alphabet, t.get<std::string>()));
    SclBoundReport rep = scl_bound_report(g, st.ctx, K, family, in);
    Json row = Json{{"element", rep.element},
                    {"lower_provenance", rep.lower_provenance},
                    {"upper_provenance", rep.upper_provenance},
                    {"mixed", rep.mixed}};
    row["lower"] = rep.lower ? Json(rat_str(*rep.lower)) : Json();
    row["upper"] = rep.upper ? Json(rat_str(*rep.upper)) : Json();
    rows.push_back(std::move(row));
    csv += rep.element + "," + (rep.lower ? rat_str(*rep.lower) : "") + "," +
           csv_field(rep.lower_provenance) + "," + (rep.upper ? rat_str(*rep.upper) : "") + "," +
           csv_field(rep.upper_provenance) + "," + (rep.mixed ? "true" : "false") + "\n";
  }
  out.data = Json{{"q", in.q},
                  {"radius", in.radius},
                  {"homogenize_N", in.homogenize_N},
                  {"rows", std::move(rows)}};
  out.csv = std::move(csv);
}

inline void run_central_distortion(PipeState& st, const Json& p, TaskResult& out) {
  Word z = parse_word(st.ctx->pres.alphabet, p["z"].get<std::string>());
  std::vector<Word> xe;
  for (const auto& t : p["X_E"]) xe.push_back(parse_word(st.ctx->pres.alphabet, t.get<std::string>()));
  CentralExtensionCtx cext = make_central_extension_ctx(st.ctx, z, close_under_inverse(*st.ctx, xe));
  std::vector<std::pair<int, Word>> witnesses;
  if (p.contains("witnesses"))
    for (const auto& w : p["witnesses"])
      witnesses.emplace_back(w["n"].get<int>(), parse_word(st.ctx->pres.alphabet, w["word"].get<std::string>()));
  int max_n = p["max_n"].get<int>();
  int ball_radius = p["ball_radius"].get<int>();
  DistortionReport rep = distortion_check(cext, max_n, ball_radius, witnesses, st.budgets.max_ball_elements);

  Json rows = Json::array();
  std::string csv = "n,lower,upper\n";
  for (const DistortionRow& row : rep.table) {
    Json r = Json{{"n", row.n}};
    r["lower"] = row.lower ? Json(*row.lower) : Json();
    r["upper"] = row.upper ? Json(*row.upper) : Json();
    rows.push_back(std::move(r));
    csv += std::to_string(row.n) + "," + (row.lower ? std::to_string(*row.lower) : "") + "," +
           (row.upper ? std::to_string(*row.upper) : "") + "\n";
  }
  out.data = Json{{"z", p["z"].get<std::string>()},
                  {"max_n", max_n},
                  {"ball_radius", rep.ball_radius},
                  {"verdict", to_string(rep.verdict)},
                  {"stable", rep.stable},
                  {"table", std::move(rows)}};
  out.csv = std::move(csv);
}

inline void run_sc_search(PipeState& st, const Json& p, TaskResult& out) {
  std::uint32_t blocks = p.contains("blocks") ? p["blocks"].get<std::uint32_t>() : 6;
  bool balanced = p.contains("balanced") && p["balanced"].get<bool>();
  std::uint32_t max_attempts = p.contains("max_attempts") ? p["max_attempts"].get<std::uint32_t>() : 64;
  Rat lambda = p.contains("lambda") ? detail::get_rat(p["lambda"], "params.lambda") : Rat(1, 6);
  std::size_t dehn_trials = p.contains("dehn_trials") ? p["dehn_trials"].get<std::size_t>() : 50;

  auto found = search_c16_relator(st.ctx->pres.alphabet, blocks, st.seed, balanced, max_attempts);
  if (!found) fail(Errc::no_candidate_found, "no certified relator within " + std::to_string(max_attempts) + " attempts");
  SmallCancellationReport gate = check_small_cancellation({found->relator}, lambda);

  // Dehn spot-check: the relator itself and seeded products of its conjugates
  // must all collapse to the empty word.
  SymmetrizedSet sym = build_symmetrized({found->relator});
  std::mt19937_64 rng(st.seed);
  std::size_t failures = 0;
  bool killed_relator = dehn_reduce(found->relator, sym).word.empty();
  if (!killed_relator) ++failures;
  const Alphabet& ab = st.ctx->pres.alphabet;
  for (std::size_t t = 0; t < dehn_trials; ++t) {
    std::size_t k = 1 + rng() % 3;
    Word prod;
    for (std::size_t j = 0; j < k; ++j) {
      Word u;
      std::size_t len = rng() % 5;
      for (std::size_t i = 0; i < len; ++i) {
        Gen g{static_cast<std::uint32_t>(rng() % ab.size()), 1};
        if (rng() % 2) g.sign = -1;
        u.push_back(g);
      }
      Word r = found->relator;
      if (rng() % 2) r = word_inverse(r);
      Word c = concat(concat(u, r), word_inverse(u));
      prod = concat(prod, c);
    }
    if (!dehn_reduce(prod, sym).word.empty()) ++failures;
  }

  out.data = Json{{"relator", wstr(st, found->relator)},
                  {"relator_length", found->relator.size()},
                  {"attempts", found->attempts},
                  {"balanced", balanced},
                  {"certificate",
                   Json{{"lambda", rat_str(gate.lambda)},
                        {"passes", gate.passes},
                        {"max_piece", gate.max_piece},
                        {"min_relator_len", gate.min_relator_len},
                        {"symmetrized_count", gate.symmetrized_count}}},
                  {"dehn_trials", dehn_trials},
                  {"dehn_failures", failures}};
  out.csv = "relator,length,attempts,max_piece,min_relator_len,dehn_trials,dehn_failures\n" + wstr(st, found->relator) +
            "," + std::to_string(found->relator.size()) + "," + std::to_string(found->attempts) + "," +
            std::to_string(gate.max_piece) + "," + std::to_string(gate.min_relator_len) + "," +
            std::to_string(dehn_trials) + "," + std::to_string(failures) + "\n";
}

}  // namespace detail

inline RunResult run_scenario(const Scenario& sc) {
  using clock = std::chrono::steady_clock;
  RunResult rr;
  rr.report.scenario_echo = sc.echo;

  detail::PipeState st;
  st.budgets = sc.budgets;
  st.seed = sc.seed;
  st.ctx = detail::build_group(sc.group);
  st.K = detail::build_subgroup(sc.subgroup, st.ctx);
  if (sc.relative.present) {
    std::vector<Word> X, pool;
    for (const std::string& t : sc.relative.X) X.push_back(parse_word(st.ctx->pres.alphabet, t));
    for (const std::string& t : sc.relative.K_pool) pool.push_back(parse_word(st.ctx->pres.alphabet, t));
    st.alph = make_rel_alphabet(st.ctx, st.K, X, pool);
  }
  for (const QmSpecConfig& q : sc.quasimorphisms) st.qms.push_back(detail::build_qm(q, st.ctx));

  bool budget_hit = false, task_failed = false;
  for (const TaskConfig& t : sc.tasks) {
    TaskResult res;
    res.name = t.name;
    res.status = "ok";
    auto t0 = clock::now();
    try {
      if (t.name == "check-controlled")
        detail::run_check_controlled(st, t.params, res);
      else if (t.name == "estimate-delta")
        detail::run_estimate_delta(st, t.params, res);
      else if (t.name == "extend")
        detail::run_extend(st, t.params, res);
      else if (t.name == "defect-report")
        detail::run_defect_report(st, t.params, res);
      else if (t.name == "scl-bounds")
        detail::run_scl_bounds(st, t.params, res);
      else if (t.name == "central-distortion")
        detail::run_central_distortion(st, t.params, res);
      else
        detail::run_sc_search(st, t.params, res);
    } catch (const Error& e) {
      res.status = "error";
      res.error = e.what();
      res.data = Json::object();
      res.csv.clear();
      if (e.code() == Errc::budget_exceeded)
        budget_hit = true;
      else
        task_failed = true;
    }
    auto t1 = clock::now();
    rr.timings_ms.emplace_back(t.name, std::chrono::duration<double, std::milli>(t1 - t0).count());
    rr.report.tasks.push_back(std::move(res));
  }
  rr.exit_code = budget_hit ? 4 : (task_failed ? 3 : 0);
  return rr;
}

}  // namespace qmx
