#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmx/ball.hpp"
#include "qmx/enumerate.hpp"
#include "qmx/qm.hpp"
#include "qmx/relball.hpp"
#include "qmx/relword.hpp"

namespace qmx {

struct ExtensionParams {
  Rat C0 = 1;       // linear control constant, must be positive
  Rat D_upper = 0;  // certified defect upper bound for the subgroup qm
  Rat C;            // penalty per X-letter
  Rat epsilon;      // audit tolerance, in (0, C0)
  Rat qinv_upper;   // per-move cost of rebalancing K-letters by conjugation
  int x_length_cap = 6;
  Rat declared_slack = 0;  // certification closes when upper - lower <= this
  EnumOptions enumeration;
  // subpaths of minimizers are expected to be (3,2)-quasi-geodesics
  int qg_lambda = 3;
  int qg_mu = 2;
};

inline void validate_params(const ExtensionParams& p) {
  if (p.C0 <= 0) fail(Errc::schema_error, "C0 must be positive");
  if (p.D_upper < 0) fail(Errc::schema_error, "defect bound cannot be negative");
  if (p.C < 20 * p.C0 + 11 * p.D_upper)
    fail(Errc::schema_error, "C below the standing bound 20*C0 + 11*D: " + rat_str(p.C));
  if (p.epsilon <= 0 || p.epsilon >= p.C0)
    fail(Errc::schema_error, "epsilon must lie strictly between 0 and C0");
  if (p.declared_slack < 0) fail(Errc::schema_error, "declared slack cannot be negative");
}

inline ExtensionParams make_extension_params(Rat C0, Rat D_upper) {
  ExtensionParams p;
  if (C0 <= 0) C0 = 1;  // a zero fit still needs a positive constant downstream
  p.C0 = C0;
  p.D_upper = std::move(D_upper);
  p.C = 20 * p.C0 + 11 * p.D_upper;
  p.epsilon = p.C0 / 2;
  p.qinv_upper = 2 * p.D_upper;
  return p;
}

struct ExtensionValue {
  Rat lower;
  Rat upper;
  RelWord witness;
  bool certified = false;
  int searched_x = -1;  // x-length horizon the certificate covers, -1 if exhausted
};

// Minimize phi~_C over theta-preimages of g with a certificate.
//
// Strata are indexed by the number of X-letters.  For the searched strata the
// enumerated single-solved-K candidates are within slack(L) of the true
// stratum minimum (a candidate's K-letters collapse into one slot by at most
// L conjugation moves, each costing at most qinv_upper, plus 2D per reduced
// length-two split); for the unsearched strata the penalty term gives the
// cutoff bound phi~_C(a) >= phi~(b) - 2D - 4*C0*|b|_X + (C - 4*C0)*(L+1) for
// any reference preimage b.  The scan deepens L until the gap between the
// incumbent and the certified floor closes to the declared slack.
inline ExtensionValue extension_value(const Word& g_in, const Quasimorphism& phi,
                                      const ExtensionParams& params, const RelAlphabet& alph,
                                      std::optional<int> dist_hint = std::nullopt) {
  validate_params(params);
  const GroupContext& ctx = *alph.ambient;
  Word g = ctx.reduce(g_in);

  // exact on the subgroup: the single K-letter realizes the infimum
  if (membership(ctx, alph.K, g) && params.C > 4 * params.C0 + params.D_upper) {
    ExtensionValue v;
    RelWord w;
    if (!ctx.is_identity(g)) w.syl.push_back(KLetter{g});
    v.upper = qm_eval(phi, g);
    v.lower = v.upper;
    v.witness = std::move(w);
    v.certified = true;
    v.searched_x = 0;
    return v;
  }

  int cap = params.x_length_cap;
  if (dist_hint)
    cap = std::min(cap, params.qg_lambda * *dist_hint + params.qg_mu);

  ExtensionValue best;
  bool have_val = false, have_bounds = false;
  Rat bound_i;   // max over b of phi~(b) - C|b|_X - D
  Rat cut_base;  // max over b of phi~(b) - 2D - 4*C0*|b|_X
  Rat best_lower;
  bool have_lower = false;
  for (int L = 0; L <= cap; ++L) {
    EnumOptions eo = params.enumeration;
    eo.max_x_letters = cap;
    eo.exact_x = L;
    std::vector<RelWord> stratum = enumerate_preimages(g, alph, eo);
    for (RelWord& a : stratum) {
      Rat plain = phi_tilde(phi, alph, a);
      Rat xl = Rat(static_cast<long long>(x_count(a)));
      Rat value = plain + params.C * xl;
      Rat bi = plain - params.C * xl - params.D_upper;
      Rat cb = plain - 2 * params.D_upper - 4 * params.C0 * xl;
      if (!have_bounds || bi > bound_i) bound_i = bi;
      if (!have_bounds || cb > cut_base) cut_base = cb;
      have_bounds = true;
      if (!have_val || value < best.upper) {
        best.upper = value;
        best.witness = std::move(a);
        have_val = true;
      }
    }
    if (!have_val) continue;
    // strata beyond L: the X-penalty alone forces the cutoff line; strata up
    // to L: complete up to collapsing K-letters into the solved slot, costing
    // at most slack(L)
    Rat cutoff = cut_base + (params.C - 4 * params.C0) * Rat(L + 1);
    Rat slack = 2 * Rat(L) * params.D_upper + Rat(L + 1) * params.qinv_upper;
    Rat lower = std::min(Rat(best.upper - slack), cutoff);
    if (bound_i > lower) lower = bound_i;
    if (lower > best.upper) lower = best.upper;  // the witness value is attained
    if (!have_lower || lower > best_lower) best_lower = lower;
    have_lower = true;
    best.lower = best_lower;
    best.searched_x = L;
    if (best.upper - best_lower <= params.declared_slack) {
      best.certified = true;
      return best;
    }
  }
  if (!have_val)
    fail(Errc::no_candidate_found, "no theta-preimage found within the X-length cap");
  best.certified = best.upper - best.lower <= params.declared_slack;
  return best;
}

inline std::pair<Rat, RelWord> phi_C_upper(const Word& g, const Quasimorphism& phi,
                                           const ExtensionParams& params, const RelAlphabet& alph,
                                           std::optional<int> dist_hint = std::nullopt) {
  ExtensionValue v = extension_value(g, phi, params, alph, dist_hint);
  return {v.upper, v.witness};
}

// Certified lower bound given any reference preimage b of g.
inline Rat phi_C_lower(const Word& g, const Quasimorphism& phi, const ExtensionParams& params,
                       const RelAlphabet& alph, const RelWord& b,
                       std::optional<int> dist_hint = std::nullopt) {
  if (!alph.ambient->equal(theta(alph, b), g))
    fail(Errc::lift_mismatch, "reference word is not a theta-preimage of the query");
  Rat from_b = phi_tilde(phi, alph, b) -
               params.C * Rat(static_cast<long long>(x_count(b))) - params.D_upper;
  ExtensionValue v = extension_value(g, phi, params, alph, dist_hint);
  return std::max(from_b, v.lower);
}

// The antisymmetrized extension (upper(g) - upper(g^-1)) / 2, with a shared
// memo of search results.  Uncertified constituents are surfaced in metadata
// rather than raised: the value is still the best found.
struct ExtendedQm {
  Quasimorphism qm;
  std::shared_ptr<std::map<std::string, ExtensionValue>> cache;
  std::shared_ptr<std::vector<std::string>> uncertified;
  ExtensionParams params;
  RelAlphabet alph;

  const ExtensionValue& value_of(const Word& g) const {
    const GroupContext& ctx = *alph.ambient;
    Word r = ctx.reduce(g);
    std::string key = ctx.has_canonical() ? ctx.canonical_key(r) : word_key(r);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    ExtensionValue v = extension_value(r, qm_base(), params, alph);
    if (!v.certified) uncertified->push_back(key);
    return cache->emplace(std::move(key), std::move(v)).first->second;
  }

  const Quasimorphism& qm_base() const { return *base_; }
  std::shared_ptr<Quasimorphism> base_;
};

inline ExtendedQm extended_qm(const Quasimorphism& phi, const ExtensionParams& params,
                              const RelAlphabet& alph, std::string name = "") {
  validate_params(params);
  ExtendedQm ext;
  ext.cache = std::make_shared<std::map<std::string, ExtensionValue>>();
  ext.uncertified = std::make_shared<std::vector<std::string>>();
  ext.params = params;
  ext.alph = alph;
  ext.base_ = std::make_shared<Quasimorphism>(phi);

  Quasimorphism out;
  out.name = name.empty() ? phi.name + "_ext" : std::move(name);
  out.ctx = alph.ambient;
  out.domain = WholeGroup{};
  out.antisymmetric = true;
  out.homomorphism = false;
  out.invariant_claimed = false;
  auto cache = ext.cache;
  auto uncert = ext.uncertified;
  auto base = ext.base_;
  RelAlphabet al = alph;
  ExtensionParams ps = params;
  out.evaluator = [cache, uncert, base, al, ps](const Word& reduced) -> Rat {
    auto upper_of = [&](const Word& w) -> Rat {
      const GroupContext& ctx = *al.ambient;
      Word r = ctx.reduce(w);
      std::string key = ctx.has_canonical() ? ctx.canonical_key(r) : word_key(r);
      auto it = cache->find(key);
      if (it == cache->end()) {
        ExtensionValue v = extension_value(r, *base, ps, al);
        if (!v.certified) uncert->push_back(key);
        it = cache->emplace(std::move(key), std::move(v)).first;
      }
      return it->second.upper;
    };
    return (upper_of(reduced) - upper_of(word_inverse(reduced))) / 2;
  };
  ext.qm = std::move(out);
  return ext;
}

struct DefectReportRow {
  std::uint32_t radius = 0;
  Rat defect;
  std::size_t pairs = 0;
};

struct ExtensionDefectReport {
  std::vector<DefectReportRow> per_radius;
  Rat empirical_defect;  // value at the largest radius
  std::string sample_spec;
};

// Empirical defect of the extension over seeded pairs from a ball, reported
// per radius with nested samples (a pair enters every radius that contains
// both endpoints), so the per-radius values are monotone by construction and
// plateaus are visible.
inline ExtensionDefectReport defect_report(const Quasimorphism& Phi, const Ball& b,
                                           std::size_t pair_budget, std::uint64_t seed,
                                           std::vector<std::uint32_t> radii = {}) {
  if (radii.empty())
    for (std::uint32_t r = 1; r <= b.radius; ++r) radii.push_back(r);
  std::sort(radii.begin(), radii.end());

  ExtensionDefectReport rep;
  rep.sample_spec = pair_budget == 0 ? "empty"
                                     : std::to_string(pair_budget) + " seeded pairs, seed " +
                                           std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> picks;
  for (std::size_t t = 0; t < pair_budget; ++t) {
    std::uint32_t i = static_cast<std::uint32_t>(rng() % b.elements.size());
    std::uint32_t j = static_cast<std::uint32_t>(rng() % b.elements.size());
    picks.emplace_back(i, j);
  }
  for (std::uint32_t r : radii) {
    DefectReportRow row;
    row.radius = r;
    row.defect = 0;
    for (const auto& [i, j] : picks) {
      if (b.dist[i] > r || b.dist[j] > r) continue;
      ++row.pairs;
      const Word& gi = b.elements[i];
      const Word& gj = b.elements[j];
      Word prod = b.ctx->reduce(concat(gi, gj));
      Rat d = rat_abs(qm_eval(Phi, gi) + qm_eval(Phi, gj) - qm_eval(Phi, prod));
      if (d > row.defect) row.defect = d;
    }
    rep.per_radius.push_back(std::move(row));
  }
  rep.empirical_defect = rep.per_radius.empty() ? Rat(0) : rep.per_radius.back().defect;
  return rep;
}

struct AuditResult {
  std::size_t passed = 0;
  std::size_t failed = 0;
  Rat fraction;  // passed / audited, 1 when nothing audited
};

// Check each witness path (prefix images of its syllables, every syllable a
// unit step in the relative graph) against the (lambda, mu) subpath bound,
// using distances measured inside the given ball.  Ball distances only
// overestimate the true relative distance, so a reported failure is sound;
// endpoint pairs unreachable within the ball are not counted against the
// witness.
inline AuditResult witness_quasigeodesic_audit(const std::vector<RelWord>& witnesses,
                                               const RelBall& rb, int lambda = 3, int mu = 2) {
  AuditResult res;
  const GroupContext& ctx = *rb.alph->ambient;
  for (const RelWord& w : witnesses) {
    std::vector<std::uint32_t> ids;
    Word cur;
    for (std::size_t i = 0; i <= rel_len(w); ++i) {
      if (i > 0) {
        RelWord one;
        one.syl.push_back(w.syl[i - 1]);
        cur = ctx.reduce(concat(cur, theta(*rb.alph, one)));
      }
      auto id = rb.find(cur);
      if (!id)
        fail(Errc::witness_outside_ball, "witness prefix leaves the audited ball");
      ids.push_back(*id);
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < ids.size(); ++i) {
      std::vector<std::uint32_t> dist = bfs_from(rb, ids[i]);
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        if (dist[ids[j]] == kUnreached) continue;  // cannot refute inside the ball
        if (static_cast<long long>(j - i) >
            static_cast<long long>(lambda) * dist[ids[j]] + mu) {
          ok = false;
          break;
        }
      }
    }
    ++(ok ? res.passed : res.failed);
  }
  std::size_t audited = res.passed + res.failed;
  res.fraction = audited == 0 ? Rat(1) : Rat(static_cast<long long>(res.passed)) /
                                             Rat(static_cast<long long>(audited));
  return res;
}

// Contiguous syllable range [i, j) as a normal-form RelWord.
inline RelWord rel_subword(const RelAlphabet& alph, const RelWord& a, std::size_t i,
                           std::size_t j) {
  RelWord sub;
  for (std::size_t t = i; t < j && t < a.syl.size(); ++t) sub.syl.push_back(a.syl[t]);
  return normal_form(alph, sub);
}

}  // namespace qmx
