#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmx/ball.hpp"
#include "qmx/enumerate.hpp"
#include "qmx/qm.hpp"
#include "qmx/relword.hpp"

namespace qmx {

enum class ControlVerdict { LinearlyControlled, GrowthSuspected, Inconclusive };

inline const char* to_string(ControlVerdict v) {
  switch (v) {
    case ControlVerdict::LinearlyControlled: return "LinearlyControlled";
    case ControlVerdict::GrowthSuspected: return "GrowthSuspected";
    default: return "Inconclusive";
  }
}

struct ControlProfile {
  // per_length[n] = max |phi~(a)| over enumerated kernel elements with |a| <= n
  std::vector<std::pair<std::size_t, Rat>> per_length;
  Rat fitted_C0 = 0;  // max |phi~(a)| / (|a| + 1)
  ControlVerdict verdict = ControlVerdict::Inconclusive;
  int window = 3;  // trailing lengths examined for the growth trend
};

// Trend classification over enumerated kernel elements.  Finite enumeration
// can never prove control; the verdict reports whether the per-length maxima
// stay under a linear envelope (ratio per_length/(n+1) nonincreasing past the
// onset) or grow monotonically across the trailing window.
inline ControlProfile control_profile(const Quasimorphism& phi, const RelAlphabet& alph,
                                      const std::vector<RelWord>& kernel, int window = 3,
                                      std::size_t onset = 1) {
  if (kernel.empty()) fail(Errc::empty_kernel_sample, "control profile needs kernel elements");
  ControlProfile prof;
  prof.window = window;
  std::map<std::size_t, Rat> best;
  for (const RelWord& a : kernel) {
    Rat v = rat_abs(phi_tilde(phi, alph, a));
    std::size_t n = rel_len(a);
    auto it = best.find(n);
    if (it == best.end())
      best.emplace(n, v);
    else if (v > it->second)
      it->second = v;
    Rat c0 = v / Rat(static_cast<long long>(n) + 1);
    if (c0 > prof.fitted_C0) prof.fitted_C0 = c0;
  }
  Rat running = 0;
  std::size_t maxn = best.rbegin()->first;
  for (std::size_t n = 0; n <= maxn; ++n) {
    auto it = best.find(n);
    if (it != best.end() && it->second > running) running = it->second;
    prof.per_length.emplace_back(n, running);
  }

  std::vector<Rat> ratio;
  for (const auto& [n, v] : prof.per_length) ratio.push_back(v / Rat(static_cast<long long>(n) + 1));
  bool linear = ratio.size() > onset;
  for (std::size_t i = onset + 1; i < ratio.size(); ++i)
    if (ratio[i] > ratio[i - 1]) linear = false;
  bool growing = ratio.size() >= static_cast<std::size_t>(window) + 1;
  for (std::size_t i = ratio.size() - window; growing && i < ratio.size(); ++i)
    if (ratio[i] <= ratio[i - 1]) growing = false;
  prof.verdict = linear    ? ControlVerdict::LinearlyControlled
                 : growing ? ControlVerdict::GrowthSuspected
                           : ControlVerdict::Inconclusive;
  return prof;
}

// max |phi~(r)| over relators, each of which must map to the identity
inline Rat relator_sup_check(const Quasimorphism& phi, const RelAlphabet& alph,
                             const std::vector<RelWord>& relators) {
  Rat sup = 0;
  for (const RelWord& r : relators) {
    if (!alph.ambient->is_identity(theta(alph, r)))
      fail(Errc::relator_not_in_kernel, "relator does not map to the identity: " + rel_word_str(alph, r));
    Rat v = rat_abs(phi_tilde(phi, alph, r));
    if (v > sup) sup = v;
  }
  return sup;
}

struct NormalCriterionReport {
  Rat sup_kr = 0;
  DefectEstimate qinv;
  bool passes = false;
};

// Lifted relators are pairs (r, k_r) with r a word in the ambient generators
// and k_r its K-side value; both must define the same group element.
inline NormalCriterionReport normal_criterion_check(
    const Quasimorphism& phi, const GroupContext& ctx,
    const std::vector<std::pair<Word, Word>>& lifted_relators,
    const std::vector<std::pair<Word, Word>>& conj_samples) {
  NormalCriterionReport rep;
  for (const auto& [r, kr] : lifted_relators) {
    if (!ctx.equal(r, kr))
      fail(Errc::lift_mismatch, "lifted relator and its K-element disagree in the group");
    Rat v = rat_abs(qm_eval(phi, kr));
    if (v > rep.sup_kr) rep.sup_kr = v;
  }
  rep.qinv = qinv_defect_estimate(phi, conj_samples);
  rep.passes = true;  // finite samples are always finite; the values carry the trend
  return rep;
}

// Discrepancy words s(g2)^-1 s(g1)^-1 s(g1 g2) of a set-theoretic section,
// over sampled pairs.  The section is keyed by the quotient image of an
// element; keys come from `quotient_key`.
struct SectionTable {
  CtxPtr quotient;                 // context the section's domain lives in
  Homomorphism projection;         // ambient -> quotient
  std::map<std::string, Word> reps;  // quotient canonical key -> ambient word

  std::string key_of(const Word& ambient_word) const {
    return quotient->canonical_key(projection.apply(ambient_word));
  }
  const Word& rep(const Word& ambient_word) const {
    auto it = reps.find(key_of(ambient_word));
    if (it == reps.end())
      fail(Errc::section_incomplete, "no section entry for a sampled coset");
    return it->second;
  }
};

inline std::vector<Word> quasisplit_delta(const GroupContext& ctx, const SectionTable& section,
                                          const std::vector<std::pair<Word, Word>>& samples) {
  std::set<std::string> keys;
  std::vector<Word> out;
  for (const auto& [g1, g2] : samples) {
    const Word& s1 = section.rep(g1);
    const Word& s2 = section.rep(g2);
    const Word& s12 = section.rep(ctx.reduce(concat(g1, g2)));
    Word d = ctx.reduce(concat(concat(word_inverse(s2), word_inverse(s1)), s12));
    std::string k = ctx.has_canonical() ? ctx.canonical_key(d) : word_key(d);
    if (keys.insert(k).second) out.push_back(d);
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

// Central extension bookkeeping: a designated central word z inside a group E
// generated by X_E.  Centrality is validated on construction.
struct CentralExtensionCtx {
  CtxPtr E;
  Word z;
  std::vector<Word> X_E;  // closed under inverse for ball construction
};

inline CentralExtensionCtx make_central_extension_ctx(CtxPtr E, Word z, std::vector<Word> X_E) {
  CentralExtensionCtx c;
  z = E->reduce(z);
  for (Word& x : X_E) x = E->reduce(x);
  for (const Word& x : X_E) {
    Word comm = E->reduce(commutator(z, x));
    if (!E->is_identity(comm))
      fail(Errc::schema_error, "designated central element does not commute with a generator");
  }
  c.E = std::move(E);
  c.z = std::move(z);
  c.X_E = close_under_inverse(*c.E, std::move(X_E));
  return c;
}

struct DistortionRow {
  int n = 0;
  std::optional<int> lower;  // exact word length when z^n lies in the ball
  std::optional<int> upper;  // from ball membership or a verified witness word
};

enum class DistortionVerdict { Undistorted, Distorted, Inconclusive };

inline const char* to_string(DistortionVerdict v) {
  switch (v) {
    case DistortionVerdict::Undistorted: return "Undistorted";
    case DistortionVerdict::Distorted: return "Distorted";
    default: return "Inconclusive";
  }
}

struct DistortionReport {
  std::vector<DistortionRow> table;
  DistortionVerdict verdict = DistortionVerdict::Inconclusive;
  bool stable = false;  // same verdict at ball radii r, r-1, r-2
  int ball_radius = 0;
};

namespace detail {

// verdict over rows restricted to lower bounds resolved within `radius`
inline DistortionVerdict distortion_verdict(const std::vector<DistortionRow>& rows, int radius) {
  std::vector<std::pair<int, int>> resolved;  // (n, exact norm)
  for (const auto& r : rows)
    if (r.n > 0 && r.lower && *r.lower <= radius) resolved.emplace_back(r.n, *r.lower);
  if (resolved.size() < 2) return DistortionVerdict::Inconclusive;
  Rat base = Rat(resolved.front().second) / resolved.front().first;  // norm/n at smallest n
  if (base == 0) return DistortionVerdict::Inconclusive;

  // distorted: some later upper bound per unit drops to half the base rate or
  // below; witnesses beyond the ball also count
  int best_n = 0;
  Rat best_rate;
  for (const auto& r : rows) {
    if (r.n <= resolved.front().first || !r.upper) continue;
    Rat rate = Rat(*r.upper) / r.n;
    if (r.n > best_n) {
      best_n = r.n;
      best_rate = rate;
    }
  }
  if (best_n > 0 && best_rate * 2 <= base) return DistortionVerdict::Distorted;

  bool undist = true;
  for (const auto& [n, d] : resolved)
    if (Rat(d) / n < base * Rat(3, 4)) undist = false;
  return undist ? DistortionVerdict::Undistorted : DistortionVerdict::Inconclusive;
}

}  // namespace detail

// Lower bounds for |z^n| from BFS over X_E (exact when z^n lands inside the
// ball); upper bounds from ball membership or caller-supplied witness words,
// each verified to equal z^n.  Witnesses let the scenario exhibit distortion
// beyond the ball radius (e.g. nested-commutator identities).
inline DistortionReport distortion_check(const CentralExtensionCtx& cext, int max_n,
                                         int ball_radius,
                                         const std::vector<std::pair<int, Word>>& witnesses = {},
                                         std::size_t max_elements = 2'000'000) {
  BallOptions bo;
  bo.generators = cext.X_E;
  bo.max_elements = max_elements;
  Ball b = ball(cext.E, static_cast<std::uint32_t>(ball_radius), bo);

  DistortionReport rep;
  rep.ball_radius = ball_radius;
  Word zn;
  for (int n = 0; n <= max_n; ++n) {
    DistortionRow row;
    row.n = n;
    if (auto id = b.find(zn)) {
      row.lower = static_cast<int>(b.dist[*id]);
      row.upper = row.lower;
    }
    rep.table.push_back(row);
    zn = cext.E->reduce(concat(zn, cext.z));
  }
  for (const auto& [n, w] : witnesses) {
    if (n < 0 || n > max_n) fail(Errc::schema_error, "distortion witness exponent out of range");
    Word power = cext.E->reduce(word_pow(cext.z, n));
    Word red = cext.E->reduce(w);
    if (!cext.E->equal(red, power))
      fail(Errc::lift_mismatch, "distortion witness does not equal the designated central power");
    int len = static_cast<int>(free_reduce(w).size());
    auto& row = rep.table[static_cast<std::size_t>(n)];
    if (!row.upper || len < *row.upper) row.upper = len;
  }

  rep.verdict = detail::distortion_verdict(rep.table, ball_radius);
  rep.stable = ball_radius >= 2 &&
               detail::distortion_verdict(rep.table, ball_radius - 1) == rep.verdict &&
               detail::distortion_verdict(rep.table, ball_radius - 2) == rep.verdict;
  return rep;
}

struct LiftedRelators {
  std::vector<std::pair<Word, Word>> relators;      // (lift r, K-element k_r)
  std::vector<std::pair<Word, Word>> conj_samples;  // (k, conjugator w)
};

// Lift quotient relators through a section defined on the quotient
// generators, and sample the conjugation family (w k w^-1 for pool letters k)
// that completes the relative presentation.
inline LiftedRelators lift_relators(const GroupPresentation& quotient_pres,
                                    const std::vector<Word>& generator_section,
                                    const GroupContext& ambient, const SubgroupSpec& K,
                                    const std::vector<Word>& conjugators,
                                    const std::vector<Word>& pool) {
  if (generator_section.size() != quotient_pres.alphabet.size())
    fail(Errc::section_incomplete, "section must cover every quotient generator");
  LiftedRelators out;
  for (const Word& rbar : quotient_pres.relators) {
    Word r;
    for (const Gen& g : rbar) {
      Word img = generator_section[g.symbol];
      if (g.sign < 0) img = word_inverse(img);
      r = concat(r, img);
    }
    r = ambient.reduce(r);
    if (!membership(ambient, K, r))
      fail(Errc::relator_not_in_kernel, "lifted relator leaves the subgroup");
    out.relators.emplace_back(r, r);  // the lift is its own K-side value
  }
  for (const Word& w : conjugators)
    for (const Word& k : pool) out.conj_samples.emplace_back(k, w);
  return out;
}

}  // namespace qmx
