#pragma once

#include <functional>

#include "qmx/group.hpp"
#include "qmx/rational.hpp"

namespace qmx {

// A rational-valued map on a subgroup of a group context, with quasimorphism
// bookkeeping.  `evaluator` always receives ctx->reduce()'d words.  A
// certified defect upper bound is only ever caller-supplied (or 0 for honest
// homomorphisms); empirical estimates below are lower bounds and are never
// promoted.
struct Quasimorphism {
  std::string name;
  CtxPtr ctx;
  SubgroupSpec domain = WholeGroup{};
  std::function<Rat(const Word&)> evaluator;
  bool antisymmetric = false;
  bool homomorphism = false;
  bool invariant_claimed = false;
  std::optional<Rat> certified_defect_upper;
};

enum class DefectKind { LowerBoundEmpirical, CertifiedUpper };

struct DefectEstimate {
  Rat value = 0;
  DefectKind kind = DefectKind::LowerBoundEmpirical;
  std::string sample_spec;
};

inline Rat qm_eval(const Quasimorphism& phi, const Word& w) {
  if (!membership(*phi.ctx, phi.domain, w))
    fail(Errc::not_in_domain, "word '" + word_str(phi.ctx->pres.alphabet, w) + "' is outside the domain of " + phi.name);
  return phi.evaluator(phi.ctx->reduce(w));
}

// --- built-in families -------------------------------------------------------

// Weighted exponent sum.  A homomorphism to the rationals; on a quotient the
// weights must vanish on the relator lattice or the map is not well defined.
inline Quasimorphism exponent_qm(CtxPtr ctx, std::vector<Rat> weights, std::string name = "exponent_sum") {
  if (weights.size() != ctx->rank()) fail(Errc::schema_error, "need one weight per generator");
  for (const auto& row : ctx->abelian_lattice) {
    Rat dot = 0;
    for (std::size_t i = 0; i < row.size(); ++i) dot += weights[i] * row[i];
    if (dot != 0)
      fail(Errc::schema_error, "weights do not vanish on the relators; map is not well defined on the quotient");
  }
  Quasimorphism q;
  q.name = std::move(name);
  q.ctx = ctx;
  std::size_t rank = ctx->rank();
  q.evaluator = [weights = std::move(weights), rank](const Word& w) {
    auto v = exponent_vector(w, rank);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights[i] * v[i];
    return s;
  };
  q.antisymmetric = true;
  q.homomorphism = true;
  q.invariant_claimed = true;
  q.certified_defect_upper = Rat(0);
  return q;
}

inline long long count_occurrences(const Word& w, const Word& pattern) {
  if (pattern.empty() || w.size() < pattern.size()) return 0;
  long long n = 0;
  for (std::size_t i = 0; i + pattern.size() <= w.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < pattern.size(); ++j)
      if (!(w[i + j] == pattern[j])) {
        hit = false;
        break;
      }
    if (hit) ++n;  // overlapping occurrences all count
  }
  return n;
}

// Counting quasimorphism on a free group: occurrences of `pattern` minus
// occurrences of its inverse in the freely reduced word.
inline Quasimorphism brooks_qm(CtxPtr ctx, const Word& pattern, std::string name = "") {
  if (!std::holds_alternative<FreeGroupStrategy>(ctx->strategy))
    fail(Errc::strategy_unsupported, "counting quasimorphisms are defined on free groups");
  Word p = free_reduce(pattern);
  if (p.empty()) fail(Errc::empty_pattern, "counting pattern reduces to the identity");
  Quasimorphism q;
  q.name = name.empty() ? "count_" + word_str(ctx->pres.alphabet, p) : std::move(name);
  q.ctx = ctx;
  Word pinv = word_inverse(p);
  q.evaluator = [p = std::move(p), pinv = std::move(pinv)](const Word& w) {
    return Rat(count_occurrences(w, p) - count_occurrences(w, pinv));
  };
  q.antisymmetric = true;
  return q;
}

// --- derived constructions ---------------------------------------------------

inline Quasimorphism antisymmetrize(Quasimorphism phi) {
  if (phi.antisymmetric) return phi;  // idempotent
  Quasimorphism q = phi;
  q.name = phi.name + "_anti";
  q.evaluator = [ctx = phi.ctx, f = phi.evaluator](const Word& w) {
    return (f(w) - f(ctx->reduce(word_inverse(w)))) / 2;
  };
  q.antisymmetric = true;
  // (f(g) - f(g^-1))/2 has defect at most the defect of f, so a certified
  // bound survives antisymmetrization.
  return q;
}

// phi(w^N)/N as a map in its own right.  The certified defect of the
// approximation is not derivable from phi's and must be supplied.
inline Quasimorphism homogenized_power_qm(const Quasimorphism& phi, unsigned N,
                                          std::optional<Rat> certified_defect = std::nullopt,
                                          std::string name = "") {
  if (N == 0) fail(Errc::schema_error, "homogenization exponent must be positive");
  Quasimorphism q;
  q.name = name.empty() ? phi.name + "_hom" + std::to_string(N) : std::move(name);
  q.ctx = phi.ctx;
  q.domain = phi.domain;
  q.evaluator = [ctx = phi.ctx, f = phi.evaluator, N](const Word& w) {
    return f(ctx->reduce(word_pow(w, N))) / Rat(N);
  };
  q.antisymmetric = phi.antisymmetric;
  q.homomorphism = phi.homomorphism;
  q.certified_defect_upper = phi.homomorphism ? std::optional<Rat>(Rat(0)) : certified_defect;
  return q;
}

inline Quasimorphism restrict_qm(Quasimorphism phi, SubgroupSpec domain) {
  phi.domain = std::move(domain);
  return phi;
}

// --- estimation --------------------------------------------------------------

struct HomogenizeResult {
  Rat value;
  std::optional<Rat> error_radius;  // |value - limit| bound, when a certified defect exists
};

inline HomogenizeResult homogenize_estimate(const Quasimorphism& phi, const Word& w, unsigned N) {
  if (N == 0) fail(Errc::schema_error, "homogenization exponent must be positive");
  HomogenizeResult r;
  r.value = qm_eval(phi, word_pow(w, N)) / Rat(N);
  if (phi.certified_defect_upper) r.error_radius = *phi.certified_defect_upper / Rat(N);
  return r;
}

inline DefectEstimate defect_estimate(const Quasimorphism& phi,
                                      const std::vector<std::pair<Word, Word>>& pairs,
                                      std::string sample_spec = "") {
  DefectEstimate d;
  d.kind = DefectKind::LowerBoundEmpirical;
  if (pairs.empty()) {
    d.sample_spec = "empty";
    return d;
  }
  for (const auto& [g, h] : pairs) {
    Rat delta = rat_abs(qm_eval(phi, g) + qm_eval(phi, h) - qm_eval(phi, reduced_product(g, h)));
    if (delta > d.value) d.value = delta;
  }
  d.sample_spec = sample_spec.empty() ? "explicit pairs, n=" + std::to_string(pairs.size()) : std::move(sample_spec);
  return d;
}

// Empirical lower bound on the conjugation defect sup |phi(k) - phi(g k g^-1)|
// where g ranges over the ambient group (so only k needs domain membership).
inline DefectEstimate qinv_defect_estimate(const Quasimorphism& phi,
                                           const std::vector<std::pair<Word, Word>>& conj_samples,
                                           std::string sample_spec = "") {
  DefectEstimate d;
  d.kind = DefectKind::LowerBoundEmpirical;
  if (conj_samples.empty()) {
    d.sample_spec = "empty";
    return d;
  }
  for (const auto& [k, g] : conj_samples) {
    Word kc = phi.ctx->reduce(conjugate(g, k));
    if (!membership(*phi.ctx, phi.domain, kc))
      fail(Errc::conjugate_leaves_subgroup,
           "conjugate of '" + word_str(phi.ctx->pres.alphabet, k) + "' left the subgroup");
    Rat delta = rat_abs(qm_eval(phi, k) - qm_eval(phi, kc));
    if (delta > d.value) d.value = delta;
  }
  d.sample_spec =
      sample_spec.empty() ? "conjugation samples, n=" + std::to_string(conj_samples.size()) : std::move(sample_spec);
  return d;
}

}  // namespace qmx
