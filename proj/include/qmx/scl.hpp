#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmx/ball.hpp"
#include "qmx/qm.hpp"

namespace qmx {

// Distinct nontrivial values [g, k] with g from a ball and k from its
// K-members, remembering one generating pair per value for witness strings.
struct CommutatorSet {
  std::vector<Word> values;
  std::vector<std::pair<Word, Word>> gens;  // aligned with values
  ElementIndex index;

  explicit CommutatorSet(CtxPtr c) : index(c) {}
};

struct SclSearchOptions {
  std::size_t product_budget = 2'000'000;  // reduced products computed overall
};

inline CommutatorSet mixed_commutator_set(const Ball& b, const SubgroupSpec& K,
                                          SclSearchOptions opts = {},
                                          std::size_t* budget_used = nullptr) {
  CommutatorSet s(b.ctx);
  const GroupContext& ctx = *b.ctx;
  std::size_t used = budget_used ? *budget_used : 0;
  std::vector<const Word*> kside;
  for (const Word& k : b.elements)
    if (!ctx.is_identity(k) && membership(ctx, K, k)) kside.push_back(&k);
  for (const Word& g : b.elements) {
    if (ctx.is_identity(g)) continue;
    for (const Word* k : kside) {
      if (++used > opts.product_budget)
        fail(Errc::budget_exceeded, "commutator set exceeded the product budget");
      Word c = ctx.reduce(commutator(g, *k));
      if (ctx.is_identity(c)) continue;
      bool inserted = false;
      s.index.intern(c, &inserted);
      if (inserted) {
        s.values.push_back(std::move(c));
        s.gens.emplace_back(g, *k);
      }
    }
  }
  if (budget_used) *budget_used = used;
  return s;
}

namespace detail {

inline std::string commutator_label(const GroupContext& ctx, const Word& g, const Word& k) {
  const Alphabet& ab = ctx.pres.alphabet;
  return "[" + word_str(ab, g) + "," + word_str(ab, k) + "]";
}

struct ClWitness {
  int count = 0;
  std::vector<std::pair<Word, Word>> factors;
};

// Least number (<= q, q <= 3) of set elements multiplying to g, by direct
// lookup, then meet-in-the-middle, then a materialized two-fold product set.
inline std::optional<ClWitness> cl_search(const GroupContext& ctx, const Word& g,
                                          const CommutatorSet& s, int q,
                                          const SclSearchOptions& opts, std::size_t& used) {
  Word target = ctx.reduce(g);
  if (ctx.is_identity(target)) return ClWitness{0, {}};
  if (q >= 1) {
    if (auto id = s.index.find(target)) return ClWitness{1, {s.gens[*id]}};
  }
  if (q >= 2) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (++used > opts.product_budget)
        fail(Errc::budget_exceeded, "pair search exceeded the product budget");
      Word rest = ctx.reduce(concat(word_inverse(s.values[i]), target));
      if (auto id = s.index.find(rest)) return ClWitness{2, {s.gens[i], s.gens[*id]}};
    }
  }
  if (q >= 3) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      for (std::size_t j = 0; j < s.values.size(); ++j) {
        if (++used > opts.product_budget)
          fail(Errc::budget_exceeded, "triple search exceeded the product budget");
        Word two = ctx.reduce(concat(s.values[i], s.values[j]));
        Word rest = ctx.reduce(concat(word_inverse(two), target));
        if (auto id = s.index.find(rest))
          return ClWitness{3, {s.gens[i], s.gens[j], s.gens[*id]}};
      }
    }
  }
  return std::nullopt;
}

// Decidable obstructions to membership in [G, K]: nonvanishing abelianization,
// and (for a proper normal K) failure of K-membership, since [G, K] <= K.
inline void check_mixed_obstructions(const GroupContext& ctx, const SubgroupSpec& K,
                                     const Word& g) {
  auto ab = ctx.abelianized(g);
  if (std::any_of(ab.begin(), ab.end(), [](long long x) { return x != 0; }))
    fail(Errc::not_in_mixed_commutator_subgroup, "abelianization of the element is nonzero");
  if (!std::holds_alternative<WholeGroup>(K) && !membership(ctx, K, g))
    fail(Errc::not_in_mixed_commutator_subgroup,
         "element lies outside the normal subgroup containing the mixed commutators");
}

}  // namespace detail

inline std::optional<int> cl_mixed_upper(const Word& g, int q, std::uint32_t factor_radius,
                                         CtxPtr ctx, const SubgroupSpec& K,
                                         SclSearchOptions opts = {}) {
  detail::check_mixed_obstructions(*ctx, K, g);
  Ball b = ball(ctx, factor_radius, {});
  CommutatorSet s = mixed_commutator_set(b, K, opts);
  std::size_t used = 0;
  auto w = detail::cl_search(*ctx, g, s, q, opts, used);
  if (!w) return std::nullopt;
  return w->count;
}

struct SclUpperEntry {
  unsigned n = 0;
  Rat value;  // cl_upper(g^n) / n
  std::string witness;
};

inline std::vector<SclUpperEntry> scl_upper_estimate(const Word& g,
                                                     const std::vector<unsigned>& n_list, int q,
                                                     std::uint32_t radius, CtxPtr ctx,
                                                     const SubgroupSpec& K,
                                                     SclSearchOptions opts = {}) {
  detail::check_mixed_obstructions(*ctx, K, g);
  Ball b = ball(ctx, radius, {});
  CommutatorSet s = mixed_commutator_set(b, K, opts);
  std::vector<SclUpperEntry> out;
  std::size_t used = 0;
  for (unsigned n : n_list) {
    if (n == 0) continue;
    auto w = detail::cl_search(*ctx, word_pow(g, static_cast<long long>(n)), s, q, opts, used);
    if (!w) continue;
    SclUpperEntry e;
    e.n = n;
    e.value = Rat(w->count) / Rat(n);
    std::string lbl;
    for (const auto& [a, k] : w->factors) {
      if (!lbl.empty()) lbl += "*";
      lbl += detail::commutator_label(*ctx, a, k);
    }
    e.witness = "cl(g^" + std::to_string(n) + ")<=" + std::to_string(w->count) +
                (lbl.empty() ? std::string() : " via " + lbl);
    out.push_back(std::move(e));
  }
  return out;
}

// (|estimate| - error radius) / (2 D), floored at zero.
inline Rat bavard_lower(const HomogenizeResult& est, const Rat& D_upper) {
  if (D_upper == 0)
    fail(Errc::degenerate_defect,
         "defect bound is zero; use the abelianization criterion instead");
  if (D_upper < 0) fail(Errc::schema_error, "defect bound cannot be negative");
  Rat numer = rat_abs(est.value);
  if (est.error_radius) numer -= *est.error_radius;
  if (numer < 0) return Rat(0);
  return numer / (2 * D_upper);
}

struct SclBoundReport {
  std::string element;
  std::optional<Rat> lower;
  std::string lower_provenance;
  std::optional<Rat> upper;
  std::string upper_provenance;
  bool mixed = false;
};

struct SclBoundInputs {
  std::vector<unsigned> n_list = {1, 2, 3};
  int q = 2;
  std::uint32_t radius = 3;
  unsigned homogenize_N = 8;
  SclSearchOptions search;
};

// Both sides for one element: Bavard lower bounds from the given family of
// certified-defect quasimorphisms, brute-force upper estimates from powers.
// Ordering is a hard internal invariant, not a reportable failure.
inline SclBoundReport scl_bound_report(const Word& g, CtxPtr ctx, const SubgroupSpec& K,
                                       const std::vector<Quasimorphism>& phi_family,
                                       const SclBoundInputs& in = {}) {
  SclBoundReport rep;
  rep.element = word_str(ctx->pres.alphabet, g);
  rep.mixed = !std::holds_alternative<WholeGroup>(K);
  for (const Quasimorphism& phi : phi_family) {
    if (!phi.certified_defect_upper || *phi.certified_defect_upper == 0) continue;
    if (rep.mixed && !phi.invariant_claimed) continue;
    HomogenizeResult est = homogenize_estimate(phi, g, in.homogenize_N);
    Rat lo = bavard_lower(est, *phi.certified_defect_upper);
    if (!rep.lower || lo > *rep.lower) {
      rep.lower = lo;
      rep.lower_provenance = "bavard via " + phi.name + ", D<=" +
                             rat_str(*phi.certified_defect_upper) + ", N=" +
                             std::to_string(in.homogenize_N);
    }
  }
  auto entries = scl_upper_estimate(g, in.n_list, in.q, in.radius, ctx, K, in.search);
  for (const SclUpperEntry& e : entries) {
    if (!rep.upper || e.value < *rep.upper) {
      rep.upper = e.value;
      rep.upper_provenance = e.witness;
    }
  }
  if (rep.lower && rep.upper && *rep.lower > *rep.upper)
    fail(Errc::internal, "scl lower bound exceeded the upper estimate on " + rep.element);
  return rep;
}

struct BiLipRow {
  std::string element;
  std::optional<Rat> plain_lower, plain_upper;  // scl over the whole group
  std::optional<Rat> mixed_lower, mixed_upper;  // scl over (G, K) commutators
  std::optional<Rat> ratio_lo, ratio_hi;        // plain/mixed where defined
  bool inconclusive = false;
};

// Side-by-side bounds for plain and mixed stable commutator length, with the
// ratio interval [plain_lower/mixed_upper, plain_upper/mixed_lower] filled in
// when the division is meaningful.
inline std::vector<BiLipRow> bilip_report(const std::vector<Word>& samples, CtxPtr ctx,
                                          const SubgroupSpec& K,
                                          const std::vector<Quasimorphism>& phi_family,
                                          const SclBoundInputs& in = {}) {
  std::vector<BiLipRow> rows;
  for (const Word& g : samples) {
    BiLipRow row;
    row.element = word_str(ctx->pres.alphabet, g);
    SclBoundReport plain = scl_bound_report(g, ctx, WholeGroup{}, phi_family, in);
    SclBoundReport mixed = scl_bound_report(g, ctx, K, phi_family, in);
    row.plain_lower = plain.lower;
    row.plain_upper = plain.upper;
    row.mixed_lower = mixed.lower;
    row.mixed_upper = mixed.upper;
    if (row.plain_lower && row.mixed_upper && *row.mixed_upper > 0)
      row.ratio_lo = *row.plain_lower / *row.mixed_upper;
    if (row.plain_upper && row.mixed_lower && *row.mixed_lower > 0)
      row.ratio_hi = *row.plain_upper / *row.mixed_lower;
    row.inconclusive = !row.ratio_lo && !row.ratio_hi;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qmx
