#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qmx/relword.hpp"

namespace qmx {

struct EnumOptions {
  // cap on the number of X-letters in a candidate
  int max_x_letters = 6;
  // cap on total syllable count, -1 for no cap
  int max_syllables = -1;
  // K_pool is closed under products of up to this many pool letters
  int pool_radius = 2;
  // how many pool K-letters a candidate may carry besides the solved slot
  // (0 or 1; larger pools are reached by raising pool_radius instead)
  int extra_pool_letters = 1;
  // when >= 0, keep only candidates whose normal form has exactly this many
  // X-letters (one stratum); lets callers deepen the search incrementally
  int exact_x = -1;
  std::size_t max_candidates = 2'000'000;
};

// Products of at most `radius` pool letters, reduced in the ambient group and
// deduplicated; the identity is dropped (it is never a valid K-letter).
inline std::vector<Word> pool_closure(const RelAlphabet& alph, int radius) {
  const GroupContext& ctx = *alph.ambient;
  ElementIndex index(alph.ambient);
  index.intern(Word{});
  std::vector<Word> frontier{Word{}};
  std::vector<Word> out;
  for (int step = 0; step < radius; ++step) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Word& p : alph.K_pool) {
        Word prod = ctx.reduce(concat(w, p));
        if (index.find(prod).has_value()) continue;
        index.intern(prod);
        next.push_back(prod);
        if (!ctx.is_identity(prod)) out.push_back(prod);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

namespace detail {

struct PreimageEnum {
  const Word& g;
  const RelAlphabet& alph;
  const EnumOptions& opts;
  std::vector<Word> pool;
  std::set<std::string> seen = {};
  std::vector<RelWord> out = {};

  // For a kernel subgroup every K-part of a candidate maps to zero in the
  // abelianized target, so the X-letters alone must hit the target's image
  // exactly.  Tracking the running image lets the sequence walk drop branches
  // whose remaining budget cannot close the gap.
  bool prune_active = false;
  std::vector<std::vector<long long>> h_img = {};  // per X letter
  std::vector<long long> h_target = {};
  std::vector<long long> h_max = {};  // coordinatewise max |h_img|
  std::vector<long long> h_run = {};

  void init_prune() {
    const auto* ker = std::get_if<KernelSpec>(&alph.K);
    if (ker == nullptr || alph.X.empty()) return;
    const Homomorphism& h = ker->hom;
    std::size_t rank = h.target->rank();
    h_target = exponent_vector(h.target->reduce(h.apply(g)), rank);
    h_max.assign(rank, 0);
    for (const Word& x : alph.X) {
      auto v = exponent_vector(h.target->reduce(h.apply(x)), rank);
      for (std::size_t c = 0; c < rank; ++c)
        h_max[c] = std::max(h_max[c], std::abs(v[c]));
      h_img.push_back(std::move(v));
    }
    h_run.assign(rank, 0);
    prune_active = true;
  }

  bool on_target() const {
    if (!prune_active) return true;
    return h_run == h_target;
  }

  bool feasible(int remaining) const {
    if (!prune_active) return true;
    for (std::size_t c = 0; c < h_run.size(); ++c)
      if (std::abs(h_target[c] - h_run[c]) > static_cast<long long>(remaining) * h_max[c])
        return false;
    return true;
  }

  void emit(const std::vector<Syllable>& syl) {
    RelWord cand;
    cand.syl = syl;
    RelWord norm = normal_form(alph, cand);
    if (opts.max_syllables >= 0 &&
        rel_len(norm) > static_cast<std::size_t>(opts.max_syllables))
      return;
    // cancellation in the normal form can shed X-letters; such candidates
    // belong to (and are regenerated by) the shallower stratum
    if (opts.exact_x >= 0 && x_count(norm) != static_cast<std::size_t>(opts.exact_x)) return;
    std::string key = rel_word_key(alph, norm);
    if (!seen.insert(std::move(key)).second) return;
    if (out.size() >= opts.max_candidates)
      fail(Errc::budget_exceeded,
           "preimage enumeration exceeded max_candidates = " +
               std::to_string(opts.max_candidates));
    out.push_back(std::move(norm));
  }

  // one X-letter sequence with a solved K-slot at `solved`, and optionally a
  // single pool letter at another slot
  void expand(const std::vector<std::uint32_t>& seq) {
    const GroupContext& ctx = *alph.ambient;
    const std::size_t m = seq.size();
    std::vector<Word> ximg(m);
    for (std::size_t i = 0; i < m; ++i) ximg[i] = alph.X[seq[i]];

    // theta of the X-letters in [from, to)
    auto xprod = [&](std::size_t from, std::size_t to) {
      Word w;
      for (std::size_t i = from; i < to; ++i) w = concat(w, ximg[i]);
      return ctx.reduce(w);
    };

    auto attach = [&](std::size_t solved, std::size_t pool_slot, const Word* p) {
      // prefix product includes the pool letter when it sits left of the
      // solved slot
      Word u1 = xprod(0, solved);
      Word u2 = xprod(solved, m);
      if (p != nullptr) {
        if (pool_slot <= solved)
          u1 = ctx.reduce(concat(concat(xprod(0, pool_slot), *p), xprod(pool_slot, solved)));
        else
          u2 = ctx.reduce(concat(concat(xprod(solved, pool_slot), *p), xprod(pool_slot, m)));
      }
      Word kstar = ctx.reduce(concat(concat(word_inverse(u1), g), word_inverse(u2)));
      if (!ctx.is_identity(kstar) && !membership(ctx, alph.K, kstar)) return;
      std::vector<Syllable> syl;
      for (std::size_t slot = 0; slot <= m; ++slot) {
        if (p != nullptr && pool_slot == slot) syl.push_back(KLetter{*p});
        if (solved == slot && !kstar.empty()) syl.push_back(KLetter{kstar});
        if (slot < m) syl.push_back(XLetter{seq[slot]});
      }
      emit(syl);
    };

    for (std::size_t solved = 0; solved <= m; ++solved) {
      attach(solved, 0, nullptr);
      if (opts.extra_pool_letters < 1) continue;
      for (std::size_t slot = 0; slot <= m; ++slot) {
        if (slot == solved) continue;  // adjacent K-letters would merge anyway
        for (const Word& p : pool) attach(solved, slot, &p);
      }
    }
  }

  void run() {
    init_prune();
    std::vector<std::uint32_t> seq;
    const int xn = static_cast<int>(alph.X.size());
    int cap = opts.max_x_letters;
    if (opts.max_syllables >= 0) cap = std::min(cap, opts.max_syllables);
    if (opts.exact_x >= 0) cap = std::min(cap, opts.exact_x);
    // depth-first over X index sequences, shortest first per prefix
    expandAll(seq, cap, xn);
  }

  void expandAll(std::vector<std::uint32_t>& seq, int cap, int xn) {
    if (on_target() && (opts.exact_x < 0 || static_cast<int>(seq.size()) == opts.exact_x))
      expand(seq);
    if (static_cast<int>(seq.size()) >= cap) return;
    for (int i = 0; i < xn; ++i) {
      seq.push_back(static_cast<std::uint32_t>(i));
      if (prune_active)
        for (std::size_t c = 0; c < h_run.size(); ++c) h_run[c] += h_img[i][c];
      if (feasible(cap - static_cast<int>(seq.size()))) expandAll(seq, cap, xn);
      if (prune_active)
        for (std::size_t c = 0; c < h_run.size(); ++c) h_run[c] -= h_img[i][c];
      seq.pop_back();
    }
  }
};

}  // namespace detail

// All normal-form RelWords a with theta(a) = g, within the option caps.
// Candidates carry one "solved" K-letter (forced by the target element) plus
// at most extra_pool_letters pool letters; the solved letter is dropped when
// it is the identity.  Output is deduplicated by syllable sequence and sorted
// by (x-count, syllable count, key) for deterministic downstream scans.
inline std::vector<RelWord> enumerate_preimages(const Word& g, const RelAlphabet& alph,
                                                const EnumOptions& opts = {}) {
  Word target = alph.ambient->reduce(g);
  detail::PreimageEnum en{target, alph, opts, pool_closure(alph, opts.pool_radius)};
  en.run();
  std::sort(en.out.begin(), en.out.end(), [&alph](const RelWord& a, const RelWord& b) {
    std::size_t xa = x_count(a), xb = x_count(b);
    if (xa != xb) return xa < xb;
    std::size_t la = rel_len(a), lb = rel_len(b);
    if (la != lb) return la < lb;
    return rel_word_key(alph, a) < rel_word_key(alph, b);
  });
  return en.out;
}

// Normal-form kernel elements: theta(a) = identity and |a| <= maxlen.
inline std::vector<RelWord> kernel_enumerate(const RelAlphabet& alph, int maxlen,
                                             EnumOptions opts = {}) {
  opts.max_syllables = maxlen;
  opts.max_x_letters = std::min(opts.max_x_letters, maxlen);
  return enumerate_preimages(Word{}, alph, opts);
}

}  // namespace qmx
