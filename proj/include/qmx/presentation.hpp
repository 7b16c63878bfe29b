#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmx/rational.hpp"
#include "qmx/word.hpp"

namespace qmx {

struct GroupPresentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

inline GroupPresentation make_presentation(std::vector<std::string> generator_names,
                                           const std::vector<std::string>& relator_texts = {}) {
  GroupPresentation p;
  p.alphabet.names = std::move(generator_names);
  for (const auto& t : relator_texts) p.relators.push_back(parse_word(p.alphabet, t));
  return p;
}

// --- symmetrization ---------------------------------------------------------

// Closure of the relator set under inversion and cyclic rotation, after
// cyclic reduction, with duplicate words removed.  Returned in shortlex order.
inline std::vector<Word> symmetrize_relators(const std::vector<Word>& relators) {
  std::vector<Word> out;
  for (const Word& r0 : relators) {
    Word r = cyclically_reduce(r0);
    if (r.empty()) fail(Errc::empty_relator, "relator is trivial after cyclic reduction");
    for (int sign = 0; sign < 2; ++sign) {
      Word base = sign == 0 ? r : word_inverse(r);
      for (std::size_t i = 0; i < base.size(); ++i) out.push_back(rotate(base, i));
    }
  }
  std::sort(out.begin(), out.end(), word_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Same closure, but each entry remembers which relator, sign and rotation it
// came from, so Dehn reduction can report a signed application trace.
struct SymEntry {
  Word w;
  std::uint32_t relator;
  std::int8_t sign;
  std::uint32_t rotation;
};

struct SymmetrizedSet {
  std::vector<SymEntry> entries;
  std::size_t max_len = 0;
};

inline SymmetrizedSet build_symmetrized(const std::vector<Word>& relators) {
  SymmetrizedSet s;
  for (std::uint32_t ri = 0; ri < relators.size(); ++ri) {
    Word r = cyclically_reduce(relators[ri]);
    if (r.empty()) fail(Errc::empty_relator, "relator is trivial after cyclic reduction");
    for (int sg = 0; sg < 2; ++sg) {
      Word base = sg == 0 ? r : word_inverse(r);
      for (std::uint32_t rot = 0; rot < base.size(); ++rot) {
        Word cand = rotate(base, rot);
        bool dup = false;
        for (const SymEntry& e : s.entries)
          if (e.w == cand) { dup = true; break; }
        if (!dup)
          s.entries.push_back(SymEntry{cand, ri, static_cast<std::int8_t>(sg == 0 ? 1 : -1), rot});
      }
    }
  }
  for (const SymEntry& e : s.entries) s.max_len = std::max(s.max_len, e.w.size());
  return s;
}

// --- suffix array (rank doubling) + Kasai LCP -------------------------------

namespace detail {

inline std::vector<int> suffix_array(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<int> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);
  for (int i = 0; i < n; ++i) rank[i] = s[i];
  for (int k = 1;; k <<= 1) {
    auto cmp = [&](int a, int b) {
      if (rank[a] != rank[b]) return rank[a] < rank[b];
      int ra = a + k < n ? rank[a + k] : -1;
      int rb = b + k < n ? rank[b + k] : -1;
      return ra < rb;
    };
    std::sort(sa.begin(), sa.end(), cmp);
    tmp[sa[0]] = 0;
    for (int i = 1; i < n; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (cmp(sa[i - 1], sa[i]) ? 1 : 0);
    rank = tmp;
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

inline std::vector<int> lcp_array(const std::vector<int>& s, const std::vector<int>& sa) {
  const int n = static_cast<int>(s.size());
  std::vector<int> rank(n), lcp(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) rank[sa[i]] = i;
  int h = 0;
  for (int i = 0; i < n; ++i) {
    if (rank[i] == 0) { h = 0; continue; }
    int j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i] - 1] = h;
    if (h > 0) --h;
  }
  return lcp;
}

inline int letter_code(const Gen& g) {
  return static_cast<int>(g.symbol) * 2 + (g.sign > 0 ? 0 : 1) + 1;
}

}  // namespace detail

// --- small cancellation check ------------------------------------------------

struct SmallCancellationReport {
  Rat lambda;
  bool passes = false;
  std::size_t max_piece = 0;
  std::size_t min_relator_len = 0;
  std::size_t symmetrized_count = 0;
  std::string reason;
};

// A piece is a common arc of two distinct occurrence slots on the cyclic
// relator words (relator, sign, start position).  Arcs are read on the
// doubled word so they may wrap; the length is capped at the relator length,
// which makes proper powers fail automatically (a period-shift slot repeats
// the whole word).  Rotation-aliased slots of one occurrence are never
// compared against themselves because each cyclic slot is emitted exactly
// once.
//
// The metric condition C'(lambda) demands max_piece < lambda * |r| for every
// relator.  On top of that the gate refuses presentations without headroom
// for a single shared letter (lambda * |r| <= 1): at that length the word
// problem gate below cannot be meaningfully certified, so such presentations
// are reported as failing rather than vacuously passing.
inline SmallCancellationReport check_small_cancellation(const std::vector<Word>& relators,
                                                        const Rat& lambda) {
  if (lambda <= 0 || lambda > Rat(1, 6))
    fail(Errc::unsupported_lambda, "lambda must lie in (0, 1/6], got " + rat_str(lambda));

  SmallCancellationReport rep;
  rep.lambda = lambda;

  // Dedup relators that agree up to rotation/inversion: they would otherwise
  // register each other as full-length pieces.
  std::vector<Word> distinct;
  {
    std::vector<Word> canon_seen;
    for (const Word& r0 : relators) {
      Word r = cyclically_reduce(r0);
      if (r.empty()) fail(Errc::empty_relator, "relator is trivial after cyclic reduction");
      Word canon = r;
      for (int sg = 0; sg < 2; ++sg) {
        Word base = sg == 0 ? r : word_inverse(r);
        for (std::size_t i = 0; i < base.size(); ++i) {
          Word rot = rotate(base, i);
          if (word_less(rot, canon)) canon = rot;
        }
      }
      if (std::find(canon_seen.begin(), canon_seen.end(), canon) == canon_seen.end()) {
        canon_seen.push_back(canon);
        distinct.push_back(r);
      }
    }
  }

  rep.symmetrized_count = symmetrize_relators(distinct).size();
  rep.min_relator_len = distinct.empty() ? 0 : distinct[0].size();
  for (const Word& r : distinct) rep.min_relator_len = std::min(rep.min_relator_len, r.size());

  // One string per cyclic slot: the forward arc of length |r| starting there,
  // ended by a sentinel unique to the slot.  A piece is the common prefix of
  // two distinct slot strings, so only suffixes anchored at slot starts count;
  // their longest common prefix never crosses a sentinel because sentinels are
  // pairwise distinct.
  std::vector<int> text;
  std::vector<char> anchored;
  {
    int max_code = 0;
    for (const Word& r : distinct)
      for (const Gen& g : r) max_code = std::max(max_code, detail::letter_code(g) + 2);
    int next_sentinel = max_code + 1;
    for (const Word& r : distinct) {
      for (int sg = 0; sg < 2; ++sg) {
        Word base = sg == 0 ? r : word_inverse(r);
        Word doubled = concat(base, base);
        for (std::size_t p = 0; p < base.size(); ++p) {
          anchored.resize(text.size() + 1, 0);
          anchored[text.size()] = 1;
          for (std::size_t j = 0; j < base.size(); ++j)
            text.push_back(detail::letter_code(doubled[p + j]));
          text.push_back(next_sentinel++);
        }
      }
    }
    anchored.resize(text.size(), 0);
  }

  if (!text.empty()) {
    auto sa = detail::suffix_array(text);
    auto lcp = detail::lcp_array(text, sa);
    // max LCP over pairs of anchored suffixes = max over SA-consecutive
    // anchored pairs of the min lcp between them
    std::size_t best = 0;
    bool seen_anchor = false;
    int run_min = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (i > 0) run_min = std::min(run_min, lcp[i - 1]);
      if (!anchored[static_cast<std::size_t>(sa[i])]) continue;
      if (seen_anchor && run_min > 0) best = std::max(best, static_cast<std::size_t>(run_min));
      seen_anchor = true;
      run_min = std::numeric_limits<int>::max();
    }
    rep.max_piece = best;
  }

  bool headroom = true;
  for (const Word& r : distinct)
    if (lambda * Rat(static_cast<long long>(r.size())) <= 1) headroom = false;
  bool metric = true;
  for (const Word& r : distinct)
    if (Rat(static_cast<long long>(rep.max_piece)) >= lambda * Rat(static_cast<long long>(r.size())))
      metric = false;

  rep.passes = headroom && metric;
  if (!headroom)
    rep.reason = "relator too short: even a length-1 piece would violate the metric bound";
  else if (!metric)
    rep.reason = "piece of length " + std::to_string(rep.max_piece) + " violates the metric bound";
  else
    rep.reason = "max piece " + std::to_string(rep.max_piece) + " below bound";
  return rep;
}

// --- Dehn reduction ----------------------------------------------------------

struct DehnStep {
  std::uint32_t relator;
  std::int8_t sign;
  std::uint32_t rotation;
  std::size_t position;
  std::size_t matched;
};

struct DehnResult {
  Word word;
  std::vector<DehnStep> trace;
};

// Greedy Dehn algorithm: repeatedly freely reduce, then replace the leftmost
// subword that matches more than half of a symmetrized relator by the inverse
// of the remainder.  Each replacement strictly shortens the word, so the loop
// terminates.  For a presentation certified C'(1/6) this decides the word
// problem (empty result iff the word lies in the normal closure).
inline DehnResult dehn_reduce(const Word& input, const SymmetrizedSet& sym) {
  DehnResult res;
  res.word = free_reduce(input);
  for (;;) {
    bool applied = false;
    for (std::size_t pos = 0; pos < res.word.size() && !applied; ++pos) {
      for (const SymEntry& e : sym.entries) {
        std::size_t m = 0;
        while (m < e.w.size() && pos + m < res.word.size() && res.word[pos + m] == e.w[m]) ++m;
        if (m * 2 <= e.w.size()) continue;  // need strictly more than half
        Word next(res.word.begin(), res.word.begin() + static_cast<std::ptrdiff_t>(pos));
        Word rest(e.w.begin() + static_cast<std::ptrdiff_t>(m), e.w.end());
        Word repl = word_inverse(rest);
        next.insert(next.end(), repl.begin(), repl.end());
        next.insert(next.end(), res.word.begin() + static_cast<std::ptrdiff_t>(pos + m), res.word.end());
        res.trace.push_back(DehnStep{e.relator, e.sign, e.rotation, pos, m});
        res.word = free_reduce(next);
        applied = true;
        break;
      }
    }
    if (!applied) break;
  }
  return res;
}

inline std::vector<long long> dehn_net_counts(const DehnResult& r, std::size_t num_relators) {
  std::vector<long long> net(num_relators, 0);
  for (const DehnStep& s : r.trace) net[s.relator] += s.sign;
  return net;
}

// --- randomized C'(1/6) relator search ---------------------------------------

struct RelatorSearchResult {
  Word relator;
  SmallCancellationReport certificate;
  std::uint32_t attempts = 0;
};

// Searches for a C'(1/6) relator over a 2-generator alphabet by assembling k
// alternating syllable blocks a^{e_i} b^{f_i} (k >= 6).  Shared arcs between
// two slots cannot contain a full b-run (all |f_i| distinct) and cannot
// contain a full a-run flanked by b's (all |e_i| distinct), so every piece is
// at most one partial b-run plus one partial a-run.
//
// Default shape: e = (k, 1, 2, ..., k-1) against f descending from B+k.  The
// rotation of the e's puts the smallest a-runs right after the largest
// b-runs, which caps every junction arc at B+k while |r|/6 = k(k+1)/6 + kB/6
// exceeds B+k for every k >= 6.  Balanced shape (both exponent sums zero,
// making exponent sums well defined on the quotient): three positive and
// three negative runs per letter with disjoint magnitude sets, so no run of
// the relator matches any run of its inverse, and with signs arranged so the
// arcs flanking the two largest same-sign b-runs hit opposite-sign a-runs and
// stop at the junction.
//
// Attempts grow the base B and add seeded jitter; every candidate is passed
// through check_small_cancellation, so a returned word carries its own
// certificate and the templates above only matter for termination.
inline std::optional<RelatorSearchResult> search_c16_relator(const Alphabet& ab, std::uint32_t blocks,
                                                             std::uint64_t seed, bool balanced = false,
                                                             std::uint32_t max_attempts = 64) {
  if (ab.size() < 2) fail(Errc::unknown_generator, "search needs two generators");
  std::mt19937_64 rng(seed);
  const long long k = std::max<std::uint32_t>(blocks, 6);
  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    const long long base = 2 * k + 2 + attempt + static_cast<long long>(rng() % static_cast<std::uint64_t>(k));
    std::vector<long long> es, fs;
    if (balanced) {
      // eight signed blocks with distinct run magnitudes and zero exponent
      // sum in both letters; with eight b-runs near `base` the metric bound
      // grows like 4*base/3 while no piece can exceed base+16, so any
      // base >= 13 certifies
      es = {8, -3, 7, -4, 2, -5, 1, -6};
      fs = {base + 8, -(base + 3), base + 7, -(base + 4),
            base + 2, -(base + 5), base + 1, -(base + 6)};
    } else {
      es.push_back(k);
      for (long long i = 1; i < k; ++i) es.push_back(i);
      for (long long i = 0; i < k; ++i) fs.push_back(base + k - i);
    }
    Word r;
    for (std::size_t i = 0; i < es.size(); ++i) {
      Word ap = word_pow(Word{Gen{0, 1}}, es[i]);
      Word bp = word_pow(Word{Gen{1, 1}}, fs[i]);
      r.insert(r.end(), ap.begin(), ap.end());
      r.insert(r.end(), bp.begin(), bp.end());
    }
    r = cyclically_reduce(r);
    if (r.empty()) continue;
    auto rep = check_small_cancellation({r}, Rat(1, 6));
    if (rep.passes) return RelatorSearchResult{r, rep, attempt + 1};
  }
  return std::nullopt;
}

}  // namespace qmx
