#pragma once

#include "qmx/ball.hpp"
#include "qmx/qm.hpp"

namespace qmx {

// Alphabet K ⊔ X for words relative to a subgroup: X is a finite list of
// ambient words closed under inverse, K is a subgroup given by a membership
// test, and K_pool is the finite sample of K used wherever an edge set or a
// candidate set has to be materialized.  All pool-derived quantities are
// relative to the pool by construction.
struct RelAlphabet {
  CtxPtr ambient;
  SubgroupSpec K;
  std::vector<Word> X;                     // reduced, inverse-closed
  std::vector<std::uint32_t> x_inverse;    // index of the inverse of X[i]
  std::vector<Word> K_pool;                // reduced, inverse-closed members of K
};

inline RelAlphabet make_rel_alphabet(CtxPtr ambient, SubgroupSpec K, std::vector<Word> X,
                                     std::vector<Word> K_pool) {
  RelAlphabet a;
  a.ambient = std::move(ambient);
  a.K = std::move(K);
  for (Word& x : X) x = a.ambient->reduce(x);
  a.X = std::move(X);
  for (std::size_t i = 0; i < a.X.size(); ++i) {
    if (a.ambient->is_identity(a.X[i]))
      fail(Errc::schema_error, "relative generator reduces to the identity");
    if (membership(*a.ambient, a.K, a.X[i]))
      fail(Errc::x_letter_in_subgroup,
           "relative generator '" + word_str(a.ambient->pres.alphabet, a.X[i]) + "' lies in the subgroup");
  }
  a.x_inverse.assign(a.X.size(), 0);
  for (std::size_t i = 0; i < a.X.size(); ++i) {
    Word inv = a.ambient->reduce(word_inverse(a.X[i]));
    bool found = false;
    for (std::size_t j = 0; j < a.X.size(); ++j)
      if (a.ambient->equal(a.X[j], inv)) {
        a.x_inverse[i] = static_cast<std::uint32_t>(j);
        found = true;
        break;
      }
    if (!found)
      fail(Errc::schema_error, "relative generating set is not closed under inverse (missing inverse of '" +
                                   word_str(a.ambient->pres.alphabet, a.X[i]) + "')");
  }
  // pool: validate membership, reduce, close under inverse, dedup
  ElementIndex seen(a.ambient);
  auto add_pool = [&](const Word& w) {
    Word r = a.ambient->reduce(w);
    if (a.ambient->is_identity(r)) return;
    if (!membership(*a.ambient, a.K, r))
      fail(Errc::k_letter_not_in_subgroup,
           "pool word '" + word_str(a.ambient->pres.alphabet, w) + "' fails subgroup membership");
    bool inserted = false;
    seen.intern(r, &inserted);
    if (inserted) a.K_pool.push_back(r);
  };
  for (const Word& w : K_pool) {
    add_pool(w);
    add_pool(word_inverse(w));
  }
  return a;
}

// --- relative words ----------------------------------------------------------

struct KLetter {
  Word w;  // reduced ambient word, a member of K
};
struct XLetter {
  std::uint32_t idx = 0;  // index into RelAlphabet::X
};
using Syllable = std::variant<KLetter, XLetter>;

struct RelWord {
  std::vector<Syllable> syl;
};

inline std::size_t rel_len(const RelWord& a) { return a.syl.size(); }

inline std::size_t x_count(const RelWord& a) {
  std::size_t n = 0;
  for (const auto& s : a.syl) n += std::holds_alternative<XLetter>(s) ? 1 : 0;
  return n;
}

inline RelWord rel_concat(const RelWord& a, const RelWord& b) {
  RelWord c = a;
  c.syl.insert(c.syl.end(), b.syl.begin(), b.syl.end());
  return c;
}

inline RelWord rel_inverse(const RelAlphabet& alph, const RelWord& a) {
  RelWord r;
  for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it) {
    if (const auto* k = std::get_if<KLetter>(&*it))
      r.syl.push_back(KLetter{alph.ambient->reduce(word_inverse(k->w))});
    else
      r.syl.push_back(XLetter{alph.x_inverse[std::get<XLetter>(*it).idx]});
  }
  return r;
}

// Serialization used for display and for deterministic tie-breaking; X
// syllables order before K syllables.
inline std::string rel_word_key(const RelAlphabet& alph, const RelWord& a) {
  std::string s;
  for (const auto& syl : a.syl) {
    if (const auto* x = std::get_if<XLetter>(&syl)) {
      s.push_back('\x01');
      s += std::to_string(x->idx);
    } else {
      s.push_back('\x02');
      s += word_key(alph.ambient->reduce(std::get<KLetter>(syl).w));
    }
    s.push_back(';');
  }
  return s;
}

inline std::string rel_word_str(const RelAlphabet& alph, const RelWord& a) {
  if (a.syl.empty()) return "1";
  std::string s;
  for (const auto& syl : a.syl) {
    if (!s.empty()) s += ".";
    if (const auto* x = std::get_if<XLetter>(&syl))
      s += "x(" + word_str(alph.ambient->pres.alphabet, alph.X[x->idx]) + ")";
    else
      s += "k(" + word_str(alph.ambient->pres.alphabet, std::get<KLetter>(syl).w) + ")";
  }
  return s;
}

// Normal form: merge adjacent K-letters in the ambient group, drop identity
// K-letters, cancel adjacent mutually-inverse X-letters; single stack pass
// reaches the fixpoint.  The image under theta is unchanged.
inline RelWord normal_form(const RelAlphabet& alph, const RelWord& a) {
  std::vector<Syllable> stack;
  auto push_k = [&](Word w) {
    w = alph.ambient->reduce(std::move(w));
    for (;;) {
      if (alph.ambient->is_identity(w)) return;
      if (stack.empty() || !std::holds_alternative<KLetter>(stack.back())) {
        stack.push_back(KLetter{std::move(w)});
        return;
      }
      w = alph.ambient->reduce(concat(std::get<KLetter>(stack.back()).w, w));
      stack.pop_back();
    }
  };
  for (const auto& syl : a.syl) {
    if (const auto* k = std::get_if<KLetter>(&syl)) {
      if (!membership(*alph.ambient, alph.K, k->w))
        fail(Errc::k_letter_not_in_subgroup,
             "K-letter '" + word_str(alph.ambient->pres.alphabet, k->w) + "' fails subgroup membership");
      push_k(k->w);
    } else {
      std::uint32_t idx = std::get<XLetter>(syl).idx;
      if (idx >= alph.X.size()) fail(Errc::unknown_generator, "X-letter index out of range");
      if (!stack.empty() && std::holds_alternative<XLetter>(stack.back()) &&
          alph.x_inverse[std::get<XLetter>(stack.back()).idx] == idx) {
        stack.pop_back();  // x · x^{-1} cancels; K-letters flanking the pair
                           // meet through push_k on the next K syllable
      } else {
        stack.push_back(XLetter{idx});
      }
    }
  }
  RelWord out;
  out.syl = std::move(stack);
  return out;
}

inline bool is_normal_form(const RelAlphabet& alph, const RelWord& a) {
  for (std::size_t i = 0; i < a.syl.size(); ++i) {
    if (const auto* k = std::get_if<KLetter>(&a.syl[i])) {
      if (alph.ambient->is_identity(k->w)) return false;
      if (i + 1 < a.syl.size() && std::holds_alternative<KLetter>(a.syl[i + 1])) return false;
    } else if (i + 1 < a.syl.size() && std::holds_alternative<XLetter>(a.syl[i + 1])) {
      if (alph.x_inverse[std::get<XLetter>(a.syl[i]).idx] == std::get<XLetter>(a.syl[i + 1]).idx)
        return false;
    }
  }
  return true;
}

// --- the two projections -----------------------------------------------------

// Deletes X-letters and multiplies the K-letters in order; a homomorphism
// from the free product to K, so pulled-back maps keep their defect.
inline Word eta(const RelAlphabet& alph, const RelWord& a) {
  Word out;
  for (const auto& syl : a.syl)
    if (const auto* k = std::get_if<KLetter>(&syl)) out.insert(out.end(), k->w.begin(), k->w.end());
  return alph.ambient->reduce(out);
}

// Substitutes each X-letter by its ambient word and multiplies everything in
// the ambient group.
inline Word theta(const RelAlphabet& alph, const RelWord& a) {
  Word out;
  for (const auto& syl : a.syl) {
    const Word& piece =
        std::holds_alternative<KLetter>(syl) ? std::get<KLetter>(syl).w : alph.X[std::get<XLetter>(syl).idx];
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return alph.ambient->reduce(out);
}

inline Rat phi_tilde(const Quasimorphism& phi, const RelAlphabet& alph, const RelWord& a) {
  return qm_eval(phi, eta(alph, a));
}

inline Rat phi_tilde_C(const Quasimorphism& phi, const RelAlphabet& alph, const Rat& C, const RelWord& a) {
  if (C < 0) fail(Errc::schema_error, "penalty constant must be nonnegative");
  return phi_tilde(phi, alph, a) + C * Rat(static_cast<long long>(x_count(a)));
}

}  // namespace qmx
