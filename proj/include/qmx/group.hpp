#pragma once

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "qmx/presentation.hpp"

namespace qmx {

struct GroupContext;
using CtxPtr = std::shared_ptr<const GroupContext>;

// --- integer lattice reduction (for abelianized invariants) -----------------

namespace detail {

// Row-echelon basis of the lattice spanned by `rows` (integer Gauss/Hermite).
inline std::vector<std::vector<long long>> lattice_echelon(std::vector<std::vector<long long>> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const std::vector<long long>& r) {
                              return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
                            }),
             rows.end());
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::size_t pivot = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (pivot == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[pivot][c])) pivot = i;
      }
      if (pivot == rows.size()) break;
      std::swap(rows[r], rows[pivot]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        long long q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

// Canonical coset representative of v modulo the lattice with echelon basis
// (pivots positive, so the pivot coordinate lands in [0, pivot)).
inline std::vector<long long> lattice_reduce(const std::vector<std::vector<long long>>& basis,
                                             std::vector<long long> v) {
  for (const auto& row : basis) {
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    long long h = row[c];
    long long q = v[c] / h;
    if (v[c] % h != 0 && v[c] < 0) --q;
    for (std::size_t j = 0; j < row.size(); ++j) v[j] -= q * row[j];
  }
  return v;
}

inline std::string vec_key(const std::vector<long long>& v) {
  std::string s;
  for (long long x : v) {
    s += std::to_string(x);
    s.push_back(',');
  }
  return s;
}

}  // namespace detail

// --- strategies --------------------------------------------------------------

struct FreeGroupStrategy {};

struct FreeAbelianStrategy {};

struct SmallCancellationStrategy {
  SymmetrizedSet sym;
  SmallCancellationReport certificate;
};

struct Homomorphism {
  CtxPtr target;
  std::vector<Word> images;  // one image word per source generator

  Word apply(const Word& w) const {
    Word out;
    for (const Gen& g : w) {
      if (g.symbol >= images.size()) fail(Errc::unknown_generator, "letter outside homomorphism domain");
      const Word& im = g.sign > 0 ? images[g.symbol] : word_inverse(images[g.symbol]);
      out.insert(out.end(), im.begin(), im.end());
    }
    return free_reduce(out);
  }
};

// The group whose elements are the ambient group's words; identity is decided
// by the ambient strategy.  The homomorphism is carried so that membership of
// a word in this kernel stays checkable.
struct KernelStrategy {
  CtxPtr ambient;
  Homomorphism hom;
};

// Central extension of `base` by an infinite cyclic group generated by the
// letter `z_symbol`.  Elements evaluate to (base element, integer height).
// Multiplying (g, m) by a base letter x adds omega(g, x) to the height, where
// omega is the bilinear-form cocycle g^T B x (requires a free-abelian base);
// with no form the extension is the direct product base x Z.  This covers the
// integer Heisenberg group (B = e_12) and products like Z x F2.
struct CentralZExtStrategy {
  CtxPtr base;
  std::uint32_t z_symbol = 0;
  std::optional<std::vector<std::vector<long long>>> bilinear;
};

using Strategy = std::variant<FreeGroupStrategy, FreeAbelianStrategy, SmallCancellationStrategy,
                              KernelStrategy, CentralZExtStrategy>;

// --- group context -----------------------------------------------------------

struct CentralValue {
  std::vector<long long> base_exps;  // bilinear path (free-abelian base)
  Word base_word;                    // zero-cocycle path (any base)
  long long height = 0;
};

struct GroupContext {
  GroupPresentation pres;
  Strategy strategy;
  std::vector<std::vector<long long>> abelian_lattice;  // echelon basis from relator exponents

  std::size_t rank() const { return pres.alphabet.size(); }

  // -- central-extension evaluation --

  CentralValue central_eval(const Word& w) const {
    const auto& s = std::get<CentralZExtStrategy>(strategy);
    CentralValue v;
    if (s.bilinear) {
      v.base_exps.assign(s.base->rank(), 0);
      const auto& B = *s.bilinear;
      for (const Gen& g : w) {
        if (g.symbol == s.z_symbol) {
          v.height += g.sign;
          continue;
        }
        std::uint32_t bs = g.symbol < s.z_symbol ? g.symbol : g.symbol - 1;
        long long omega = 0;
        for (std::size_t j = 0; j < v.base_exps.size(); ++j) omega += v.base_exps[j] * B[j][bs];
        v.height += g.sign * omega;
        v.base_exps[bs] += g.sign;
      }
    } else {
      Word bw;
      for (const Gen& g : w) {
        if (g.symbol == s.z_symbol) {
          v.height += g.sign;
          continue;
        }
        std::uint32_t bs = g.symbol < s.z_symbol ? g.symbol : g.symbol - 1;
        bw.push_back(Gen{bs, g.sign});
      }
      v.base_word = s.base->reduce(bw);
    }
    return v;
  }

  // -- identity / normal forms --

  bool is_identity(const Word& w) const {
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FreeGroupStrategy>) {
            return free_reduce(w).empty();
          } else if constexpr (std::is_same_v<T, FreeAbelianStrategy>) {
            auto v = exponent_vector(w, rank());
            return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
          } else if constexpr (std::is_same_v<T, SmallCancellationStrategy>) {
            return dehn_reduce(w, s.sym).word.empty();
          } else if constexpr (std::is_same_v<T, KernelStrategy>) {
            return s.ambient->is_identity(w);
          } else {
            CentralValue v = central_eval(w);
            if (v.height != 0) return false;
            const auto& cz = std::get<CentralZExtStrategy>(strategy);
            if (cz.bilinear)
              return std::all_of(v.base_exps.begin(), v.base_exps.end(),
                                 [](long long x) { return x == 0; });
            return v.base_word.empty();
          }
        },
        strategy);
  }

  bool has_canonical() const {
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SmallCancellationStrategy>)
            return false;
          else if constexpr (std::is_same_v<T, KernelStrategy>)
            return s.ambient->has_canonical();
          else if constexpr (std::is_same_v<T, CentralZExtStrategy>)
            return s.bilinear ? true : s.base->has_canonical();
          else
            return true;
        },
        strategy);
  }

  std::string canonical_key(const Word& w) const {
    return std::visit(
        [&](const auto& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FreeGroupStrategy>) {
            return "F" + word_key(free_reduce(w));
          } else if constexpr (std::is_same_v<T, FreeAbelianStrategy>) {
            return "A" + detail::vec_key(exponent_vector(w, rank()));
          } else if constexpr (std::is_same_v<T, SmallCancellationStrategy>) {
            fail(Errc::strategy_unsupported, "no canonical form under Dehn reduction");
          } else if constexpr (std::is_same_v<T, KernelStrategy>) {
            return "K" + s.ambient->canonical_key(w);
          } else {
            CentralValue v = central_eval(w);
            std::string k = "C";
            if (s.bilinear)
              k += detail::vec_key(v.base_exps);
            else
              k += s.base->canonical_key(v.base_word);
            k += "|" + std::to_string(v.height);
            return k;
          }
        },
        strategy);
  }

  // Best-effort normal form: canonical where a canonical form exists, Dehn
  // reduced otherwise.
  Word reduce(const Word& w) const {
    return std::visit(
        [&](const auto& s) -> Word {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FreeGroupStrategy>) {
            return free_reduce(w);
          } else if constexpr (std::is_same_v<T, FreeAbelianStrategy>) {
            auto v = exponent_vector(w, rank());
            Word out;
            for (std::uint32_t i = 0; i < v.size(); ++i) {
              Word p = word_pow(Word{Gen{i, 1}}, v[i]);
              out.insert(out.end(), p.begin(), p.end());
            }
            return out;
          } else if constexpr (std::is_same_v<T, SmallCancellationStrategy>) {
            return dehn_reduce(w, s.sym).word;
          } else if constexpr (std::is_same_v<T, KernelStrategy>) {
            return s.ambient->reduce(w);
          } else {
            CentralValue v = central_eval(w);
            Word out;
            if (s.bilinear) {
              for (std::uint32_t i = 0; i < v.base_exps.size(); ++i) {
                std::uint32_t sym = i < s.z_symbol ? i : i + 1;
                Word p = word_pow(Word{Gen{sym, 1}}, v.base_exps[i]);
                out.insert(out.end(), p.begin(), p.end());
              }
            } else {
              Word bw = s.base->reduce(v.base_word);
              for (const Gen& g : bw) {
                std::uint32_t sym = g.symbol < s.z_symbol ? g.symbol : g.symbol + 1;
                out.push_back(Gen{sym, g.sign});
              }
            }
            // the emitted base prefix accrues cocycle height of its own; the
            // z-tail must make up the difference, not restate the total
            long long drift = central_eval(out).height;
            Word zp = word_pow(Word{Gen{s.z_symbol, 1}}, v.height - drift);
            out.insert(out.end(), zp.begin(), zp.end());
            return out;
          }
        },
        strategy);
  }

  bool equal(const Word& u, const Word& v) const {
    if (has_canonical()) return canonical_key(u) == canonical_key(v);
    return is_identity(reduced_product(u, word_inverse(v)));
  }

  // Exponent vector reduced modulo the relator lattice: a computable invariant
  // of the group element in every strategy.
  std::vector<long long> abelianized(const Word& w) const {
    return detail::lattice_reduce(abelian_lattice, exponent_vector(w, rank()));
  }
};

// --- construction helpers ----------------------------------------------------

namespace detail {
inline std::vector<std::vector<long long>> relator_lattice(const GroupPresentation& p) {
  std::vector<std::vector<long long>> rows;
  for (const Word& r : p.relators) rows.push_back(exponent_vector(r, p.alphabet.size()));
  return lattice_echelon(rows);
}
}  // namespace detail

inline CtxPtr make_free_group(std::vector<std::string> names) {
  auto c = std::make_shared<GroupContext>();
  c->pres = make_presentation(std::move(names));
  c->strategy = FreeGroupStrategy{};
  return c;
}

inline CtxPtr make_free_abelian(std::vector<std::string> names) {
  auto c = std::make_shared<GroupContext>();
  c->pres = make_presentation(std::move(names));
  c->strategy = FreeAbelianStrategy{};
  return c;
}

// Quotient by the normal closure of `relators`; refuses presentations that do
// not carry a C'(1/6) certificate, since Dehn reduction is only a complete
// identity test under that hypothesis.
inline CtxPtr make_sc_quotient(std::vector<std::string> names, const std::vector<std::string>& relator_texts) {
  auto c = std::make_shared<GroupContext>();
  c->pres = make_presentation(std::move(names), relator_texts);
  auto rep = check_small_cancellation(c->pres.relators, Rat(1, 6));
  if (!rep.passes)
    fail(Errc::strategy_unsupported, "presentation is not certified C'(1/6): " + rep.reason);
  c->strategy = SmallCancellationStrategy{build_symmetrized(c->pres.relators), rep};
  c->abelian_lattice = detail::relator_lattice(c->pres);
  return c;
}

inline CtxPtr make_sc_quotient(std::vector<std::string> names, const std::vector<Word>& relators) {
  auto c = std::make_shared<GroupContext>();
  c->pres = make_presentation(std::move(names));
  c->pres.relators = relators;
  auto rep = check_small_cancellation(relators, Rat(1, 6));
  if (!rep.passes)
    fail(Errc::strategy_unsupported, "presentation is not certified C'(1/6): " + rep.reason);
  c->strategy = SmallCancellationStrategy{build_symmetrized(relators), rep};
  c->abelian_lattice = detail::relator_lattice(c->pres);
  return c;
}

inline CtxPtr make_kernel_ctx(CtxPtr ambient, Homomorphism hom) {
  if (hom.images.size() != ambient->rank())
    fail(Errc::schema_error, "homomorphism needs one image per ambient generator");
  auto c = std::make_shared<GroupContext>();
  c->pres = ambient->pres;
  c->strategy = KernelStrategy{std::move(ambient), std::move(hom)};
  return c;
}

// names = base generators followed by the central letter (last).
inline CtxPtr make_central_z(std::vector<std::string> names, bool abelian_base,
                             std::optional<std::vector<std::vector<long long>>> bilinear,
                             std::vector<Word> doc_relators = {}) {
  if (names.size() < 2) fail(Errc::schema_error, "central extension needs a base generator and z");
  std::vector<std::string> base_names(names.begin(), names.end() - 1);
  CtxPtr base = abelian_base ? make_free_abelian(base_names) : make_free_group(base_names);
  if (bilinear && !abelian_base)
    fail(Errc::strategy_unsupported, "bilinear cocycle requires a free-abelian base");
  if (bilinear) {
    if (bilinear->size() != base_names.size())
      fail(Errc::schema_error, "cocycle matrix must be square of base rank");
    for (const auto& row : *bilinear)
      if (row.size() != base_names.size())
        fail(Errc::schema_error, "cocycle matrix must be square of base rank");
  }
  auto c = std::make_shared<GroupContext>();
  c->pres = make_presentation(names);
  c->pres.relators = std::move(doc_relators);
  c->strategy = CentralZExtStrategy{base, static_cast<std::uint32_t>(names.size() - 1), std::move(bilinear)};
  c->abelian_lattice = detail::relator_lattice(c->pres);
  return c;
}

// Integer Heisenberg group <x, y, z | [x,y]=z, z central>.
inline CtxPtr make_heisenberg() {
  auto c = make_central_z({"x", "y", "z"}, true, std::vector<std::vector<long long>>{{0, 1}, {0, 0}});
  auto m = std::const_pointer_cast<GroupContext>(c);
  m->pres.relators = {parse_word(m->pres.alphabet, "xyXYZ"), parse_word(m->pres.alphabet, "xzXZ"),
                      parse_word(m->pres.alphabet, "yzYZ")};
  m->abelian_lattice = detail::relator_lattice(m->pres);
  return c;
}

// Z x F_2 with central letter z.
inline CtxPtr make_z_cross_f2() {
  auto c = make_central_z({"x", "y", "z"}, false, std::nullopt);
  auto m = std::const_pointer_cast<GroupContext>(c);
  m->pres.relators = {parse_word(m->pres.alphabet, "xzXZ"), parse_word(m->pres.alphabet, "yzYZ")};
  m->abelian_lattice = detail::relator_lattice(m->pres);
  return c;
}

// --- subgroup specifications -------------------------------------------------

struct WholeGroup {};

struct KernelSpec {
  Homomorphism hom;
};

struct NormalClosureSpec {
  std::vector<Word> words;
  CtxPtr quotient;  // decidable quotient context; required for membership
};

using SubgroupSpec = std::variant<WholeGroup, KernelSpec, NormalClosureSpec>;

inline bool membership(const GroupContext& ctx, const SubgroupSpec& spec, const Word& w) {
  (void)ctx;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeGroup>) {
          return true;
        } else if constexpr (std::is_same_v<T, KernelSpec>) {
          return s.hom.target->is_identity(s.hom.apply(w));
        } else {
          if (!s.quotient)
            fail(Errc::undecidable_spec, "normal closure membership needs a quotient context");
          return s.quotient->is_identity(w);
        }
      },
      spec);
}

// --- element interning (dedup across a strategy) -----------------------------

// Deduplicates group elements.  With a canonical form this is a map lookup;
// otherwise candidates are bucketed by the abelianized invariant and compared
// pairwise through the word-problem oracle.
class ElementIndex {
 public:
  explicit ElementIndex(CtxPtr ctx) : ctx_(std::move(ctx)) {}

  std::optional<std::uint32_t> find(const Word& reduced) const {
    if (ctx_->has_canonical()) {
      auto it = by_key_.find(ctx_->canonical_key(reduced));
      if (it == by_key_.end()) return std::nullopt;
      return it->second;
    }
    auto it = buckets_.find(detail::vec_key(ctx_->abelianized(reduced)));
    if (it == buckets_.end()) return std::nullopt;
    for (std::uint32_t id : it->second)
      if (ctx_->equal(words_[id], reduced)) return id;
    return std::nullopt;
  }

  std::uint32_t intern(const Word& reduced, bool* inserted = nullptr) {
    if (auto id = find(reduced)) {
      if (inserted) *inserted = false;
      return *id;
    }
    std::uint32_t id = static_cast<std::uint32_t>(words_.size());
    words_.push_back(reduced);
    if (ctx_->has_canonical())
      by_key_[ctx_->canonical_key(reduced)] = id;
    else
      buckets_[detail::vec_key(ctx_->abelianized(reduced))].push_back(id);
    if (inserted) *inserted = true;
    return id;
  }

  const Word& word_of(std::uint32_t id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }

 private:
  CtxPtr ctx_;
  std::vector<Word> words_;
  std::map<std::string, std::uint32_t> by_key_;
  std::map<std::string, std::vector<std::uint32_t>> buckets_;
};

}  // namespace qmx
