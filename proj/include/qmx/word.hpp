#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "qmx/errors.hpp"

namespace qmx {

// A letter: generator index into an Alphabet, with sign +1/-1 for g / g^-1.
struct Gen {
  std::uint32_t symbol = 0;
  std::int8_t sign = 1;

  friend bool operator==(const Gen& a, const Gen& b) {
    return a.symbol == b.symbol && a.sign == b.sign;
  }
  friend bool operator!=(const Gen& a, const Gen& b) { return !(a == b); }
  friend bool operator<(const Gen& a, const Gen& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    return a.sign > b.sign;  // positive letter sorts before its inverse
  }
  Gen inverse() const { return Gen{symbol, static_cast<std::int8_t>(-sign)}; }
};

// Words are plain letter sequences; they are not forced into reduced form so
// that callers can observe pre/post reduction behaviour explicitly.
using Word = std::vector<Gen>;

struct Alphabet {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  std::uint32_t index_of(const std::string& name) const {
    for (std::uint32_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    fail(Errc::unknown_generator, "no generator named '" + name + "'");
  }
};

inline Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Gen& g : w) {
    if (!out.empty() && out.back() == g.inverse())
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

inline bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word reduced_product(const Word& a, const Word& b) {
  return free_reduce(concat(a, b));
}

inline Word conjugate(const Word& by, const Word& w) {
  return free_reduce(concat(concat(by, w), word_inverse(by)));
}

inline Word commutator(const Word& a, const Word& b) {
  Word out = concat(a, b);
  out = concat(out, word_inverse(a));
  out = concat(out, word_inverse(b));
  return free_reduce(out);
}

inline Word word_pow(const Word& w, long long n) {
  Word base = n < 0 ? word_inverse(w) : w;
  long long k = n < 0 ? -n : n;
  Word out;
  out.reserve(base.size() * static_cast<std::size_t>(k));
  for (long long i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline Word rotate(const Word& w, std::size_t i) {
  Word out;
  out.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) out.push_back(w[(i + j) % w.size()]);
  return out;
}

inline Word cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  while (r.size() >= 2 && r.front() == r.back().inverse()) {
    r.erase(r.begin());
    r.pop_back();
  }
  return r;
}

inline long long exponent_sum(const Word& w, std::uint32_t symbol) {
  long long s = 0;
  for (const Gen& g : w)
    if (g.symbol == symbol) s += g.sign;
  return s;
}

inline std::vector<long long> exponent_vector(const Word& w, std::size_t nsyms) {
  std::vector<long long> v(nsyms, 0);
  for (const Gen& g : w) {
    if (g.symbol >= nsyms) fail(Errc::unknown_generator, "letter outside alphabet");
    v[g.symbol] += g.sign;
  }
  return v;
}

// Deterministic total order: shortlex over (symbol, sign).
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Compact byte key for use in ordered/unordered containers.
inline std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.size() * 5);
  for (const Gen& g : w) {
    std::uint32_t s = g.symbol;
    k.push_back(static_cast<char>(s & 0xff));
    k.push_back(static_cast<char>((s >> 8) & 0xff));
    k.push_back(static_cast<char>((s >> 16) & 0xff));
    k.push_back(static_cast<char>((s >> 24) & 0xff));
    k.push_back(g.sign > 0 ? '+' : '-');
  }
  return k;
}

// Text convention: each generator is a single lowercase letter, its inverse
// the corresponding uppercase letter.  "1" (or the empty string) denotes the
// identity.  This is only a parsing convention; the core types are index
// based and impose no naming restrictions.
inline Word parse_word(const Alphabet& ab, std::string_view text) {
  Word w;
  if (text == "1") return w;
  for (char c : text) {
    if (c == ' ' || c == '*' || c == '.') continue;
    bool upper = c >= 'A' && c <= 'Z';
    char lower = upper ? static_cast<char>(c - 'A' + 'a') : c;
    std::string name(1, lower);
    std::uint32_t idx;
    try {
      idx = ab.index_of(name);
    } catch (const Error&) {
      fail(Errc::unknown_generator,
           "letter '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
    }
    w.push_back(Gen{idx, static_cast<std::int8_t>(upper ? -1 : 1)});
  }
  return w;
}

inline std::string word_str(const Alphabet& ab, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Gen& g : w) {
    const std::string& n = ab.names.at(g.symbol);
    if (n.size() == 1 && n[0] >= 'a' && n[0] <= 'z') {
      s.push_back(g.sign > 0 ? n[0] : static_cast<char>(n[0] - 'a' + 'A'));
    } else {
      s += n;
      if (g.sign < 0) s += "^-1";
    }
  }
  return s;
}

}  // namespace qmx
