#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmx/word.hpp"

using namespace qmx;

namespace {
Alphabet ab() { return Alphabet{{"a", "b"}}; }
}  // namespace

TEST_CASE("parse and print round-trip", "[word]") {
  Alphabet al = ab();
  CHECK(word_str(al, parse_word(al, "abAB")) == "abAB");
  CHECK(word_str(al, parse_word(al, "1")) == "1");
  CHECK(word_str(al, parse_word(al, "a b . A*B")) == "abAB");
  CHECK(parse_word(al, "aA").size() == 2);  // parser keeps letters; reduction is explicit
  CHECK(free_reduce(parse_word(al, "aA")).empty());
  CHECK_THROWS_AS(parse_word(al, "ac"), Error);
}

TEST_CASE("free reduction basics", "[word]") {
  Alphabet al = ab();
  CHECK(free_reduce(parse_word(al, "abBA")).empty());
  Alphabet al3{{"a", "b", "c"}};
  CHECK(word_str(al3, free_reduce(parse_word(al3, "abBcC"))) == "a");
}

TEST_CASE("free reduction is idempotent and inverts correctly (exhaustive)", "[word]") {
  // all words of length <= 7 over {a, A, b, B}
  std::vector<Gen> letters = {Gen{0, 1}, Gen{0, -1}, Gen{1, 1}, Gen{1, -1}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= 7; ++len) {
    std::vector<Word> next;
    next.reserve(frontier.size() * letters.size());
    for (const Word& w : frontier)
      for (const Gen& g : letters) {
        Word e = w;
        e.push_back(g);
        next.push_back(std::move(e));
      }
    for (const Word& w : next) {
      Word r = free_reduce(w);
      REQUIRE(is_freely_reduced(r));
      REQUIRE(free_reduce(r) == r);
      REQUIRE(free_reduce(concat(w, word_inverse(w))).empty());
      REQUIRE(free_reduce(word_inverse(r)) == word_inverse(free_reduce(w)));
    }
    frontier = std::move(next);
  }
}

TEST_CASE("free reduction on long random words", "[word]") {
  std::mt19937_64 rng(12345);
  std::vector<Gen> letters = {Gen{0, 1}, Gen{0, -1}, Gen{1, 1}, Gen{1, -1}};
  for (int trial = 0; trial < 2000; ++trial) {
    Word w;
    for (int i = 0; i < 12; ++i) w.push_back(letters[rng() % 4]);
    Word r = free_reduce(w);
    REQUIRE(is_freely_reduced(r));
    // reduction never changes the exponent image
    REQUIRE(exponent_vector(w, 2) == exponent_vector(r, 2));
  }
}

TEST_CASE("word algebra helpers", "[word]") {
  Alphabet al = ab();
  Word a = parse_word(al, "a"), b = parse_word(al, "b");
  CHECK(word_str(al, commutator(a, b)) == "abAB");
  CHECK(word_str(al, conjugate(b, a)) == "baB");
  CHECK(word_str(al, word_pow(parse_word(al, "ab"), 3)) == "ababab");
  CHECK(word_str(al, word_pow(a, -2)) == "AA");
  CHECK(word_pow(a, 0).empty());
  CHECK(word_str(al, cyclically_reduce(parse_word(al, "Ababa"))) == "bab");
  CHECK(exponent_sum(parse_word(al, "abAb"), 1) == 2);
  auto v = exponent_vector(parse_word(al, "abAb"), 2);
  CHECK(v == std::vector<long long>{0, 2});
}

TEST_CASE("shortlex order and keys", "[word]") {
  Alphabet al = ab();
  CHECK(word_less(parse_word(al, "a"), parse_word(al, "ab")));
  CHECK(!word_less(parse_word(al, "ab"), parse_word(al, "ab")));
  CHECK(word_key(parse_word(al, "ab")) != word_key(parse_word(al, "ba")));
  CHECK(word_key(parse_word(al, "ab")) == word_key(parse_word(al, "ab")));
}

TEST_CASE("rotations", "[word]") {
  Alphabet al = ab();
  Word w = parse_word(al, "abAB");
  CHECK(word_str(al, rotate(w, 1)) == "bABa");
  CHECK(word_str(al, rotate(w, 4)) == "abAB");
}
