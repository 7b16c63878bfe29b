#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmx/presentation.hpp"

using namespace qmx;

namespace {
Alphabet ab() { return Alphabet{{"a", "b"}}; }
}  // namespace

TEST_CASE("symmetrization closure sizes", "[presentation]") {
  Alphabet al = ab();
  CHECK(symmetrize_relators({parse_word(al, "ab")}).size() == 4);
  CHECK(symmetrize_relators({parse_word(al, "aaa")}).size() == 2);
  CHECK(symmetrize_relators({parse_word(al, "abAB")}).size() == 8);
  CHECK_THROWS_AS(symmetrize_relators({parse_word(al, "aBb A")}), Error);
  // cyclic reduction happens first: babB ~ ab
  CHECK(symmetrize_relators({parse_word(al, "babB")}).size() == 4);
}

TEST_CASE("symmetrized set keeps provenance", "[presentation]") {
  Alphabet al = ab();
  auto s = build_symmetrized({parse_word(al, "abAB")});
  CHECK(s.entries.size() == 8);
  CHECK(s.max_len == 4);
  for (const auto& e : s.entries) {
    Word expect = rotate(e.sign > 0 ? parse_word(al, "abAB") : parse_word(al, "baBA"), e.rotation);
    CHECK(e.w == expect);
  }
}

TEST_CASE("metric gate rejects out-of-range lambda", "[presentation]") {
  Alphabet al = ab();
  CHECK_THROWS_AS(check_small_cancellation({parse_word(al, "ab")}, Rat(1, 5)), Error);
  CHECK_THROWS_AS(check_small_cancellation({parse_word(al, "ab")}, Rat(0)), Error);
  CHECK_NOTHROW(check_small_cancellation({parse_word(al, "ab")}, Rat(1, 6)));
  CHECK_NOTHROW(check_small_cancellation({parse_word(al, "ab")}, Rat(1, 12)));
}

TEST_CASE("metric gate rejects short and periodic relators", "[presentation]") {
  Alphabet al = ab();
  auto short_rel = check_small_cancellation({parse_word(al, "ab")}, Rat(1, 6));
  CHECK(!short_rel.passes);  // no headroom: 1/6 * 2 < 1

  auto power = check_small_cancellation({word_pow(parse_word(al, "a"), 3)}, Rat(1, 6));
  CHECK(!power.passes);  // proper power: period shift gives a full-length piece
  CHECK(power.max_piece >= 2);

  auto comm = check_small_cancellation({parse_word(al, "abAB")}, Rat(1, 6));
  CHECK(!comm.passes);

  auto comm7 = check_small_cancellation({word_pow(parse_word(al, "abAB"), 7)}, Rat(1, 6));
  CHECK(!comm7.passes);  // periodic: slots four apart share arcs of length 24
  CHECK(comm7.max_piece >= 24);
}

TEST_CASE("relator search self-certifies and Dehn-reduces its output", "[presentation]") {
  Alphabet al = ab();
  auto found = search_c16_relator(al, 6, 20240817);
  REQUIRE(found.has_value());
  CHECK(found->certificate.passes);
  CHECK(found->certificate.max_piece * 6 < found->relator.size());

  auto sym = build_symmetrized({found->relator});

  auto direct = dehn_reduce(found->relator, sym);
  CHECK(direct.word.empty());
  CHECK(dehn_net_counts(direct, 1)[0] == 1);

  auto inv = dehn_reduce(word_inverse(found->relator), sym);
  CHECK(inv.word.empty());
  CHECK(dehn_net_counts(inv, 1)[0] == -1);

  auto doubled = dehn_reduce(concat(found->relator, found->relator), sym);
  CHECK(doubled.word.empty());
  CHECK(dehn_net_counts(doubled, 1)[0] == 2);

  std::mt19937_64 rng(99);
  std::vector<Gen> letters = {Gen{0, 1}, Gen{0, -1}, Gen{1, 1}, Gen{1, -1}};
  for (int trial = 0; trial < 50; ++trial) {
    Word w;
    for (int i = 0; i < 6; ++i) w.push_back(letters[rng() % 4]);
    Word t = conjugate(w, found->relator);
    auto red = dehn_reduce(t, sym);
    REQUIRE(red.word.empty());
    REQUIRE(dehn_net_counts(red, 1)[0] == 1);
  }
}

TEST_CASE("Dehn reduction leaves non-members alone at short lengths", "[presentation]") {
  Alphabet al = ab();
  auto found = search_c16_relator(al, 6, 20240817);
  REQUIRE(found.has_value());
  auto sym = build_symmetrized({found->relator});
  for (const char* text : {"a", "b", "ab", "abAB", "aabb"}) {
    auto red = dehn_reduce(parse_word(al, text), sym);
    CHECK(!red.word.empty());
  }
}

TEST_CASE("balanced relator search zeroes both exponent sums", "[presentation]") {
  Alphabet al = ab();
  auto found = search_c16_relator(al, 6, 7, /*balanced=*/true);
  REQUIRE(found.has_value());
  CHECK(found->certificate.passes);
  CHECK(exponent_sum(found->relator, 0) == 0);
  CHECK(exponent_sum(found->relator, 1) == 0);
}
