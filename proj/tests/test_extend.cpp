#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmx/extend.hpp"
#include "qmx/relball.hpp"

using namespace qmx;

namespace {

// Free group on {a, b}, K = ker(a-exponent), X = {a, a^-1}, pool seeded by b.
struct FixtureA {
  CtxPtr F = make_free_group({"a", "b"});
  CtxPtr Z = make_free_abelian({"t"});
  Homomorphism aexp;
  RelAlphabet alph;
  Quasimorphism bexp;
  FixtureA() {
    aexp = Homomorphism{Z, {parse_word(Z->pres.alphabet, "t"), Word{}}};
    alph = make_rel_alphabet(F, KernelSpec{aexp},
                             {parse_word(F->pres.alphabet, "a"), parse_word(F->pres.alphabet, "A")},
                             {parse_word(F->pres.alphabet, "b")});
    bexp = exponent_qm(F, {0, 1}, "bexp");
  }
  Word w(const char* t) const { return parse_word(F->pres.alphabet, t); }
};

RelWord random_rel_word(const FixtureA& f, std::mt19937_64& rng, int syllables) {
  std::vector<Word> pool = pool_closure(f.alph, 2);
  RelWord a;
  for (int i = 0; i < syllables; ++i) {
    if (rng() % 2 == 0)
      a.syl.push_back(XLetter{static_cast<std::uint32_t>(rng() % f.alph.X.size())});
    else
      a.syl.push_back(KLetter{pool[rng() % pool.size()]});
  }
  return normal_form(f.alph, a);
}

}  // namespace

TEST_CASE("parameter defaults satisfy the standing constraints", "[extend]") {
  ExtensionParams p = make_extension_params(1, 0);
  CHECK(p.C == 20);
  CHECK(p.epsilon == Rat(1, 2));
  CHECK(p.qinv_upper == 0);
  validate_params(p);  // must not throw

  ExtensionParams q = make_extension_params(Rat("201/8"), Rat("67/32"));
  CHECK(q.C == Rat("16817/32"));  // 20*C0 + 11*D
  validate_params(q);

  // a non-positive fit is clamped to 1 rather than rejected
  CHECK(make_extension_params(0, 0).C0 == 1);
  CHECK(make_extension_params(-3, 1).C0 == 1);

  SECTION("hand-built parameter sets are vetted before any search") {
    ExtensionParams bad = make_extension_params(1, 1);
    bad.C = 30;  // below 20*1 + 11*1
    CHECK_THROWS_AS(validate_params(bad), Error);
    bad = make_extension_params(1, 0);
    bad.epsilon = 2;  // must stay below C0
    CHECK_THROWS_AS(validate_params(bad), Error);
    bad = make_extension_params(1, 0);
    bad.declared_slack = -1;
    CHECK_THROWS_AS(validate_params(bad), Error);
    bad = make_extension_params(1, 0);
    bad.C0 = -1;
    CHECK_THROWS_AS(validate_params(bad), Error);
  }
}

TEST_CASE("subgroup elements are resolved exactly by the single-letter witness", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);

  ExtensionValue v = extension_value(f.w("bbb"), f.bexp, p, f.alph);
  CHECK(v.certified);
  CHECK(v.lower == 3);
  CHECK(v.upper == 3);
  CHECK(v.searched_x == 0);
  CHECK(rel_word_str(f.alph, v.witness) == "k(bbb)");

  // identity: empty witness, value zero
  ExtensionValue e = extension_value(Word{}, f.bexp, p, f.alph);
  CHECK(e.certified);
  CHECK(e.upper == 0);
  CHECK(rel_len(e.witness) == 0);

  // a conjugated kernel word is still a kernel word
  ExtensionValue c = extension_value(f.w("abA"), f.bexp, p, f.alph);
  CHECK(c.certified);
  CHECK(c.upper == 1);
}

TEST_CASE("the minimizing witness pays the per-X-letter penalty", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);  // C = 20

  // minimal preimage of aab spends two X-letters and one pool letter
  ExtensionValue v = extension_value(f.w("aab"), f.bexp, p, f.alph);
  CHECK(v.certified);
  CHECK(v.upper == 41);  // phi~ = 1 plus 20 per X-letter
  CHECK(v.lower == 41);
  CHECK(rel_word_str(f.alph, v.witness) == "x(a).x(a).k(b)");

  ExtensionValue u = extension_value(f.w("AB"), f.bexp, p, f.alph);
  CHECK(u.certified);
  CHECK(u.upper == 19);  // phi~ = -1 plus one X-letter
}

TEST_CASE("certification horizon grows with the X-length cap", "[extend]") {
  FixtureA f;
  Word g = f.w("aaaaa");

  // every preimage of a^5 carries at least five X-letters; searching exactly
  // that far leaves the cutoff line below the incumbent
  ExtensionParams tight = make_extension_params(1, 0);
  tight.x_length_cap = 6;
  ExtensionValue v6 = extension_value(g, f.bexp, tight, f.alph);
  CHECK_FALSE(v6.certified);
  CHECK(v6.upper == 100);
  CHECK(v6.lower == 92);  // cutoff for unsearched strata at L = 6
  CHECK(v6.searched_x == 6);

  ExtensionParams wide = tight;
  wide.x_length_cap = 7;
  ExtensionValue v7 = extension_value(g, f.bexp, wide, f.alph);
  CHECK(v7.certified);
  CHECK(v7.upper == 100);
  CHECK(v7.lower == 100);

  // a correct distance hint never changes the value, only the work bound
  ExtensionValue vh = extension_value(g, f.bexp, wide, f.alph, 5);
  CHECK(vh.certified);
  CHECK(vh.upper == v7.upper);

  SECTION("an empty search window is an error, not a silent zero") {
    ExtensionParams tiny = make_extension_params(1, 0);
    tiny.x_length_cap = 3;
    CHECK_THROWS_AS(extension_value(g, f.bexp, tiny, f.alph), Error);
    try {
      extension_value(g, f.bexp, tiny, f.alph);
    } catch (const Error& err) {
      CHECK(err.code() == Errc::no_candidate_found);
    }
  }
}

TEST_CASE("penalized values obey the coarse triangle bound", "[extend]") {
  FixtureA f;
  // use a genuinely non-homomorphic base so the defect term matters
  Quasimorphism ab = brooks_qm(f.F, f.w("ab"), "phi_ab");
  ExtensionParams p = make_extension_params(1, 1);  // C = 31, D = 1
  std::mt19937_64 rng(20240817);
  for (int t = 0; t < 300; ++t) {
    RelWord a = random_rel_word(f, rng, 1 + static_cast<int>(rng() % 5));
    RelWord b = random_rel_word(f, rng, 1 + static_cast<int>(rng() % 5));
    RelWord prod = normal_form(f.alph, rel_concat(a, b));
    Rat lhs = rat_abs(Rat(phi_tilde_C(ab, f.alph, p.C, prod) -
                          phi_tilde_C(ab, f.alph, p.C, a) - phi_tilde(ab, f.alph, b)));
    Rat rhs = p.C * Rat(static_cast<long long>(x_count(b))) + p.D_upper;
    REQUIRE(lhs <= rhs);
  }
}

TEST_CASE("subwords of a minimizer are near-minimal for their own image", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);
  // with a zero defect the tolerance 4D + epsilon is below the value grid, so
  // near-minimal collapses to exactly minimal
  for (const char* text : {"aab", "aabab", "abba", "baab"}) {
    ExtensionValue v = extension_value(f.w(text), f.bexp, p, f.alph);
    REQUIRE(v.certified);
    for (std::size_t i = 0; i < rel_len(v.witness); ++i) {
      for (std::size_t j = i + 1; j <= rel_len(v.witness); ++j) {
        RelWord sub = rel_subword(f.alph, v.witness, i, j);
        Rat sub_cost = phi_tilde_C(f.bexp, f.alph, p.C, sub);
        ExtensionValue opt = extension_value(theta(f.alph, sub), f.bexp, p, f.alph);
        REQUIRE(opt.certified);
        REQUIRE(sub_cost <= Rat(opt.upper + 4 * p.D_upper + p.epsilon));
      }
    }
  }
}

TEST_CASE("certified witnesses pass the quasi-geodesic audit", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);
  Ball b2 = ball(f.F, 2);
  std::vector<RelWord> witnesses;
  for (const Word& g : b2.elements) {
    ExtensionValue v = extension_value(g, f.bexp, p, f.alph);
    if (v.certified) witnesses.push_back(v.witness);
  }
  REQUIRE(witnesses.size() == b2.elements.size());
  RelBall rb = rel_ball(f.alph, 4);
  AuditResult audit = witness_quasigeodesic_audit(witnesses, rb);
  CHECK(audit.failed == 0);
  CHECK(audit.passed == witnesses.size());
  CHECK(audit.fraction == 1);

  SECTION("a path that leaves the audited ball fails loudly") {
    RelWord far;
    for (int i = 0; i < 6; ++i) far.syl.push_back(XLetter{0});
    RelBall tiny = rel_ball(f.alph, 2);
    CHECK_THROWS_AS(witness_quasigeodesic_audit({far}, tiny), Error);
  }
}

TEST_CASE("reference preimages sharpen the certified lower bound", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);
  Word g = f.w("aab");
  RelWord ref;
  ref.syl.push_back(XLetter{0});
  ref.syl.push_back(XLetter{0});
  ref.syl.push_back(KLetter{f.w("b")});
  Rat lo = phi_C_lower(g, f.bexp, p, f.alph, ref);
  CHECK(lo == 41);  // search already certifies the optimum; the reference can't hurt

  RelWord wrong;
  wrong.syl.push_back(XLetter{0});
  CHECK_THROWS_AS(phi_C_lower(g, f.bexp, p, f.alph, wrong), Error);
  try {
    phi_C_lower(g, f.bexp, p, f.alph, wrong);
  } catch (const Error& err) {
    CHECK(err.code() == Errc::lift_mismatch);
  }
}

TEST_CASE("the antisymmetrized extension restricts to the base on the subgroup", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);
  ExtendedQm ext = extended_qm(f.bexp, p, f.alph);
  CHECK(ext.qm.antisymmetric);
  CHECK_FALSE(ext.qm.homomorphism);

  // on this fixture the base is a global homomorphism, so the extension
  // reproduces it everywhere, not just on the subgroup
  Ball b3 = ball(f.F, 3);
  for (const Word& g : b3.elements) {
    Rat expect = qm_eval(f.bexp, g);
    REQUIRE(qm_eval(ext.qm, g) == expect);
  }
  CHECK(ext.uncertified->empty());

  // memoization: the same key is looked up, not recomputed into a new entry
  std::size_t entries = ext.cache->size();
  (void)qm_eval(ext.qm, f.w("aab"));
  CHECK(ext.cache->size() == entries);

  SECTION("uncertified constituents are recorded, not raised") {
    ExtensionParams tight = p;
    tight.x_length_cap = 6;
    ExtendedQm strict = extended_qm(f.bexp, tight, f.alph);
    const ExtensionValue& v = strict.value_of(f.w("aaaaa"));
    CHECK_FALSE(v.certified);
    CHECK(strict.uncertified->size() == 1);
  }
}

TEST_CASE("the empirical defect report nests samples across radii", "[extend]") {
  FixtureA f;
  ExtensionParams p = make_extension_params(1, 0);
  p.x_length_cap = 8;
  ExtendedQm ext = extended_qm(f.bexp, p, f.alph);
  Ball b3 = ball(f.F, 3);
  ExtensionDefectReport rep = defect_report(ext.qm, b3, 150, 99, {2, 3});
  REQUIRE(rep.per_radius.size() == 2);
  CHECK(rep.per_radius[0].radius == 2);
  CHECK(rep.per_radius[1].radius == 3);
  // nested sampling makes the per-radius maxima monotone by construction
  CHECK(rep.per_radius[0].pairs <= rep.per_radius[1].pairs);
  CHECK(Rat(rep.per_radius[0].defect) <= Rat(rep.per_radius[1].defect));
  // the base is a homomorphism here, so the extension has defect zero
  CHECK(rep.empirical_defect == 0);
  CHECK(rep.sample_spec == "150 seeded pairs, seed 99");
  CHECK(defect_report(ext.qm, b3, 0, 99).sample_spec == "empty");
}
