#include <catch2/catch_amalgamated.hpp>

#include "qmx/scl.hpp"

using namespace qmx;

namespace {

struct FixtureF2 {
  CtxPtr F = make_free_group({"a", "b"});
  CtxPtr Z = make_free_abelian({"t"});
  SubgroupSpec Kw = WholeGroup{};
  SubgroupSpec Kker;
  FixtureF2() {
    Kker = KernelSpec{Homomorphism{Z, {parse_word(Z->pres.alphabet, "t"), Word{}}}};
  }
  Word w(const char* t) const { return parse_word(F->pres.alphabet, t); }
};

}  // namespace

TEST_CASE("commutator sets are deduplicated and exclude the identity", "[scl]") {
  FixtureF2 f;
  Ball b2 = ball(f.F, 2);
  CommutatorSet s = mixed_commutator_set(b2, f.Kw);
  REQUIRE(s.values.size() == s.gens.size());
  CHECK(s.index.find(f.w("abAB")).has_value());
  for (const Word& v : s.values) CHECK_FALSE(f.F->is_identity(v));

  // restricting the right factor to a kernel can only shrink the set
  CommutatorSet sm = mixed_commutator_set(b2, f.Kker);
  CHECK(sm.values.size() <= s.values.size());
  for (const Word& v : sm.values) CHECK(s.index.find(v).has_value());
  CHECK(sm.index.find(f.w("abAB")).has_value());  // b lies in the kernel

  SECTION("label formatting names both factors") {
    CHECK(detail::commutator_label(*f.F, f.w("a"), f.w("b")) == "[a,b]");
  }
}

TEST_CASE("commutator length search finds small witnesses exactly", "[scl]") {
  FixtureF2 f;
  // the identity has length zero and an empty factor list
  auto cl0 = cl_mixed_upper(Word{}, 2, 2, f.F, f.Kw);
  REQUIRE(cl0.has_value());
  CHECK(*cl0 == 0);

  auto cl1 = cl_mixed_upper(f.w("abAB"), 2, 2, f.F, f.Kw);
  REQUIRE(cl1.has_value());
  CHECK(*cl1 == 1);

  // the cube of the basic commutator needs radius-5 factors before the
  // two-fold product search can see its known decomposition
  Word g3 = word_pow(f.w("abAB"), 3);
  CHECK_FALSE(cl_mixed_upper(g3, 2, 4, f.F, f.Kw).has_value());
  auto cl3 = cl_mixed_upper(g3, 2, 5, f.F, f.Kw);
  REQUIRE(cl3.has_value());
  CHECK(*cl3 == 2);

  // a single commutator never suffices for the cube, at any radius we search
  CHECK_FALSE(cl_mixed_upper(g3, 1, 5, f.F, f.Kw).has_value());
}

TEST_CASE("membership obstructions are raised before any search", "[scl]") {
  FixtureF2 f;
  // nonzero abelianization can never be a product of commutators
  CHECK_THROWS_AS(cl_mixed_upper(f.w("ab"), 2, 2, f.F, f.Kw), Error);
  try {
    cl_mixed_upper(f.w("ab"), 2, 2, f.F, f.Kw);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_in_mixed_commutator_subgroup);
  }
  // commutators survive into any abelian quotient's kernel, so triggering
  // the subgroup obstruction needs a kernel that misses them: the kernel of
  // a faithful map is trivial
  CtxPtr T = make_free_group({"x", "y"});
  SubgroupSpec trivial = KernelSpec{Homomorphism{
      T, {parse_word(T->pres.alphabet, "x"), parse_word(T->pres.alphabet, "y")}}};
  CHECK_THROWS_AS(cl_mixed_upper(f.w("abAB"), 2, 2, f.F, trivial), Error);
}

TEST_CASE("search budgets fail loudly instead of degrading silently", "[scl]") {
  FixtureF2 f;
  SclSearchOptions tiny;
  tiny.product_budget = 10;
  CHECK_THROWS_AS(cl_mixed_upper(f.w("abAB"), 2, 3, f.F, f.Kw, tiny), Error);
  try {
    cl_mixed_upper(f.w("abAB"), 2, 3, f.F, f.Kw, tiny);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("the lower bound from homogenized values scales by twice the defect", "[scl]") {
  FixtureF2 f;
  Quasimorphism ab = brooks_qm(f.F, f.w("ab"), "phi_ab");
  ab.certified_defect_upper = 1;  // the error radius is quoted from this bound
  HomogenizeResult est = homogenize_estimate(ab, f.w("abAB"), 8);
  CHECK(est.value == 1);
  REQUIRE(est.error_radius.has_value());
  CHECK(*est.error_radius == Rat(1, 8));
  CHECK(bavard_lower(est, 1) == Rat(7, 16));

  // a value swallowed by its own error radius floors at zero
  HomogenizeResult flat = homogenize_estimate(ab, f.w("a"), 8);
  CHECK(bavard_lower(flat, 1) == 0);

  // zero or negative defect bounds are rejected, not divided by
  CHECK_THROWS_AS(bavard_lower(est, 0), Error);
  try {
    bavard_lower(est, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_defect);
  }
  CHECK_THROWS_AS(bavard_lower(est, -1), Error);
}

TEST_CASE("two-sided bound reports keep the sides ordered", "[scl]") {
  FixtureF2 f;
  Quasimorphism ab = brooks_qm(f.F, f.w("ab"), "phi_ab");
  ab.certified_defect_upper = 1;

  SclBoundInputs in;
  in.radius = 5;
  SclBoundReport rep = scl_bound_report(f.w("abAB"), f.F, WholeGroup{}, {ab}, in);
  CHECK(rep.element == "abAB");
  CHECK_FALSE(rep.mixed);
  REQUIRE(rep.lower.has_value());
  CHECK(*rep.lower == Rat(7, 16));
  CHECK(rep.lower_provenance == "bavard via phi_ab, D<=1, N=8");
  REQUIRE(rep.upper.has_value());
  CHECK(*rep.upper == Rat(2, 3));
  CHECK(rep.upper_provenance.find("cl(g^3)<=2") == 0);
  CHECK(*rep.lower <= *rep.upper);

  SECTION("family members without a certified defect contribute nothing") {
    Quasimorphism bare = brooks_qm(f.F, f.w("ab"), "bare");
    SclBoundInputs small;
    small.radius = 2;
    small.n_list = {1};
    SclBoundReport r = scl_bound_report(f.w("abAB"), f.F, WholeGroup{}, {bare}, small);
    CHECK_FALSE(r.lower.has_value());
    REQUIRE(r.upper.has_value());
    CHECK(*r.upper == 1);
  }

  SECTION("the mixed variant demands conjugation-invariant certificates") {
    SclBoundInputs small;
    small.radius = 2;
    small.n_list = {1};
    SclBoundReport r = scl_bound_report(f.w("abAB"), f.F, f.Kker, {ab}, small);
    CHECK(r.mixed);
    CHECK_FALSE(r.lower.has_value());  // counting certificates are not invariant
    REQUIRE(r.upper.has_value());
    CHECK(*r.upper == 1);
  }
}

TEST_CASE("plain and mixed bounds line up in the side-by-side report", "[scl]") {
  FixtureF2 f;
  Quasimorphism ab = brooks_qm(f.F, f.w("ab"), "phi_ab");
  ab.certified_defect_upper = 1;
  SclBoundInputs in;
  in.radius = 2;
  in.n_list = {1};
  auto rows = bilip_report({f.w("abAB")}, f.F, f.Kker, {ab}, in);
  REQUIRE(rows.size() == 1);
  const BiLipRow& row = rows.front();
  CHECK(row.element == "abAB");
  REQUIRE(row.plain_lower.has_value());
  REQUIRE(row.plain_upper.has_value());
  // mixed commutators can only be scarcer, so the mixed upper estimate
  // dominates the plain one whenever both exist
  REQUIRE(row.mixed_upper.has_value());
  CHECK(*row.plain_upper <= *row.mixed_upper);
  REQUIRE(row.ratio_lo.has_value());
  CHECK(*row.ratio_lo == *row.plain_lower / *row.mixed_upper);
  CHECK_FALSE(row.inconclusive);
}
