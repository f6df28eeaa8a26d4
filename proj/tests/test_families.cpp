#include "doctest.h"

#include "cmloc/families.hpp"
#include "cmloc/syzres.hpp"

using namespace cmloc;

namespace {

const TruncationPolicy policy{};

RingSpec a1() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {"x^2"}); }

FamilySpec a1_sci(int first, int last) { return FamilySpec::sci({"x", "y"}, "x", 2, "1", "y", first, last); }

}  // namespace

TEST_CASE("family kinds round-trip through their names") {
  for (auto k : {FamilyKind::HypersurfaceSci, FamilyKind::UlrichDim1, FamilyKind::SyzDim2, FamilyKind::Rci})
    CHECK(family_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(family_kind_from_string("sci"), std::invalid_argument);
}

TEST_CASE("sci spec validation") {
  CHECK_NOTHROW(a1_sci(0, 4).validate());
  CHECK(a1_sci(0, 0).base_ring() == a1());

  auto no_assert = a1_sci(0, 1);
  no_assert.asserted.clear();
  CHECK_THROWS_AS(no_assert.validate(), std::invalid_argument);

  // i = 1 needs dim A >= 2.
  CHECK_THROWS_AS(FamilySpec::sci({"x", "y"}, "x", 1, "y", "y", 0, 1).validate(), std::invalid_argument);
  CHECK_NOTHROW(FamilySpec::sci({"x", "y", "z"}, "x", 1, "y", "z", 0, 1).validate());
  // i = 1 with h a unit gives N = 0.
  CHECK_THROWS_AS(FamilySpec::sci({"x", "y", "z"}, "x", 1, "1", "z", 0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::sci({"x"}, "x", 2, "1", "x", 0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(a1_sci(2, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::sci({"x", "y"}, "1+x", 2, "1", "y", 0, 1).validate(), std::invalid_argument);
}

TEST_CASE("sci family over A1") {
  const auto members = sci_family(a1_sci(0, 3), policy);
  REQUIRE(members.size() == 4);
  for (const auto& m : members) {
    CHECK(validate(m.s, policy).valid);
    CHECK(m.s.cocycle->at(0, 0) == a1().parse("y").pow(static_cast<unsigned>(m.n)));
  }
  const auto recs = evaluate_sci(members, policy, 5, 11);
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].e0 == 2);
  CHECK(recs[0].e_t == 2);
  CHECK_FALSE(recs[0].t_split);
  CHECK_FALSE(recs[0].cm.has_value());
  for (std::size_t k = 1; k < recs.size(); ++k) {
    CAPTURE(k);
    CHECK(recs[k].e0 == 2);
    CHECK(recs[k].e_t == 0);
    CHECK(recs[k].t_split);
    REQUIRE(recs[k].cm.has_value());
    CHECK(recs[k].cm->verdict == CmVerdict::CM);
    CHECK(recs[k].cm->seed == 11 + k);
    REQUIRE(recs[k].g_exact.has_value());
    CHECK(recs[k].g_exact->exact);
  }
}

TEST_CASE("sci family with i = 1 over k[x,y,z]/(xy)") {
  const auto spec = FamilySpec::sci({"x", "y", "z"}, "x", 1, "y", "z", 0, 1);
  const auto members = sci_family(spec, policy);
  REQUIRE(members.size() == 2);
  const auto recs = evaluate_sci(members, policy, 5, 3);
  for (const auto& r : recs) CHECK(r.e0 == 2);
  CHECK_FALSE(recs[0].t_split);
  CHECK(recs[1].t_split);
  REQUIRE(recs[1].cm.has_value());
  CHECK(recs[1].cm->verdict == CmVerdict::CM);
}

TEST_CASE("Ulrich thresholds") {
  const auto a = ulrich_dim1_family(PresentedModule::cyclic(a1(), {}), policy);
  CHECK(a.e0 == 2);
  CHECK(a.threshold == 1);
  CHECK(a.mu[0] == 1);
  CHECK(a.e1_after == std::vector<std::int64_t>{0, 0});
  CHECK(a.e1_presented == std::vector<std::int64_t>{0, 0});
  CHECK(a.consistent);

  const auto q = ulrich_dim1_family(PresentedModule::cyclic(a1(), {a1().parse("x")}), policy);
  CHECK(q.e0 == 1);
  CHECK(q.threshold == 0);
  CHECK(q.consistent);

  const RingSpec cube = RingSpec::make(kDefaultPrime, {"x", "y"}, {"x^3"});
  const auto c = ulrich_dim1_family(PresentedModule::cyclic(cube, {}), policy);
  CHECK(c.e0 == 3);
  CHECK(c.threshold == 2);
  CHECK(c.mu[0] == 1);
  CHECK(c.mu[1] == 2);
  CHECK(c.consistent);

  const RingSpec plane = RingSpec::make(kDefaultPrime, {"x", "y"}, {});
  CHECK_THROWS_AS(ulrich_dim1_family(PresentedModule::cyclic(plane, {}), policy), std::invalid_argument);
  // Finite length: no dimension-one multiplicity to reach.
  CHECK_THROWS_AS(ulrich_dim1_family(PresentedModule::cyclic(a1(), {a1().parse("x"), a1().parse("y")}), policy),
                  std::invalid_argument);
}

TEST_CASE("syzygy of an Ulrich module over a dimension-one quotient") {
  const RingSpec a = RingSpec::make(kDefaultPrime, {"x", "y", "z"}, {"x^2"});
  const std::vector<Poly> quot{a.parse("z")};
  const RingSpec b = RingSpec::make(kDefaultPrime, {"x", "y", "z"}, {"x^2", "z"});
  const PresentedModule maxb = PresentedModule::from_columns(
      b, {"x", "y"}, {{b.parse("x"), b.zero()}, {b.parse("y"), b.parse("-x")}});

  const auto res = syz_dim2_module(a, quot, maxb, policy, 5, 9);
  CHECK(res.e_over_a.num_relations() == 4);
  CHECK(res.hilbert.dim == 2);
  CHECK(res.cm.verdict == CmVerdict::CM);
  if (res.sally) CHECK(res.sally->consistent);

  // E = B: Omega(B) = (z) = A.
  const auto free_case = syz_dim2_module(a, quot, PresentedModule::cyclic(b, {}), policy, 5, 9);
  CHECK(free_case.m.rank() == 1);
  CHECK(free_case.m.num_relations() == 0);
  CHECK(free_case.hilbert.e == std::vector<std::int64_t>{2, 1, 0});
  CHECK(free_case.cm.verdict == CmVerdict::CM);

  const PresentedModule zero = PresentedModule::from_columns(b, {"e"}, {{b.one()}});
  CHECK_THROWS_AS(syz_dim2_module(a, quot, zero, policy, 5, 9), std::invalid_argument);

  CHECK_THROWS_AS(syz_dim2_module(a1(), {a1().parse("y")}, PresentedModule::cyclic(a1(), {a1().parse("y")}),
                                  policy, 5, 9),
                  std::invalid_argument);
}

TEST_CASE("rci family") {
  const PresentedModule e = PresentedModule::cyclic(a1(), {a1().parse("x")});
  const auto one = rci_family(e, 1, {}, policy, 5, 2);
  CHECK(one.m.ring.vars == std::vector<std::string>{"x", "y", "X1"});
  CHECK(one.hilbert.dim == 2);
  CHECK(one.cm.verdict == CmVerdict::CM);

  const auto two = rci_family(e, 2, {"X1-X2"}, policy, 5, 2);
  CHECK(two.regular.holds);
  CHECK(two.hilbert.dim == 2);
  CHECK(two.hilbert.multiplicity() == 1);
  CHECK(two.cm.verdict == CmVerdict::CM);

  CHECK_THROWS_AS(rci_family(e, 1, {"X1"}, policy, 5, 2), std::invalid_argument);
  // x* = x is a zero divisor on G(A1[X1,X2]).
  CHECK_THROWS_AS(rci_family(e, 2, {"x"}, policy, 5, 2), std::runtime_error);
}

TEST_CASE("module-family spec validation") {
  FamilySpec f;
  f.kind = FamilyKind::Rci;
  f.vars = {"x", "y"};
  f.ideal = {"x^2"};
  f.gens = {"e"};
  f.relations = {{"x"}};
  f.r = 1;
  CHECK_NOTHROW(f.validate());
  f.cut = {"X1"};
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.kind = FamilyKind::SyzDim2;
  f.cut.clear();
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.vars = {"x", "y", "z"};
  f.quotient = {"z"};
  CHECK_NOTHROW(f.validate());
  CHECK(f.module_ring().ideal.size() == 2);
  CHECK(f.base_module().rank() == 1);
  f.relations = {{"x", "y"}};
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
