#include "doctest.h"
#include "gen.hpp"
#include "oracle/oracle.hpp"

#include "cmloc/gcm.hpp"
#include "cmloc/hilbert.hpp"
#include "cmloc/modpres.hpp"

using namespace cmloc;

namespace {

RingSpec a1() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {"x^2"}); }
RingSpec cusp() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {"x^2 - y^3"}); }
RingSpec plane() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {}); }

PresentedModule module(const RingSpec& r, std::vector<std::string> gens,
                       const std::vector<std::vector<std::string>>& cols) {
  std::vector<PolyVec> pv;
  for (const auto& c : cols) {
    PolyVec v;
    for (const auto& t : c) v.push_back(r.parse(t));
    pv.push_back(v);
  }
  return PresentedModule::from_columns(r, std::move(gens), pv);
}

PresentedModule a1_mod_x() { return PresentedModule::cyclic(a1(), {a1().parse("x")}); }
PresentedModule a1_max() { return module(a1(), {"x", "y"}, {{"x", "0"}, {"y", "-x"}}); }

ExtensionClass chi0() {
  return ExtensionClass::from_cocycle(a1_mod_x(), a1_mod_x(), PolyMat::identity(1, 2, kDefaultPrime),
                                      "chi0");
}
ExtensionClass s1() {
  return ExtensionClass::from_cocycle(a1_mod_x(), a1_mod_x(), PolyMat::scalar(1, a1().parse("y")),
                                      "s1");
}

std::size_t oracle_hf(const PresentedModule& m, int n) {
  return oracle::hilbert_value(m.ring.nvars(), m.ring.p, m.ring.ideal, m.rank(),
                               m.relations.columns(), n);
}

const TruncationPolicy policy{};

}  // namespace

TEST_CASE("hilbert values agree with the oracle") {
  std::vector<PresentedModule> mods = {
      PresentedModule::cyclic(a1(), {}), a1_mod_x(), a1_max(), PresentedModule::cyclic(cusp(), {}),
      PresentedModule::free(a1(), 2), chi0().E, s1().E,
      module(plane(), {"a", "b"}, {{"y", "-x^2"}})};
  for (const auto& m : mods) {
    ModuleModel model(m, 7);
    for (int n = 0; n < 6; ++n) CHECK(model.hilbert_value(n) == static_cast<std::int64_t>(oracle_hf(m, n)));
  }
}

TEST_CASE("hilbert data of the A1 corpus") {
  auto a = hilbert_data(PresentedModule::cyclic(a1(), {}), policy);
  CHECK(a.dim == 1);
  CHECK(a.e == std::vector<std::int64_t>{2, 1});
  CHECK(a.h == std::vector<std::int64_t>{1, 1});
  CHECK(a.poly == std::vector<Rational>{Rational::make(1, 1), Rational::make(2, 1)});
  CHECK(a.fit_start == 0);
  CHECK(a.mu == 1);

  auto q = hilbert_data(a1_mod_x(), policy);
  CHECK(q.dim == 1);
  CHECK(q.e == std::vector<std::int64_t>{1, 0});
  CHECK(is_ulrich(q).holds);

  auto m = hilbert_data(a1_max(), policy);
  CHECK(m.e == std::vector<std::int64_t>{2, 0});
  CHECK(m.mu == 2);
  CHECK(is_ulrich(m).holds);
  CHECK_FALSE(is_ulrich(a).holds);
  CHECK(has_min_mult(a).holds);

  auto c = hilbert_data(PresentedModule::cyclic(cusp(), {}), policy);
  CHECK(c.e == std::vector<std::int64_t>{2, 1});

  auto f = hilbert_data(PresentedModule::free(a1(), 2), policy);
  CHECK(f.e == std::vector<std::int64_t>{4, 2});
}

TEST_CASE("zero module and artinian modules") {
  auto zero = module(a1(), {"e"}, {{"1"}});
  auto hz = hilbert_data(zero, policy);
  CHECK(hz.dim == -1);
  CHECK(hz.multiplicity() == 0);
  CHECK(hz.mu == 0);

  auto art = PresentedModule::cyclic(a1(), {a1().parse("y^3")});
  auto ha = hilbert_data(art, policy);
  CHECK(ha.dim == 0);
  CHECK(ha.e == std::vector<std::int64_t>{6});
  CHECK(ha.fit_start == 3);
  CHECK(ha.poly == std::vector<Rational>{Rational::make(6, 1)});
}

TEST_CASE("fit on a non-standard series") {
  // 1, 3, 6, 10, ... is the series of k[x,y,z]: h = 1, dim 2.
  HilbertSource src = [](int L) {
    std::vector<std::int64_t> v;
    for (int n = 0; n < L; ++n) v.push_back((n + 1) * (n + 2) / 2);
    return v;
  };
  auto hd = fit_hilbert("test", src, 5, 12, 2, 3);
  CHECK(hd.dim == 2);
  CHECK(hd.e == std::vector<std::int64_t>{1, 0, 0});
  CHECK(hd.poly == std::vector<Rational>{Rational::make(1, 1), Rational::make(3, 2), Rational::make(1, 2)});

  HilbertSource growing = [](int L) {
    std::vector<std::int64_t> v;
    for (int n = 0; n < L; ++n) v.push_back(std::int64_t{1} << n);
    return v;
  };
  CHECK_THROWS_AS(fit_hilbert("test", growing, 5, 12, 2, 2), UnstableError);
}

TEST_CASE("rational normalization") {
  CHECK(Rational::make(4, -6) == Rational{-2, 3});
  CHECK(Rational::make(4, -6).to_string() == "-2/3");
  CHECK(Rational::make(0, 5).to_string() == "0");
  CHECK_THROWS_AS(Rational::make(1, 0), std::domain_error);
}

TEST_CASE("graded models") {
  auto g = graded_model(PresentedModule::cyclic(a1(), {}), 6);
  CHECK(g.dims() == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2});
  for (int n = 0; n + 2 <= 6; ++n) CHECK(g.homogeneous_action(a1().parse("x^2"), n).is_zero());
  CHECK_FALSE(g.homogeneous_action(a1().parse("x*y"), 0).is_zero());

  auto gc = graded_model(PresentedModule::cyclic(cusp(), {}), 6);
  CHECK(gc.dims() == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2});
  CHECK(gc.homogeneous_action(cusp().parse("x^2"), 0).is_zero());

  auto gf = graded_model(PresentedModule::free(plane(), 2), 4);
  CHECK(gf.dims() == std::vector<std::size_t>{2, 4, 6, 8, 10});
  CHECK_THROWS_AS(g.linear_action({1, 0}, 6), std::out_of_range);
  CHECK_THROWS_AS(g.homogeneous_action(a1().parse("x + y^2"), 0), std::invalid_argument);
}

TEST_CASE("property: graded dims are Hilbert differences") {
  std::vector<PresentedModule> mods = {a1_mod_x(), a1_max(), chi0().E, s1().E,
                                       PresentedModule::cyclic(cusp(), {}),
                                       module(plane(), {"a", "b"}, {{"y", "-x^2"}})};
  for (int t = 0; t < 4; ++t) {
    const RingSpec r = RingSpec::make(101, {"x", "y"}, {"x^2"});
    PolyVec col{gen::poly(2, 101, 2, 2), gen::poly(2, 101, 2, 2)};
    mods.push_back(PresentedModule::from_columns(r, {"a", "b"}, {col}));
  }
  for (const auto& m : mods) {
    auto g = graded_model(m, 6);
    ModuleModel model(m, 8);
    for (int n = 0; n <= 6; ++n) {
      const std::int64_t below = n == 0 ? 0 : model.hilbert_value(n - 1);
      CHECK(static_cast<std::int64_t>(g.dim(n)) == model.hilbert_value(n) - below);
    }
  }
}

TEST_CASE("property: variable actions commute") {
  for (const auto& m : {a1_max(), chi0().E, PresentedModule::cyclic(cusp(), {})}) {
    auto g = graded_model(m, 6);
    for (int n = 0; n + 2 <= 6; ++n)
      CHECK(g.action[1][static_cast<std::size_t>(n) + 1] * g.action[0][static_cast<std::size_t>(n)] ==
            g.action[0][static_cast<std::size_t>(n) + 1] * g.action[1][static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("cm certificates") {
  auto q = cm_certify(a1_mod_x(), policy, 5, 7);
  CHECK(q.verdict == CmVerdict::CM);
  CHECK(q.lengths.back() == 1);
  auto m = cm_certify(a1_max(), policy, 5, 7);
  CHECK(m.verdict == CmVerdict::CM);
  CHECK(m.lengths.back() == 2);
  CHECK(cm_certify(PresentedModule::cyclic(a1(), {}), policy, 5, 7).verdict == CmVerdict::CM);

  // The ideal (x^2, y) of k[x,y] has depth 1 in dimension 2.
  auto ideal = module(plane(), {"a", "b"}, {{"y", "-x^2"}});
  CHECK(oracle_hf(ideal, 0) == 2);
  auto bad = cm_certify(ideal, policy, 5, 7);
  CHECK(bad.verdict == CmVerdict::NotCM);
  CHECK(bad.e0 == 1);
  for (auto len : bad.lengths) CHECK(len == 2);

  auto again = cm_certify(ideal, policy, 5, 7);
  CHECK(again.forms == bad.forms);
}

TEST_CASE("superficial elements on A1") {
  std::vector<NamedModule> mods{{"A", PresentedModule::cyclic(a1(), {})}};
  CHECK_FALSE(check_superficial(mods, {1, 0}, policy));
  CHECK(check_superficial(mods, {0, 1}, policy));
  auto cert = find_superficial(mods, policy, 11, 3, {{1, 0}, {0, 1}});
  CHECK(cert.attempt == 2);
  CHECK(cert.text == "y");
  CHECK(cert.modules == std::vector<std::string>{"A"});
  auto red = superficial_reduction_check(mods[0].module, cert, policy);
  CHECK(red.passed);
  CHECK(red.e_after == std::vector<std::int64_t>{2});

  auto random = find_superficial(mods, policy, 11, 5);
  CHECK(random.attempt == 1);
  CHECK(random.form == find_superficial(mods, policy, 11, 5).form);
  CHECK_THROWS_AS(find_superficial({}, policy, 1, 1), std::invalid_argument);

  auto drop = dimension_drop_check(mods[0].module, a1().parse("x"), policy);
  CHECK(drop.passed);
  CHECK(drop.dim_after == 1);
  CHECK_THROWS_AS(dimension_drop_check(mods[0].module, a1().parse("1 + x"), policy),
                  std::invalid_argument);
}

TEST_CASE("initial forms and regular sequences") {
  auto g = graded_model(PresentedModule::cyclic(a1(), {}), 6);
  CHECK(initial_forms_regular(g, {a1().parse("y")}).holds);
  CHECK_FALSE(initial_forms_regular(g, {a1().parse("x")}).holds);
  CHECK(graded_quotient_dims(g, {a1().parse("y + x*y")}) == std::vector<std::int64_t>{1, 1, 0, 0, 0, 0, 0});
}

TEST_CASE("extensions: chi0 and s1") {
  auto c = chi0();
  auto s = s1();
  CHECK(validate(c, policy).valid);
  CHECK(validate(s, policy).valid);
  CHECK(hilbert_data(c.E, policy).e == std::vector<std::int64_t>{2, 1});
  CHECK(hilbert_data(s.E, policy).e == std::vector<std::int64_t>{2, 0});

  auto gc = g_exactness(c, 8);
  CHECK_FALSE(gc.exact);
  CHECK(gc.first_failure == 0);
  auto gs = g_exactness(s, 8);
  CHECK(gs.exact);
  CHECK(gs.dims_e == std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 2, 2, 2});
  CHECK(g_exactness(ExtensionClass::split(a1_mod_x(), a1_max()), 6).exact);

  auto pushed = pushout(c, ModuleMap::scalar(a1_mod_x(), a1().parse("y")));
  CHECK(pushed.E.relations == s.E.relations);
  auto scaled = scalar_multiple(c, a1().parse("y"));
  CHECK(hilbert_data(scaled.E, policy).e == std::vector<std::int64_t>{2, 0});

  auto sum = baer_sum(s, s);
  CHECK_FALSE(sum.cocycle);
  CHECK(validate(sum, policy).valid);
  CHECK(hilbert_data(sum.E, policy).e == std::vector<std::int64_t>{2, 0});
}
