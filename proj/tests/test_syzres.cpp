#include "doctest.h"
#include "oracle/oracle.hpp"

#include "cmloc/syzres.hpp"

using namespace cmloc;

namespace {

RingSpec a1() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {"x^2"}); }
RingSpec xy() { return RingSpec::make(kDefaultPrime, {"x", "y"}, {"x*y"}); }

PresentedModule a1_mod_x() { return PresentedModule::cyclic(a1(), {a1().parse("x")}); }
PresentedModule a1_max() {
  const RingSpec r = a1();
  return PresentedModule::from_columns(r, {"x", "y"},
                                       {{r.parse("x"), r.zero()}, {r.parse("y"), r.parse("-x")}});
}

const TruncationPolicy policy{};

}  // namespace

TEST_CASE("kernel of multiplication by x on A1") {
  const RingSpec r = a1();
  auto k = kernel_generators(r, PolyMat::scalar(1, r.parse("x")), 6, policy);
  REQUIRE(k.generators.size() == 1);
  CHECK(k.generators[0][0].order() == 1);
  // (x) below degree 6 is spanned by x y^j, j = 0..4.
  CHECK(k.dim == 5);

  auto none = kernel_generators(r, PolyMat::scalar(1, r.parse("y")), 6, policy);
  CHECK(none.generators.empty());
  CHECK(none.dim == 0);
}

TEST_CASE("syzygy generators") {
  auto q = syzygy_generators(a1_mod_x(), policy);
  CHECK(q.generators.size() == 1);
  CHECK(q.phi1.cols() == 1);

  auto m = syzygy_generators(a1_max(), policy);
  CHECK(m.generators.size() == 2);
  // (x, 0) and (-y, x) span the same module.
  const FreeSpace space(TruncatedAlgebra::build(a1(), m.verified_below), 2);
  const RingSpec r = a1();
  auto ours = TruncatedSubmodule::span(space, m.generators);
  auto hand = TruncatedSubmodule::span(space, {{r.parse("x"), r.zero()}, {r.parse("-y"), r.parse("x")}});
  CHECK(ours.dim() == hand.dim());
  for (const auto& row : hand.basis().rows()) CHECK(ours.contains(row));

  CHECK(syzygy_generators(PresentedModule::free(a1(), 2), policy).generators.empty());
}

TEST_CASE("minimal columns skip redundant relations") {
  const RingSpec r = a1();
  auto m = PresentedModule::from_columns(r, {"e"}, {{r.parse("x")}, {r.parse("x*y")}, {r.parse("y^2")}});
  CHECK(minimal_columns(m, policy) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("omega") {
  auto o = omega(a1_mod_x(), policy);
  CHECK(o.rank() == 1);
  CHECK(o.valid_below == syzygy_level(a1_mod_x(), policy));
  CHECK(hilbert_data(o, policy).e == std::vector<std::int64_t>{1, 0});

  auto om = omega(a1_max(), policy);
  CHECK(om.rank() == 2);
  auto hm = hilbert_data(om, policy);
  CHECK(hm.e == std::vector<std::int64_t>{2, 0});
  CHECK(omega_hilbert_data(a1_max(), policy).e == hm.e);

  auto free = omega(PresentedModule::free(a1(), 2), policy);
  CHECK(free.rank() == 0);
  CHECK(hilbert_data(free, policy).dim == -1);
}

TEST_CASE("omega hilbert data matches the oracle on the relation module") {
  // Omega(A1/(x)) = (x): l((x)/m^{n+1}(x)) = n + 1.
  const RingSpec r = a1();
  auto vals = submodule_hilbert_values(r, 1, {{r.parse("x")}}, 6, policy).value;
  CHECK(vals == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
  for (int n = 0; n < 6; ++n) {
    // (x) ≅ A1/(x): its Hilbert function is that of the cyclic module.
    CHECK(vals[static_cast<std::size_t>(n)] ==
          static_cast<std::int64_t>(oracle::hilbert_value(2, r.p, r.ideal, 1, {{r.parse("x")}}, n)));
  }
}

TEST_CASE("omega commutes with adjoining a variable") {
  auto m = adjoin_variables(a1_max(), {"z"});
  auto om = omega(m, policy);
  CHECK(om.rank() == 2);
  CHECK(omega_hilbert_data(m, policy).e == std::vector<std::int64_t>{2, 0, 0});
}

TEST_CASE("hypersurface resolutions") {
  const std::vector<std::string> vars{"x", "y"};
  const Poly x = parse_poly("x", vars), y = parse_poly("y", vars), one = parse_poly("1", vars);
  auto seg = hypersurface_resolution(kDefaultPrime, vars, x, 2, one);
  CHECK(seg.composition_zero);
  CHECK(seg.module.ring == a1());
  CHECK(seg.phi2.at(0, 0) == x);
  auto rc = resolution_consistency(seg.module, seg, policy);
  CHECK(rc.consistent);

  auto seg2 = hypersurface_resolution(kDefaultPrime, vars, x, 1, y);
  CHECK(seg2.module.ring == xy());
  CHECK(seg2.phi2.at(0, 0) == y);
  CHECK(resolution_consistency(seg2.module, seg2, policy).consistent);

  auto bad = seg;
  bad.phi2 = PolyMat::scalar(1, y);
  auto rb = resolution_consistency(bad.module, bad, policy);
  CHECK_FALSE(rb.consistent);
  CHECK(rb.first_failure == 1);

  CHECK_THROWS_AS(hypersurface_resolution(kDefaultPrime, vars, x + one, 1, one), std::invalid_argument);
}

TEST_CASE("periodicity of the hypersurface resolution in Hilbert data") {
  const RingSpec r = xy();
  auto m = PresentedModule::cyclic(r, {r.parse("x")});
  auto o1 = omega(m, policy);
  CHECK(hilbert_data(o1, policy).e == std::vector<std::int64_t>{1, 0});  // ≅ A/(y)
  auto o2 = omega(o1, policy, o1.valid_below - 2);
  CHECK(hilbert_data(o2, policy).e == hilbert_data(m, policy).e);
}

TEST_CASE("submodules of a module") {
  const RingSpec r = a1();
  auto a = PresentedModule::cyclic(r, {});
  auto sub = submodule_of(a, {{r.parse("x")}, {r.parse("y")}}, policy);
  auto hs = hilbert_data(sub, policy);
  CHECK(hs.e == std::vector<std::int64_t>{2, 0});
  CHECK(hs.mu == 2);
  auto p2 = power_submodule(a, 2, policy);
  auto h2 = hilbert_data(p2, policy);
  CHECK(h2.e == std::vector<std::int64_t>{2, 0});
  CHECK(h2.mu == 2);
}
