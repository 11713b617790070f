#include "subproj/homotopy.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace subproj;

namespace {

const Ring Z = Ring::integers();
const PresentedModule Zfree = PresentedModule::free(Z, 1);
const PresentedModule Z2 = PresentedModule::cyclic(Z, 2);

Complex times_two() { return make_complex(Z, 0, 1, {{0, Zfree}, {1, Zfree}}, {{1, Matrix{{2}}}}); }

Complex three_term() {
  return make_complex(Z, 0, 2, {{2, Zfree}, {1, PresentedModule::free(Z, 2)}, {0, Z2}},
                      {{2, Matrix{{2}, {0}}}, {1, Matrix{{0, 1}}}});
}

}  // namespace

TEST(HomComplex, Examples) {
  auto n = three_term();
  auto hc = hom_complex(sphere(Zfree, 0), n);
  for (int k = -1; k <= 3; ++k) EXPECT_TRUE(is_isomorphic(hc.complex.component(k), n.component(k)));
  EXPECT_TRUE(hom_complex(n, zero_complex(Z)).complex.is_zero());
  EXPECT_TRUE(is_exact(hom_complex(disc(Zfree, 0), disc(Zfree, 0)).complex));
}

TEST(HomComplex, FamilyCoordinatesRoundTrip) {
  auto x = three_term();
  auto hc = hom_complex(x, x);
  for (int n = hc.complex.lo(); n <= hc.complex.hi(); ++n) {
    const std::size_t g = hc.complex.component(n).generators();
    for (std::size_t j = 0; j < g; ++j) {
      Matrix e(g, 1);
      e(j, 0) = 1;
      auto fam = hc.family(n, e);
      Matrix back = hc.coordinates(n, fam);
      EXPECT_TRUE(solve_right(hc.complex.component(n).relations(), back - e, Z).has_value());
    }
  }
}

TEST(ChainMapsGroup, Examples) {
  auto g1 = chain_maps_group(sphere(Zfree, 0), sphere(Zfree, 0), 0);
  EXPECT_TRUE(is_isomorphic(g1.group, Zfree));
  ASSERT_EQ(g1.generators.size(), 1u);
  EXPECT_EQ(g1.generators[0].component(0).matrix(), (Matrix{{1}}));
  EXPECT_TRUE(chain_maps_group(disc(Z2, 0), sphere(Z2, 0), 0).group.is_zero());
  EXPECT_TRUE(is_isomorphic(chain_maps_group(sphere(Zfree, 0), disc(Zfree, 0), 0).group, Zfree));
}

TEST(ChainMapsGroup, GeneratorsAreChainMapsFromShift) {
  auto x = three_term();
  for (int n = -2; n <= 2; ++n) {
    auto g = chain_maps_group(x, x, n);
    for (const auto& f : g.generators) EXPECT_EQ(f.source(), shift(x, n));
  }
}

TEST(NullHomotopy, Examples) {
  auto d = disc(Zfree, 0);
  auto w = is_null_homotopic(identity_chain_map(d));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->at(0, d, d).matrix(), (Matrix{{1}}));
  EXPECT_FALSE(is_null_homotopic(identity_chain_map(sphere(Zfree, 0))));
  auto dx = disc(Z2, 0), dy = disc(PresentedModule::cyclic(Z, 4), 0);
  auto maps = chain_maps_group(dx, dy, 0);
  for (const auto& f : maps.generators) EXPECT_TRUE(is_null_homotopic(f));
}

TEST(HomK, Examples) {
  auto n = three_term();
  for (int k = -1; k <= 3; ++k) EXPECT_TRUE(is_isomorphic(hom_K(sphere(Zfree, 0), n, k), homology(n, k)));
  auto p = direct_sum({disc(Zfree, 0), disc(PresentedModule::free(Z, 2), 1)}).complex;
  for (int k = -3; k <= 3; ++k) EXPECT_TRUE(hom_K(n, p, k).is_zero());
  EXPECT_TRUE(is_isomorphic(hom_K(sphere(Zfree, 0), times_two(), 0), Z2));
}

TEST(HomK, ShiftIdentities) {
  auto x = times_two(), y = three_term();
  for (int n = -2; n <= 2; ++n) {
    auto a = hom_K(x, y, n);
    EXPECT_TRUE(is_isomorphic(a, hom_K(shift(x, n), y, 0)));
    EXPECT_TRUE(is_isomorphic(a, hom_K(x, shift(y, -n), 0)));
  }
}

TEST(Contractible, Examples) {
  auto c = is_contractible(disc(Z2, 2));
  ASSERT_TRUE(c);
  auto& dec = c->decomposition;
  EXPECT_TRUE(chain_maps_equal(compose(dec.to_complex, dec.from_complex), identity_chain_map(disc(Z2, 2))));
  EXPECT_TRUE(chain_maps_equal(compose(dec.from_complex, dec.to_complex), identity_chain_map(dec.assembled)));
  EXPECT_FALSE(is_contractible(sphere(Z2, 0)));
  EXPECT_FALSE(is_contractible(times_two()));
}

TEST(Contractible, DecomposesSumsOfDiscs) {
  auto p = direct_sum({disc(Zfree, 0), disc(PresentedModule::free(Z, 2), 1), disc(Z2, 0)}).complex;
  auto c = is_contractible(p);
  ASSERT_TRUE(c);
  auto& dec = c->decomposition;
  EXPECT_TRUE(chain_maps_equal(compose(dec.to_complex, dec.from_complex), identity_chain_map(p)));
  EXPECT_TRUE(chain_maps_equal(compose(dec.from_complex, dec.to_complex), identity_chain_map(dec.assembled)));
}

TEST(MappingCone, Examples) {
  auto m = three_term(), k = times_two();
  auto zero = zero_chain_map(shift(m, -1), k);
  auto c0 = mapping_cone(zero);
  auto sum = direct_sum({k, m}).complex;
  for (int n = -1; n <= 3; ++n) EXPECT_TRUE(is_isomorphic(homology(c0.cone, n), homology(sum, n)));
  auto x = shift(three_term(), -1);
  auto cid = mapping_cone(identity_chain_map(x));
  EXPECT_TRUE(is_contractible(cid.cone));
  EXPECT_TRUE(chain_maps_equal(compose(cid.projection, cid.inclusion), zero_chain_map(x, cid.base)));
}

TEST(FactorThroughContractible, IdentityOnDisc) {
  auto d = disc(Zfree, 0);
  auto id = identity_chain_map(d);
  auto w = is_null_homotopic(id);
  ASSERT_TRUE(w);
  auto fac = factor_through_contractible(id, *w);
  EXPECT_TRUE(chain_maps_equal(compose(fac.h, fac.g), id));
  EXPECT_TRUE(is_contractible(fac.middle));
  for (int n = fac.middle.lo(); n <= fac.middle.hi(); ++n)
    EXPECT_EQ(fac.middle.component(n), direct_sum_module({d.component(n + 1), d.component(n)}, Z));
}

TEST(FactorThroughContractible, ZeroMapAndErrors) {
  auto x = times_two(), y = three_term();
  auto zero = zero_chain_map(x, y);
  auto fac = factor_through_contractible(zero, HomotopyWitness{});
  EXPECT_TRUE(chain_maps_equal(compose(fac.h, fac.g), zero));
  auto id = identity_chain_map(y);
  EXPECT_THROW(factor_through_contractible(id, HomotopyWitness{}), InvalidWitness);
  auto d = disc(Zfree, 0);
  auto w = *is_null_homotopic(identity_chain_map(d));
  HomotopyFactorization bad;
  bad.emplace(0, std::make_pair(identity_morphism(Zfree), make_morphism(Zfree, Zfree, Matrix{{2}})));
  EXPECT_THROW(factor_through_contractible(identity_chain_map(d), w, bad), InvalidFactorization);
}
