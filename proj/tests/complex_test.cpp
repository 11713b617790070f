#include "subproj/complex.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace subproj;

namespace {

const Ring Z = Ring::integers();
const PresentedModule Zfree = PresentedModule::free(Z, 1);
const PresentedModule Z2 = PresentedModule::cyclic(Z, 2);

/// ℤ -2-> ℤ in degrees 1, 0.
Complex times_two() { return make_complex(Z, 0, 1, {{0, Zfree}, {1, Zfree}}, {{1, Matrix{{2}}}}); }

}  // namespace

TEST(MakeComplex, Examples) {
  EXPECT_NO_THROW(times_two());
  try {
    make_complex(Z, 0, 2, {{0, Zfree}, {1, Zfree}, {2, Zfree}}, {{1, Matrix{{1}}}, {2, Matrix{{1}}}});
    FAIL() << "expected NotAComplex";
  } catch (const NotAComplex& e) {
    EXPECT_EQ(e.degree(), 2);
  }
  auto zero = make_complex(Z, 0, 0, {}, {});
  EXPECT_TRUE(zero.is_zero());
  EXPECT_THROW(make_complex(Z, 1, 0, {}, {}), Error);
  EXPECT_THROW(make_complex(Z, 0, 1, {{0, Zfree}, {1, Zfree}}, {{1, Matrix{{1, 1}}}}), DimensionMismatch);
  EXPECT_THROW(make_complex(Z, 0, 1, {{0, Zfree}, {1, Z2}}, {{1, Matrix{{1}}}}), NotAComplex);
}

TEST(Disc, PlacesModuleInTwoDegrees) {
  auto d = disc(Zfree, 0);
  EXPECT_EQ(d.lo(), 0);
  EXPECT_EQ(d.hi(), 1);
  EXPECT_EQ(d.differential(1).matrix(), (Matrix{{1}}));
  EXPECT_TRUE(disc(PresentedModule::zero(Z), 4).is_zero());
  auto d3 = disc(Z2, 3);
  EXPECT_EQ(d3.component(4), Z2);
  EXPECT_EQ(d3.component(3), Z2);
  EXPECT_TRUE(d3.component(2).is_zero());
}

TEST(Sphere, PlacesModuleInOneDegree) {
  auto s = sphere(Zfree, 0);
  EXPECT_EQ(s.lo(), 0);
  EXPECT_EQ(s.hi(), 0);
  EXPECT_TRUE(sphere(PresentedModule::zero(Z), 2).is_zero());
  EXPECT_EQ(sphere(Z2, -1).component(-1), Z2);
}

TEST(Shift, SignsAndTranslation) {
  auto x = times_two();
  EXPECT_EQ(shift(x, 0), x);
  EXPECT_EQ(shift(shift(x, 1), 1), shift(x, 2));
  EXPECT_EQ(shift(x, 1).differential(2).matrix(), (Matrix{{-2}}));
  EXPECT_EQ(shift(x, -3).lo(), -3);
  EXPECT_EQ(shift(sphere(Zfree, 0), 5), sphere(Zfree, 5));
}

TEST(DirectSum, Examples) {
  auto x = times_two();
  auto s = direct_sum({x, zero_complex(Z)});
  for (int n = -1; n <= 2; ++n) EXPECT_TRUE(is_isomorphic(homology(s.complex, n), homology(x, n)));
  auto t = direct_sum({disc(Zfree, 0), disc(Zfree, 1)});
  EXPECT_EQ(t.complex.component(2).generators(), 1u);
  EXPECT_EQ(t.complex.component(1).generators(), 2u);
  EXPECT_EQ(t.complex.component(0).generators(), 1u);
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_TRUE(chain_maps_equal(compose(t.projections[k], t.injections[k]), identity_chain_map(t.injections[k].source())));
  EXPECT_THROW(direct_sum({x, sphere(PresentedModule::free(Ring::integers_mod(2), 1), 0)}), Error);
}

TEST(Homology, Examples) {
  EXPECT_TRUE(is_isomorphic(homology(sphere(Zfree, 0), 0), Zfree));
  EXPECT_TRUE(homology(disc(Zfree, 0), 0).is_zero());
  EXPECT_TRUE(homology(disc(Zfree, 0), 1).is_zero());
  auto x = times_two();
  EXPECT_TRUE(is_isomorphic(homology(x, 0), Z2));
  EXPECT_TRUE(homology(x, 1).is_zero());
  auto data = homology_data(x, 0);
  EXPECT_TRUE(data.projection.verify());
  EXPECT_TRUE(is_isomorphic(data.boundaries, Zfree));
}

TEST(IsExact, Examples) {
  EXPECT_TRUE(is_exact(disc(Z2, 3)));
  EXPECT_FALSE(is_exact(sphere(Zfree, 0)));
  auto ses = make_complex(Z, 0, 2, {{2, Zfree}, {1, Zfree}, {0, Z2}}, {{2, Matrix{{2}}}, {1, Matrix{{1}}}});
  EXPECT_TRUE(is_exact(ses));
}

TEST(MakeChainMap, Examples) {
  auto x = times_two();
  EXPECT_NO_THROW(identity_chain_map(x));
  try {
    make_chain_map(disc(Zfree, 0), sphere(Zfree, 0), {{0, Matrix{{1}}}, {1, Matrix(0, 1)}});
    FAIL() << "expected NotChainMap";
  } catch (const NotChainMap& e) {
    EXPECT_EQ(e.degree(), 1);
  }
  // ℤ -id-> ℤ in degrees 1,0 onto ℤ in degree 1
  EXPECT_NO_THROW(make_chain_map(disc(Zfree, 0), sphere(Zfree, 1), {{1, Matrix{{1}}}}));
}

TEST(Homology, ShiftTranslatesDegrees) {
  auto x = make_complex(Z, 0, 2, {{2, Zfree}, {1, PresentedModule::free(Z, 2)}, {0, Zfree}},
                        {{2, Matrix{{2}, {0}}}, {1, Matrix{{0, 3}}}});
  for (int m = -2; m <= 2; ++m)
    for (int n = -3; n <= 5; ++n) EXPECT_TRUE(is_isomorphic(homology(shift(x, m), n), homology(x, n - m)));
}
