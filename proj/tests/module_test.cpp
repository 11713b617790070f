#include "subproj/module.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace subproj;
using namespace subproj::testing;

namespace {

const Ring Z = Ring::integers();

PresentedModule cyc(const Ring& r, long long n) { return PresentedModule::cyclic(r, n); }

/// Random module over Z/m with at most `g` generators.
PresentedModule random_module(std::mt19937_64& rng, const Ring& r, std::size_t g) {
  std::size_t gens = rng() % (g + 1);
  std::size_t rels = rng() % 3;
  return {r, gens, random_matrix(rng, gens, rels, 0, r.modulus() - 1)};
}

/// Canonical representative set of a module element class: x + im A.
std::set<Residues> coset(const Residues& x, const Matrix& relations, std::int64_t m) {
  std::set<Residues> out;
  for (const auto& y : column_span(relations, m)) {
    Residues z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % m;
    out.insert(z);
  }
  return out;
}

}  // namespace

TEST(MakeMorphism, Examples) {
  auto z2 = cyc(Z, 2);
  auto m = make_morphism(z2, z2, Matrix{{1}});
  EXPECT_EQ(m.witness(), (Matrix{{1}}));
  EXPECT_THROW(make_morphism(z2, PresentedModule::free(Z, 1), Matrix{{1}}), IllDefined);
  auto q = make_morphism(cyc(Z, 4), z2, Matrix{{1}});
  EXPECT_EQ(q.witness(), (Matrix{{2}}));
  EXPECT_THROW(make_morphism(z2, z2, Matrix{{1, 0}}), DimensionMismatch);
}

TEST(MorphismsEqual, Examples) {
  auto z = PresentedModule::free(Z, 1);
  auto z2 = cyc(Z, 2);
  EXPECT_TRUE(morphisms_equal(zero_morphism(z, z2), make_morphism(z, z2, Matrix{{2}})));
  EXPECT_FALSE(morphisms_equal(identity_morphism(z2), zero_morphism(z2, z2)));
  EXPECT_TRUE(morphisms_equal(identity_morphism(z2), identity_morphism(z2)));
}

TEST(Kernel, Examples) {
  auto z = PresentedModule::free(Z, 1);
  auto k1 = kernel(make_morphism(z, z, Matrix{{2}}));
  EXPECT_TRUE(k1.module.is_zero());
  auto k2 = kernel(make_morphism(z, cyc(Z, 2), Matrix{{1}}));
  EXPECT_TRUE(is_isomorphic(k2.module, z));
  EXPECT_EQ(k2.inclusion.matrix(), (Matrix{{2}}));
  auto m = PresentedModule(Z, 2, Matrix{{3}, {0}});
  auto k3 = kernel(zero_morphism(m, cyc(Z, 5)));
  EXPECT_TRUE(is_isomorphic(k3.module, m));
}

TEST(Cokernel, Examples) {
  auto z = PresentedModule::free(Z, 1);
  EXPECT_TRUE(is_isomorphic(cokernel(make_morphism(z, z, Matrix{{2}})).module, cyc(Z, 2)));
  EXPECT_TRUE(cokernel(identity_morphism(cyc(Z, 3))).module.is_zero());
  auto n = PresentedModule(Z, 2, Matrix{{4}, {0}});
  EXPECT_TRUE(is_isomorphic(cokernel(zero_morphism(z, n)).module, n));
}

TEST(Image, FactorsMorphism) {
  auto z = PresentedModule::free(Z, 2);
  auto n = PresentedModule(Z, 2, Matrix{{6}, {0}});
  auto f = make_morphism(z, n, Matrix{{2, 4}, {0, 3}});
  auto im = image(f);
  EXPECT_TRUE(morphisms_equal(compose(im.inclusion, im.corestriction), f));
}

TEST(KernelAndCokernel, AgreeWithEnumeration) {
  std::mt19937_64 rng(31);
  for (std::int64_t m : {2, 4}) {
    Ring r = Ring::integers_mod(m);
    for (int t = 0; t < 80; ++t) {
      auto src = random_module(rng, r, 2), tgt = random_module(rng, r, 2);
      auto hom = hom_module(src, tgt);
      Matrix fm(tgt.generators(), src.generators());
      for (const auto& g : hom.generators) fm = fm + Integer(rng() % m) * g.matrix();
      auto f = make_morphism(src, tgt, fm);
      auto k = kernel(f);
      EXPECT_TRUE(is_zero_morphism(compose(f, k.inclusion)));
      // im μ + im A_src equals {x : F x ∈ im A_tgt}
      auto tgt_span = column_span(tgt.relations(), m);
      std::set<Residues> brute;
      for_each_vector(src.generators(), m, [&](const Residues& x) {
        if (tgt_span.count(apply_mod(fm, x, m))) brute.insert(x);
      });
      EXPECT_EQ(column_span(hconcat(k.inclusion.matrix(), src.relations()), m), brute);
      auto c = cokernel(f);
      EXPECT_TRUE(is_zero_morphism(compose(c.projection, f)));
    }
  }
}

TEST(HomModule, Examples) {
  auto z2 = cyc(Z, 2);
  auto h = hom_module(z2, z2);
  EXPECT_TRUE(is_isomorphic(h.module, z2));
  ASSERT_EQ(h.generators.size(), 1u);
  EXPECT_TRUE(morphisms_equal(h.generators[0], identity_morphism(z2)));
  EXPECT_TRUE(hom_module(z2, PresentedModule::free(Z, 1)).module.is_zero());
  auto n = PresentedModule(Z, 2, Matrix{{3}, {0}});
  EXPECT_TRUE(is_isomorphic(hom_module(PresentedModule::free(Z, 1), n).module, n));
}

TEST(HomModule, GeneratorsSpanEnumeratedMorphisms) {
  std::mt19937_64 rng(37);
  for (std::int64_t m : {2, 3, 4}) {
    Ring r = Ring::integers_mod(m);
    for (int t = 0; t < 60; ++t) {
      auto src = random_module(rng, r, 2), tgt = random_module(rng, r, 2);
      auto hom = hom_module(src, tgt);
      const std::size_t dim = tgt.generators() * src.generators();
      // classes of well-defined matrices, each as a coset of vec(im A_N Y)
      Matrix zero = kron(Matrix::identity(src.generators()), tgt.relations());
      std::set<std::set<Residues>> brute, generated;
      for_each_vector(dim, m, [&](const Residues& v) {
        Matrix f(tgt.generators(), src.generators());
        for (std::size_t k = 0; k < dim; ++k) f(k % tgt.generators(), k / tgt.generators()) = v[k];
        if (solve_right(tgt.relations(), r.reduce(f * src.relations()), r)) brute.insert(coset(v, zero, m));
      });
      for_each_vector(hom.generators.size(), m, [&](const Residues& c) {
        Matrix f(tgt.generators(), src.generators());
        for (std::size_t j = 0; j < c.size(); ++j) f = f + Integer(c[j]) * hom.generators[j].matrix();
        Matrix v = r.reduce(vec(f));
        Residues rv(dim);
        for (std::size_t k = 0; k < dim; ++k) rv[k] = static_cast<std::int64_t>(v(k, 0));
        generated.insert(coset(rv, zero, m));
      });
      EXPECT_EQ(brute, generated);
      EXPECT_EQ(brute.size(), module_order(hom.module));
    }
  }
}

TEST(HomModule, Coordinates) {
  auto m = PresentedModule(Z, 2, Matrix{{2}, {0}});
  auto n = PresentedModule(Z, 2, Matrix{{4}, {0}});
  auto h = hom_module(m, n);
  auto f = make_morphism(m, n, Matrix{{2, 1}, {0, 5}});
  Matrix c = h.coordinates({f.matrix()});
  Matrix rebuilt(2, 2);
  for (std::size_t j = 0; j < h.generators.size(); ++j) rebuilt = rebuilt + c(j, 0) * h.generators[j].matrix();
  EXPECT_TRUE(morphisms_equal(make_morphism(m, n, rebuilt), f));
}

TEST(FreeCover, Examples) {
  auto c = free_cover(cyc(Z, 2));
  EXPECT_EQ(c.free.generators(), 1u);
  EXPECT_EQ(c.epi.matrix(), (Matrix{{1}}));
  auto c0 = free_cover(PresentedModule::zero(Z));
  EXPECT_EQ(c0.free.generators(), 0u);
  auto c2 = free_cover(PresentedModule::free(Z, 2));
  EXPECT_EQ(c2.epi.matrix(), Matrix::identity(2));
}

TEST(LiftsThrough, Examples) {
  auto z2 = cyc(Z, 2);
  auto cover = free_cover(z2);
  EXPECT_FALSE(lifts_through(identity_morphism(z2), cover.epi).has_value());
  auto h = lifts_through(zero_morphism(z2, z2), cover.epi);
  ASSERT_TRUE(h);
  EXPECT_TRUE(is_zero_morphism(*h));
  Ring z3 = Ring::integers_mod(3);
  auto m3 = PresentedModule(z3, 1, Matrix{{0}});
  auto n3 = PresentedModule(z3, 2, Matrix{{1}, {1}});
  auto cover3 = free_cover(n3);
  auto f = make_morphism(m3, n3, Matrix{{1}, {2}});
  auto lift = lifts_through(f, cover3.epi);
  ASSERT_TRUE(lift);
  EXPECT_TRUE(morphisms_equal(compose(cover3.epi, *lift), f));
}

TEST(SubprojectiveModule, Examples) {
  auto z2 = cyc(Z, 2);
  auto v = is_subprojective_module(z2, z2);
  EXPECT_FALSE(v.yes);
  ASSERT_TRUE(v.counterexample);
  EXPECT_TRUE(morphisms_equal(*v.counterexample, identity_morphism(z2)));
  EXPECT_TRUE(is_subprojective_module(z2, PresentedModule::free(Z, 3)).yes);
  std::mt19937_64 rng(41);
  Ring z3 = Ring::integers_mod(3);
  for (int t = 0; t < 40; ++t)
    EXPECT_TRUE(is_subprojective_module(random_module(rng, z3, 2), random_module(rng, z3, 2)).yes);
}

TEST(SubprojectiveModule, ClosedUnderDirectSums) {
  std::mt19937_64 rng(43);
  Ring z4 = Ring::integers_mod(4);
  for (int t = 0; t < 40; ++t) {
    auto m = random_module(rng, z4, 2), n1 = random_module(rng, z4, 2), n2 = random_module(rng, z4, 1);
    bool a = is_subprojective_module(m, n1).yes, b = is_subprojective_module(m, n2).yes;
    bool s = is_subprojective_module(m, direct_sum_module({n1, n2}, z4)).yes;
    EXPECT_EQ(a && b, s);
  }
}

TEST(DirectSum, InjectionsAndProjections) {
  auto a = cyc(Z, 2), b = PresentedModule::free(Z, 1);
  auto s = direct_sum({a, b}, Z);
  EXPECT_TRUE(morphisms_equal(compose(s.projections[0], s.injections[0]), identity_morphism(a)));
  EXPECT_TRUE(is_zero_morphism(compose(s.projections[1], s.injections[0])));
}
