#pragma once

// Seeded random instances: modules, complexes (d² = 0 by construction),
// exact complexes, chain maps and null-homotopic maps.

#include "subproj/homotopy.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace subproj::harness {

struct TrialConfig {
  Ring ring = Ring::integers();
  int window = 3;                   // at most 5 degrees
  std::size_t max_generators = 2;   // at most 3 per component
  int entry_bound = 3;              // at most 5
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  void validate() const {
    if (window < 1 || window > 5) throw Error("window length must lie in [1, 5]");
    if (max_generators > 3) throw Error("at most 3 generators per component");
    if (entry_bound < 1 || entry_bound > 5) throw Error("entry bound must lie in [1, 5]");
  }
};

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for trial `index` of a run seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::size_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index)));
}

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

/// Residue over Z/m, or an integer in [−bound, bound] over Z.
inline Integer random_entry(const TrialConfig& cfg, Rng& rng) {
  if (cfg.ring.is_finite()) return Integer(uniform(rng, 0, cfg.ring.modulus() - 1));
  return Integer(uniform(rng, -cfg.entry_bound, cfg.entry_bound));
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, const TrialConfig& cfg, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_entry(cfg, rng);
  return cfg.ring.reduce(m);
}

/// Zero one time in six, free about half the time, otherwise one or two
/// random relations.
inline PresentedModule random_module(const TrialConfig& cfg, Rng& rng) {
  if (cfg.max_generators == 0 || uniform(rng, 0, 5) == 0) return PresentedModule::zero(cfg.ring);
  const auto g = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(cfg.max_generators)));
  if (coin(rng)) return PresentedModule::free(cfg.ring, g);
  const auto k = static_cast<std::size_t>(uniform(rng, 1, std::min<std::int64_t>(2, static_cast<std::int64_t>(g))));
  return PresentedModule(cfg.ring, g, random_matrix(g, k, cfg, rng));
}

/// Random element of Hom(M, N) as a combination of the Hom generators.
inline ModuleMorphism random_morphism(const PresentedModule& m, const PresentedModule& n, const TrialConfig& cfg,
                                      Rng& rng) {
  auto hom = hom_module(m, n);
  ModuleMorphism out = zero_morphism(m, n);
  for (const auto& g : hom.generators) {
    Integer c = cfg.ring.is_finite() ? random_entry(cfg, rng) : Integer(uniform(rng, -2, 2));
    if (c != 0) out = add(out, scale(c, g));
  }
  return out;
}

/// Components in degrees [lo, lo + len − 1]; each d_n is a random map into
/// ker d_{n−1}, so d² = 0 holds by construction.
inline Complex random_complex_on(int lo, int len, const TrialConfig& cfg, Rng& rng) {
  std::map<int, PresentedModule> mods;
  std::map<int, Matrix> diffs;
  for (int n = lo; n < lo + len; ++n) mods.emplace(n, random_module(cfg, rng));
  for (int n = lo + 1; n < lo + len; ++n) {
    const auto& src = mods.at(n);
    const auto& tgt = mods.at(n - 1);
    // one retry when the first draw is zero keeps most differentials nonzero
    if (n == lo + 1) {
      auto d = random_morphism(src, tgt, cfg, rng);
      if (is_zero_morphism(d)) d = random_morphism(src, tgt, cfg, rng);
      diffs.emplace(n, d.matrix());
      continue;
    }
    auto below = make_morphism(tgt, mods.at(n - 2), diffs.at(n - 1));
    auto k = kernel(below);
    auto d = compose(k.inclusion, random_morphism(src, k.module, cfg, rng));
    if (is_zero_morphism(d)) d = compose(k.inclusion, random_morphism(src, k.module, cfg, rng));
    diffs.emplace(n, d.matrix());
  }
  return make_complex(cfg.ring, lo, lo + len - 1, mods, diffs);
}

inline Complex random_complex(const TrialConfig& cfg, Rng& rng) {
  const int len = static_cast<int>(uniform(rng, 1, cfg.window));
  const int lo = static_cast<int>(uniform(rng, -1, 1));
  return random_complex_on(lo, len, cfg, rng);
}

/// Exact complex: a sum of random discs, or 0 -> ker f -> X -> Y -> coker f -> 0
/// truncated to the window, possibly plus a disc.
inline Complex random_exact_complex(const TrialConfig& cfg, Rng& rng) {
  const int lo = static_cast<int>(uniform(rng, -1, 1));
  std::vector<Complex> parts;
  if (cfg.window >= 3 && coin(rng)) {
    auto x = random_module(cfg, rng), y = random_module(cfg, rng);
    auto f = random_morphism(x, y, cfg, rng);
    auto k = kernel(f);
    if (cfg.window >= 4 && coin(rng)) {
      auto c = cokernel(f);
      parts.push_back(make_complex(cfg.ring, lo, lo + 3, {{lo + 3, k.module}, {lo + 2, x}, {lo + 1, y}, {lo, c.module}},
                                   {{lo + 3, k.inclusion.matrix()}, {lo + 2, f.matrix()}, {lo + 1, c.projection.matrix()}}));
    } else {
      auto im = image(f);
      parts.push_back(make_complex(cfg.ring, lo, lo + 2, {{lo + 2, k.module}, {lo + 1, x}, {lo, im.module}},
                                   {{lo + 2, k.inclusion.matrix()}, {lo + 1, im.corestriction.matrix()}}));
    }
    if (coin(rng)) parts.push_back(disc(random_module(cfg, rng), lo + static_cast<int>(uniform(rng, 0, cfg.window - 2))));
  } else {
    const int discs = static_cast<int>(uniform(rng, 1, 2));
    for (int i = 0; i < discs; ++i)
      parts.push_back(disc(random_module(cfg, rng), lo + static_cast<int>(uniform(rng, 0, std::max(0, cfg.window - 2)))));
  }
  return direct_sum(parts).complex;
}

/// Random chain map X -> Y from the generators of Z_0(Hom•(X, Y)).
inline ChainMap random_chain_map(const Complex& x, const Complex& y, const TrialConfig& cfg, Rng& rng) {
  auto group = chain_maps_group(x, y, 0);
  std::map<int, Matrix> comps;
  auto [lo, hi] = std::make_pair(std::max(x.lo(), y.lo()), std::min(x.hi(), y.hi()));
  for (int n = lo; n <= hi; ++n) comps.emplace(n, Matrix(y.component(n).generators(), x.component(n).generators()));
  for (const auto& g : group.generators) {
    Integer c = cfg.ring.is_finite() ? random_entry(cfg, rng) : Integer(uniform(rng, -2, 2));
    for (int n = lo; n <= hi; ++n) comps.at(n) = comps.at(n) + c * g.component(n).matrix();
  }
  for (auto& [n, m] : comps) m = cfg.ring.reduce(m);
  return make_chain_map(x, y, comps);
}

/// f = d s + s d for a random family s, together with s.
inline std::pair<ChainMap, HomotopyWitness> random_null_homotopic(const Complex& x, const Complex& y,
                                                                  const TrialConfig& cfg, Rng& rng) {
  HomotopyWitness s;
  for (int n = std::max(x.lo(), y.lo() - 1); n <= std::min(x.hi(), y.hi() - 1); ++n)
    s.maps.emplace(n, random_morphism(x.component(n), y.component(n + 1), cfg, rng));
  std::map<int, Matrix> comps;
  for (int n = std::max(x.lo(), y.lo()); n <= std::min(x.hi(), y.hi()); ++n) {
    auto fn = add(compose(y.differential(n + 1), s.at(n, x, y)), compose(s.at(n - 1, x, y), x.differential(n)));
    comps.emplace(n, fn.matrix());
  }
  return {make_chain_map(x, y, comps), std::move(s)};
}

}  // namespace subproj::harness
