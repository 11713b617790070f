#pragma once

// Bounded chain complexes and chain maps.
//
// A complex lives on a window [lo, hi] and is zero outside it. Differentials
// lower degree: d_n : X_n -> X_{n-1}. disc(M, n) puts M in degrees n+1 and n.

#include "subproj/module.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace subproj {

class NotAComplex : public Error {
 public:
  NotAComplex(int degree, const std::string& what)
      : Error("not a complex at degree " + std::to_string(degree) + ": " + what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class NotChainMap : public Error {
 public:
  NotChainMap(int degree, const std::string& what)
      : Error("not a chain map at degree " + std::to_string(degree) + ": " + what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class Complex {
 public:
  const Ring& ring() const { return data_->ring; }
  int lo() const { return data_->lo; }
  int hi() const { return data_->hi; }

  /// X_n; the zero module outside the window.
  PresentedModule component(int n) const {
    if (n < lo() || n > hi()) return PresentedModule::zero(ring());
    return data_->modules[static_cast<std::size_t>(n - lo())];
  }

  /// d_n : X_n -> X_{n-1}; zero outside (lo, hi].
  ModuleMorphism differential(int n) const {
    if (n <= lo() || n > hi()) return zero_morphism(component(n), component(n - 1));
    return data_->differentials[static_cast<std::size_t>(n - lo() - 1)];
  }

  bool is_zero() const {
    for (int n = lo(); n <= hi(); ++n)
      if (!component(n).is_zero()) return false;
    return true;
  }

  /// Same window, presentations and differential matrices.
  friend bool operator==(const Complex& a, const Complex& b) {
    if (!(a.ring() == b.ring()) || a.lo() != b.lo() || a.hi() != b.hi()) return false;
    for (int n = a.lo(); n <= a.hi(); ++n) {
      if (!(a.component(n) == b.component(n))) return false;
      if (a.differential(n).matrix() != b.differential(n).matrix()) return false;
    }
    return true;
  }

  /// Validates d∘d = 0 and adjacency; `differentials[k]` is d_{lo+1+k}.
  static Complex assemble(Ring ring, int lo, std::vector<PresentedModule> modules,
                          std::vector<ModuleMorphism> differentials) {
    if (modules.empty()) throw Error("complex needs a nonempty window");
    const int hi = lo + static_cast<int>(modules.size()) - 1;
    if (differentials.size() + 1 != modules.size()) throw DimensionMismatch("complex: differential count");
    for (std::size_t k = 0; k < differentials.size(); ++k) {
      const int n = lo + 1 + static_cast<int>(k);
      if (!(differentials[k].source() == modules[k + 1]) || !(differentials[k].target() == modules[k]))
        throw NotAComplex(n, "differential does not connect the adjacent components");
      if (k > 0 && !is_zero_morphism(compose(differentials[k - 1], differentials[k])))
        throw NotAComplex(n, "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " is not zero");
    }
    auto d = std::make_shared<Data>(Data{ring, lo, hi, std::move(modules), std::move(differentials)});
    return Complex(std::move(d));
  }

 private:
  struct Data {
    Ring ring;
    int lo;
    int hi;
    std::vector<PresentedModule> modules;
    std::vector<ModuleMorphism> differentials;
  };
  explicit Complex(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Builds a complex from explicit degrees. Missing components are zero and
/// missing differentials are zero matrices.
inline Complex make_complex(const Ring& ring, int lo, int hi, const std::map<int, PresentedModule>& components,
                            const std::map<int, Matrix>& differentials) {
  if (lo > hi) throw Error("complex window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  std::vector<PresentedModule> mods;
  for (int n = lo; n <= hi; ++n) {
    auto it = components.find(n);
    mods.push_back(it == components.end() ? PresentedModule::zero(ring) : it->second);
    if (!(mods.back().ring() == ring)) throw Error("component " + std::to_string(n) + " has a different ring");
  }
  for (const auto& [n, m] : components)
    if (n < lo || n > hi) throw DimensionMismatch("component degree " + std::to_string(n) + " outside the window");
  for (const auto& [n, d] : differentials)
    if ((n <= lo || n > hi) && !d.empty())
      throw DimensionMismatch("differential degree " + std::to_string(n) + " outside the window");
  std::vector<ModuleMorphism> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    const auto& src = mods[static_cast<std::size_t>(n - lo)];
    const auto& tgt = mods[static_cast<std::size_t>(n - lo - 1)];
    auto it = differentials.find(n);
    Matrix d = it == differentials.end() ? Matrix(tgt.generators(), src.generators()) : it->second;
    if (d.rows() != tgt.generators() || d.cols() != src.generators())
      throw DimensionMismatch("differential " + std::to_string(n) + " has shape " + d.shape());
    try {
      diffs.push_back(make_morphism(src, tgt, d));
    } catch (const IllDefined&) {
      throw NotAComplex(n, "differential is not well defined");
    }
  }
  return Complex::assemble(ring, lo, std::move(mods), std::move(diffs));
}

inline Complex zero_complex(const Ring& ring) { return Complex::assemble(ring, 0, {PresentedModule::zero(ring)}, {}); }

/// M in degree n.
inline Complex sphere(const PresentedModule& m, int n) { return Complex::assemble(m.ring(), n, {m}, {}); }

/// M in degrees n+1 and n joined by the identity.
inline Complex disc(const PresentedModule& m, int n) {
  return Complex::assemble(m.ring(), n, {m, m}, {identity_morphism(m)});
}

/// X[n]: X_{i-n} in degree i with differential (-1)^n d_{i-n}.
inline Complex shift(const Complex& x, int n) {
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    mods.push_back(x.component(i));
    if (i > x.lo()) diffs.push_back(n % 2 == 0 ? x.differential(i) : negate(x.differential(i)));
  }
  return Complex::assemble(x.ring(), x.lo() + n, std::move(mods), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Chain maps

class ChainMap {
 public:
  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }

  /// f_n; zero where either side vanishes.
  ModuleMorphism component(int n) const {
    auto it = components_.find(n);
    if (it != components_.end()) return it->second;
    return zero_morphism(source_.component(n), target_.component(n));
  }

  /// Degrees where both complexes may be nonzero.
  std::pair<int, int> overlap() const {
    return {std::max(source_.lo(), target_.lo()), std::min(source_.hi(), target_.hi())};
  }

  /// Validates the commuting squares d^Y_n f_n = f_{n-1} d^X_n.
  static ChainMap assemble(const Complex& x, const Complex& y, std::map<int, ModuleMorphism> components) {
    if (!(x.ring() == y.ring())) throw Error("chain map between complexes over different rings");
    for (const auto& [n, f] : components)
      if (!(f.source() == x.component(n)) || !(f.target() == y.component(n)))
        throw NotChainMap(n, "component does not match the complexes");
    ChainMap out(x, y, std::move(components));
    const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
      if (!morphisms_equal(compose(y.differential(n), out.component(n)),
                           compose(out.component(n - 1), x.differential(n))))
        throw NotChainMap(n, "square does not commute");
    }
    return out;
  }

 private:
  ChainMap(Complex x, Complex y, std::map<int, ModuleMorphism> c)
      : source_(std::move(x)), target_(std::move(y)), components_(std::move(c)) {}
  Complex source_;
  Complex target_;
  std::map<int, ModuleMorphism> components_;
};

/// Builds a chain map from explicit component matrices; missing degrees are zero.
inline ChainMap make_chain_map(const Complex& x, const Complex& y, const std::map<int, Matrix>& components) {
  std::map<int, ModuleMorphism> comps;
  for (const auto& [n, f] : components) {
    auto src = x.component(n), tgt = y.component(n);
    if (f.rows() != tgt.generators() || f.cols() != src.generators())
      throw DimensionMismatch("chain map component " + std::to_string(n) + " has shape " + f.shape());
    if (f.empty()) continue;
    try {
      comps.emplace(n, make_morphism(src, tgt, f));
    } catch (const IllDefined&) {
      throw NotChainMap(n, "component is not well defined");
    }
  }
  return ChainMap::assemble(x, y, std::move(comps));
}

inline ChainMap identity_chain_map(const Complex& x) {
  std::map<int, ModuleMorphism> c;
  for (int n = x.lo(); n <= x.hi(); ++n) c.emplace(n, identity_morphism(x.component(n)));
  return ChainMap::assemble(x, x, std::move(c));
}

inline ChainMap zero_chain_map(const Complex& x, const Complex& y) { return ChainMap::assemble(x, y, {}); }

/// g∘f
inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw DimensionMismatch("compose: chain maps do not chain");
  std::map<int, ModuleMorphism> c;
  auto [lo, hi] = f.overlap();
  for (int n = lo; n <= hi; ++n) c.emplace(n, compose(g.component(n), f.component(n)));
  return ChainMap::assemble(f.source(), g.target(), std::move(c));
}

inline ChainMap add(const ChainMap& a, const ChainMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) throw DimensionMismatch("add: chain maps differ");
  std::map<int, ModuleMorphism> c;
  auto [lo, hi] = a.overlap();
  for (int n = lo; n <= hi; ++n) c.emplace(n, add(a.component(n), b.component(n)));
  return ChainMap::assemble(a.source(), a.target(), std::move(c));
}

inline ChainMap scale(const Integer& k, const ChainMap& a) {
  std::map<int, ModuleMorphism> c;
  auto [lo, hi] = a.overlap();
  for (int n = lo; n <= hi; ++n) c.emplace(n, scale(k, a.component(n)));
  return ChainMap::assemble(a.source(), a.target(), std::move(c));
}

inline ChainMap negate(const ChainMap& a) { return scale(Integer(-1), a); }

/// Degreewise equality in Hom.
inline bool chain_maps_equal(const ChainMap& a, const ChainMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DimensionMismatch("chain_maps_equal: different source or target");
  auto [lo, hi] = a.overlap();
  for (int n = lo; n <= hi; ++n)
    if (!morphisms_equal(a.component(n), b.component(n))) return false;
  return true;
}

/// f[n]: X[n] -> Y[n].
inline ChainMap shift(const ChainMap& f, int n) {
  std::map<int, ModuleMorphism> c;
  auto [lo, hi] = f.overlap();
  for (int k = lo; k <= hi; ++k) c.emplace(k + n, f.component(k));
  return ChainMap::assemble(shift(f.source(), n), shift(f.target(), n), std::move(c));
}

// ---------------------------------------------------------------------------
// Direct sums

struct ComplexSum {
  Complex complex;
  std::vector<ChainMap> injections;
  std::vector<ChainMap> projections;
};

inline ComplexSum direct_sum(const std::vector<Complex>& parts) {
  if (parts.empty()) throw Error("direct_sum of no complexes");
  const Ring ring = parts.front().ring();
  int lo = parts.front().lo(), hi = parts.front().hi();
  for (const auto& p : parts) {
    if (!(p.ring() == ring)) throw Error("direct_sum: ring mismatch");
    lo = std::min(lo, p.lo());
    hi = std::max(hi, p.hi());
  }
  std::vector<ModuleSum> sums;
  for (int n = lo; n <= hi; ++n) {
    std::vector<PresentedModule> comps;
    for (const auto& p : parts) comps.push_back(p.component(n));
    sums.push_back(direct_sum(comps, ring));
  }
  auto at = [&](int n) -> const ModuleSum& { return sums[static_cast<std::size_t>(n - lo)]; };
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (int n = lo; n <= hi; ++n) {
    mods.push_back(at(n).module);
    if (n == lo) continue;
    std::vector<Matrix> blocks, witnesses;
    for (const auto& p : parts) {
      auto d = p.differential(n);
      blocks.push_back(d.matrix());
      witnesses.push_back(d.witness());
    }
    diffs.push_back(morphism_with_witness(at(n).module, at(n - 1).module, block_diagonal(blocks),
                                          block_diagonal(witnesses)));
  }
  Complex sum = Complex::assemble(ring, lo, std::move(mods), std::move(diffs));
  ComplexSum out{sum, {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::map<int, ModuleMorphism> inj, proj;
    for (int n = parts[k].lo(); n <= parts[k].hi(); ++n) {
      inj.emplace(n, at(n).injections[k]);
      proj.emplace(n, at(n).projections[k]);
    }
    out.injections.push_back(ChainMap::assemble(parts[k], sum, std::move(inj)));
    out.projections.push_back(ChainMap::assemble(sum, parts[k], std::move(proj)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology

/// Cycles, boundaries and homology at one degree.
struct HomologyData {
  PresentedModule cycles;
  ModuleMorphism cycle_inclusion;  // Z_n -> X_n
  PresentedModule boundaries;
  ModuleMorphism boundary_inclusion;  // B_n -> X_n
  ModuleMorphism boundary_corestriction;  // X_{n+1} -> B_n
  PresentedModule homology;
  ModuleMorphism projection;  // Z_n -> H_n
};

inline HomologyData homology_data(const Complex& x, int n) {
  const Ring& r = x.ring();
  auto z = kernel(x.differential(n));
  auto b = image(x.differential(n + 1));
  const auto& xn = x.component(n);
  auto sq = subquotient(z.inclusion.matrix(), hconcat(x.differential(n + 1).matrix(), xn.relations()), r);
  PresentedModule h(r, sq.generators.cols(), sq.relations);
  auto proj = make_morphism(z.module, h, sq.reduction);
  return {z.module, z.inclusion, b.module, b.inclusion, b.corestriction, h, proj};
}

inline PresentedModule homology(const Complex& x, int n) { return homology_data(x, n).homology; }

/// H_n = 0 on the padded window [lo-1, hi+1].
inline bool is_exact(const Complex& x) {
  for (int n = x.lo() - 1; n <= x.hi() + 1; ++n)
    if (!homology(x, n).is_zero()) return false;
  return true;
}

}  // namespace subproj
