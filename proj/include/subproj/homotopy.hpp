#pragma once

// Hom complexes, null-homotopies, homotopy classes, contractibility, mapping
// cones and factorization of null-homotopic maps through contractible
// complexes.

#include "subproj/complex.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace subproj {

class InvalidWitness : public Error {
 public:
  using Error::Error;
};

class InvalidFactorization : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Hom complex

/// Degree-n component of Hom•(X, Y) is ⊕_i Hom(X_i, Y_{i+n}), one block per
/// source degree i in increasing order. The differential sends ψ to
/// (d^Y_{i+n} ψ_i − (−1)^n ψ_{i−1} d^X_i)_i.
struct HomComplex {
  struct Block {
    int source_degree;
    HomModule hom;
    std::size_t offset;  // first generator of this block in the component
  };

  Complex source;
  Complex target;
  Complex complex;
  std::map<int, std::vector<Block>> blocks;

  /// The family (ψ_i) encoded by column `col` of `coefficients` at degree n.
  std::map<int, Matrix> family(int n, const Matrix& coefficients, std::size_t col = 0) const {
    std::map<int, Matrix> out;
    auto it = blocks.find(n);
    if (it == blocks.end()) return out;
    for (const auto& b : it->second) {
      Matrix f(b.hom.target.generators(), b.hom.source.generators());
      for (std::size_t j = 0; j < b.hom.generators.size(); ++j)
        if (coefficients(b.offset + j, col) != 0)
          f = f + coefficients(b.offset + j, col) * b.hom.generators[j].matrix();
      out.emplace(b.source_degree, source.ring().reduce(f));
    }
    return out;
  }

  /// Coefficients of a family at degree n (missing entries are zero).
  Matrix coordinates(int n, const std::map<int, Matrix>& fam) const {
    return coordinates_many(n, {fam});
  }

  Matrix coordinates_many(int n, const std::vector<std::map<int, Matrix>>& fams) const {
    auto it = blocks.find(n);
    if (it == blocks.end() || it->second.empty()) return Matrix(0, fams.size());
    const auto& last = it->second.back();
    Matrix out(last.offset + last.hom.generators.size(), fams.size());
    for (const auto& b : it->second) {
      std::vector<Matrix> maps;
      for (const auto& fam : fams) {
        auto f = fam.find(b.source_degree);
        maps.push_back(f == fam.end() ? Matrix(b.hom.target.generators(), b.hom.source.generators()) : f->second);
      }
      if (b.hom.generators.empty()) continue;
      out.set_block(b.offset, 0, b.hom.coordinates(maps));
    }
    return out;
  }
};

inline HomComplex hom_complex(const Complex& x, const Complex& y) {
  if (!(x.ring() == y.ring())) throw Error("hom_complex: ring mismatch");
  const Ring& r = x.ring();
  HomComplex out{x, y, zero_complex(r), {}};
  const int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  std::vector<PresentedModule> mods;
  for (int n = lo; n <= hi; ++n) {
    std::vector<HomComplex::Block> bl;
    std::vector<PresentedModule> parts;
    std::size_t offset = 0;
    for (int i = std::max(x.lo(), y.lo() - n); i <= std::min(x.hi(), y.hi() - n); ++i) {
      auto h = hom_module(x.component(i), y.component(i + n));
      parts.push_back(h.module);
      std::size_t gens = h.generators.size();
      bl.push_back({i, std::move(h), offset});
      offset += gens;
    }
    mods.push_back(direct_sum_module(parts, r));
    out.blocks.emplace(n, std::move(bl));
  }
  std::vector<ModuleMorphism> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    const auto& src = mods[static_cast<std::size_t>(n - lo)];
    const auto& tgt = mods[static_cast<std::size_t>(n - 1 - lo)];
    const Integer sign = (n % 2 == 0) ? Integer(-1) : Integer(1);  // −(−1)^n
    std::vector<std::map<int, Matrix>> images;
    for (const auto& b : out.blocks.at(n))
      for (const auto& g : b.hom.generators) {
        const int i = b.source_degree;
        std::map<int, Matrix> fam;
        fam.emplace(i, y.differential(i + n).matrix() * g.matrix());
        fam.emplace(i + 1, sign * (g.matrix() * x.differential(i + 1).matrix()));
        images.push_back(std::move(fam));
      }
    Matrix d = images.empty() ? Matrix(tgt.generators(), 0) : out.coordinates_many(n - 1, images);
    diffs.push_back(make_morphism(src, tgt, d));
  }
  out.complex = Complex::assemble(r, lo, std::move(mods), std::move(diffs));
  return out;
}

/// Z_n(Hom•(X, Y)) with one validated chain map X[n] -> Y per generator.
struct ChainMapsGroup {
  PresentedModule group;
  std::vector<ChainMap> generators;
};

inline ChainMap chain_map_from_family(const HomComplex& hc, int n, const std::map<int, Matrix>& fam) {
  std::map<int, Matrix> comps;
  for (const auto& [i, f] : fam) comps.emplace(i + n, f);
  return make_chain_map(shift(hc.source, n), hc.target, comps);
}

inline ChainMapsGroup chain_maps_group(const HomComplex& hc, int n) {
  auto z = kernel(hc.complex.differential(n));
  ChainMapsGroup out{z.module, {}};
  const Matrix& cyc = z.inclusion.matrix();
  for (std::size_t c = 0; c < cyc.cols(); ++c) out.generators.push_back(chain_map_from_family(hc, n, hc.family(n, cyc, c)));
  return out;
}

inline ChainMapsGroup chain_maps_group(const Complex& x, const Complex& y, int n) {
  return chain_maps_group(hom_complex(x, y), n);
}

/// Hom_K(X[n], Y) = H_n(Hom•(X, Y)).
inline PresentedModule hom_K(const Complex& x, const Complex& y, int n) {
  return homology(hom_complex(x, y).complex, n);
}

// ---------------------------------------------------------------------------
// Null-homotopies

/// Family s_n : X_n -> Y_{n+1}; absent degrees are zero.
struct HomotopyWitness {
  std::map<int, ModuleMorphism> maps;

  ModuleMorphism at(int n, const Complex& x, const Complex& y) const {
    auto it = maps.find(n);
    if (it != maps.end()) return it->second;
    return zero_morphism(x.component(n), y.component(n + 1));
  }
};

/// Re-checks f_n ≡ d^Y_{n+1} s_n + s_{n−1} d^X_n on the padded window.
inline bool verify_homotopy(const ChainMap& f, const HomotopyWitness& s) {
  const auto& x = f.source();
  const auto& y = f.target();
  for (const auto& [n, m] : s.maps)
    if (!(m.source() == x.component(n)) || !(m.target() == y.component(n + 1))) return false;
  const int lo = std::min(x.lo(), y.lo()) - 1, hi = std::max(x.hi(), y.hi()) + 1;
  for (int n = lo; n <= hi; ++n) {
    auto rhs = add(compose(y.differential(n + 1), s.at(n, x, y)), compose(s.at(n - 1, x, y), x.differential(n)));
    if (!morphisms_equal(f.component(n), rhs)) return false;
  }
  return true;
}

/// Solves for the whole family (s_n) in one linear system.
inline std::optional<HomotopyWitness> is_null_homotopic(const ChainMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  LinearSystem sys(x.ring());
  std::map<int, LinearSystem::Unknown> s;
  for (int n = std::max(x.lo(), y.lo() - 1); n <= std::min(x.hi(), y.hi() - 1); ++n)
    if (x.component(n).generators() > 0 && y.component(n + 1).generators() > 0)
      s.emplace(n, add_morphism_unknown(sys, x.component(n), y.component(n + 1)));
  for (int n = std::max(x.lo(), y.lo()); n <= std::min(x.hi(), y.hi()); ++n) {
    const auto& xn = x.component(n);
    const auto& yn = y.component(n);
    if (xn.generators() == 0 || yn.generators() == 0) continue;
    std::vector<LinearSystem::Term> terms;
    if (s.count(n)) terms.push_back({y.differential(n + 1).matrix(), s.at(n), Matrix::identity(xn.generators())});
    if (s.count(n - 1)) terms.push_back({Matrix::identity(yn.generators()), s.at(n - 1), x.differential(n).matrix()});
    add_congruence(sys, yn, std::move(terms), f.component(n).matrix());
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  HomotopyWitness w;
  for (const auto& [n, u] : s) w.maps.emplace(n, make_morphism(x.component(n), y.component(n + 1), (*sol)[u]));
  if (!verify_homotopy(f, w)) throw Error("is_null_homotopic: witness failed re-verification");
  return w;
}

// ---------------------------------------------------------------------------
// Contractibility

/// X ≅ ⊕_n disc(M_n, n) with M_n = im d_{n+1}.
struct ContractibleDecomposition {
  std::map<int, PresentedModule> summands;
  Complex assembled;
  ChainMap to_complex;    // assembled -> X
  ChainMap from_complex;  // X -> assembled
};

struct Contraction {
  HomotopyWitness witness;
  ContractibleDecomposition decomposition;
};

inline std::optional<Contraction> is_contractible(const Complex& x) {
  auto w = is_null_homotopic(identity_chain_map(x));
  if (!w) return std::nullopt;
  const Ring& r = x.ring();
  std::map<int, ImageResult> images;
  std::map<int, PresentedModule> summands;
  std::vector<Complex> discs;
  for (int k = x.lo(); k < x.hi(); ++k) {
    auto im = image(x.differential(k + 1));
    summands.emplace(k, im.module);
    discs.push_back(disc(im.module, k));
    images.emplace(k, std::move(im));
  }
  Complex assembled = discs.empty() ? sphere(PresentedModule::zero(r), x.lo()) : direct_sum(discs).complex;
  auto gens = [&](int k) {
    auto it = images.find(k);
    return it == images.end() ? Matrix(x.component(k).generators(), 0) : it->second.inclusion.matrix();
  };
  auto core = [&](int k) {  // X_{k+1} -> M_k
    auto it = images.find(k);
    return it == images.end() ? Matrix(0, x.component(k + 1).generators()) : it->second.corestriction.matrix();
  };
  std::map<int, Matrix> to, from;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    Matrix s_prev = w->at(k - 1, x, x).matrix();
    Matrix s_here = w->at(k, x, x).matrix();
    to.emplace(k, hconcat(s_prev * gens(k - 1), gens(k)));
    from.emplace(k, vconcat(core(k - 1), core(k) * s_here));
  }
  auto psi = make_chain_map(assembled, x, to);
  auto phi = make_chain_map(x, assembled, from);
  return Contraction{*w, {std::move(summands), assembled, psi, phi}};
}

// ---------------------------------------------------------------------------
// Mapping cone

/// Cone of g : M[−1] -> K with degree-n component K_n ⊕ M_n and differential
/// [[d^K_n, g_{n−1}], [0, d^M_n]].
struct MappingCone {
  Complex cone;
  Complex base;  // M
  ChainMap inclusion;   // K -> cone
  ChainMap projection;  // cone -> M
};

inline MappingCone mapping_cone(const ChainMap& g) {
  const Complex m = shift(g.source(), 1);
  const Complex& k = g.target();
  const Ring& r = k.ring();
  const int lo = std::min(k.lo(), m.lo()), hi = std::max(k.hi(), m.hi());
  std::vector<PresentedModule> mods;
  for (int n = lo; n <= hi; ++n) mods.push_back(direct_sum_module({k.component(n), m.component(n)}, r));
  std::vector<ModuleMorphism> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    const auto& kn = k.component(n);
    const auto& mn = m.component(n);
    const auto& kp = k.component(n - 1);
    const auto& mp = m.component(n - 1);
    Matrix d(kp.generators() + mp.generators(), kn.generators() + mn.generators());
    d.set_block(0, 0, k.differential(n).matrix());
    d.set_block(0, kn.generators(), g.component(n - 1).matrix());
    d.set_block(kp.generators(), kn.generators(), m.differential(n).matrix());
    diffs.push_back(make_morphism(mods[static_cast<std::size_t>(n - lo)], mods[static_cast<std::size_t>(n - 1 - lo)], d));
  }
  Complex cone = Complex::assemble(r, lo, std::move(mods), std::move(diffs));
  std::map<int, Matrix> inc, proj;
  for (int n = lo; n <= hi; ++n) {
    const std::size_t kg = k.component(n).generators(), mg = m.component(n).generators();
    inc.emplace(n, vconcat(Matrix::identity(kg), Matrix(mg, kg)));
    proj.emplace(n, hconcat(Matrix(mg, kg), Matrix::identity(mg)));
  }
  return {cone, m, make_chain_map(k, cone, inc), make_chain_map(cone, m, proj)};
}

// ---------------------------------------------------------------------------
// Factorization through a contractible complex

/// Per degree n: α_n : X_n -> L_{n+1} and β_n : L_{n+1} -> Y_{n+1}.
using HomotopyFactorization = std::map<int, std::pair<ModuleMorphism, ModuleMorphism>>;

struct ContractibleFactorization {
  Complex middle;  // Z with Z_n = L_{n+1} ⊕ L_n
  ChainMap g;      // X -> Z
  ChainMap h;      // Z -> Y
};

/// f = h∘g through Z = ⊕_n disc(L_{n+1}, n), with
/// g_n = (α_n, α_{n−1} d^X_n) and h_n(t, z) = d^Y_{n+1} β_n(t) + β_{n−1}(z).
/// Without explicit factorizations, L_{n+1} = Y_{n+1}, α_n = s_n, β_n = id.
inline ContractibleFactorization factor_through_contractible(
    const ChainMap& f, const HomotopyWitness& s, const std::optional<HomotopyFactorization>& factorizations = {}) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Ring& r = x.ring();
  if (!verify_homotopy(f, s)) throw InvalidWitness("homotopy family does not witness f");
  HomotopyFactorization fac;
  if (factorizations) {
    fac = *factorizations;
    for (const auto& [n, ab] : fac) {
      const auto& [alpha, beta] = ab;
      if (!(alpha.source() == x.component(n)) || !(beta.target() == y.component(n + 1)) ||
          !(alpha.target() == beta.source()))
        throw InvalidFactorization("factorization at degree " + std::to_string(n) + " has mismatched modules");
      if (!morphisms_equal(compose(beta, alpha), s.at(n, x, y)))
        throw InvalidFactorization("β_" + std::to_string(n) + " α_" + std::to_string(n) + " differs from s_" +
                                   std::to_string(n));
    }
    for (const auto& [n, sn] : s.maps)
      if (!fac.count(n) && !is_zero_morphism(sn))
        throw InvalidFactorization("no factorization for nonzero s_" + std::to_string(n));
    if (fac.empty()) fac.emplace(y.lo(), std::make_pair(zero_morphism(x.component(y.lo()), PresentedModule::zero(r)),
                                                        zero_morphism(PresentedModule::zero(r), y.component(y.lo() + 1))));
  } else {
    for (int n = y.lo() - 1; n <= y.hi() - 1; ++n)
      fac.emplace(n, std::make_pair(s.at(n, x, y), identity_morphism(y.component(n + 1))));
  }
  const int lo = fac.begin()->first, hi = fac.rbegin()->first + 1;
  auto L = [&](int n) {  // L_{n+1}
    auto it = fac.find(n);
    return it == fac.end() ? PresentedModule::zero(r) : it->second.first.target();
  };
  auto alpha = [&](int n) {
    auto it = fac.find(n);
    return it == fac.end() ? Matrix(0, x.component(n).generators()) : it->second.first.matrix();
  };
  auto beta = [&](int n) {
    auto it = fac.find(n);
    return it == fac.end() ? Matrix(y.component(n + 1).generators(), 0) : it->second.second.matrix();
  };
  std::vector<PresentedModule> mods;
  for (int n = lo; n <= hi; ++n) mods.push_back(direct_sum_module({L(n), L(n - 1)}, r));
  std::vector<ModuleMorphism> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    // (t, z) ↦ (z, 0)
    const std::size_t top = L(n).generators(), mid = L(n - 1).generators(), low = L(n - 2).generators();
    Matrix d(mid + low, top + mid);
    d.set_block(0, top, Matrix::identity(mid));
    diffs.push_back(make_morphism(mods[static_cast<std::size_t>(n - lo)], mods[static_cast<std::size_t>(n - 1 - lo)], d));
  }
  Complex z = Complex::assemble(r, lo, std::move(mods), std::move(diffs));
  std::map<int, Matrix> gm, hm;
  for (int n = std::min(lo, x.lo()); n <= std::max(hi, x.hi()); ++n) {
    if (n >= lo && n <= hi) gm.emplace(n, vconcat(alpha(n), alpha(n - 1) * x.differential(n).matrix()));
  }
  for (int n = lo; n <= hi; ++n) hm.emplace(n, hconcat(y.differential(n + 1).matrix() * beta(n), beta(n - 1)));
  ContractibleFactorization out{z, make_chain_map(x, z, gm), make_chain_map(z, y, hm)};
  if (!chain_maps_equal(compose(out.h, out.g), f)) throw Error("factor_through_contractible: h∘g differs from f");
  return out;
}

}  // namespace subproj
