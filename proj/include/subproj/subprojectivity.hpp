#pragma once

// Subprojectivity of complexes: N ∈ Pr⁻¹(M) when every chain map M -> N
// factors through a projective complex.
//
// Two reductions make the definition decidable. A map that factors through
// some projective lifts along every epimorphism onto N, in particular along
// the fixed projective epi P -> N built below. Liftable maps form a
// submodule of Hom(M, N), so lifting the Hom generators suffices.

#include "subproj/homotopy.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace subproj {

class NotEpi : public Error {
 public:
  using Error::Error;
};

class HypothesisNotMet : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Lifting chain maps

/// h with π∘h ≡ f, solved jointly over all degrees.
inline std::optional<ChainMap> lift_chain_map(const ChainMap& f, const ChainMap& pi) {
  if (!(f.target() == pi.target())) throw DimensionMismatch("lift_chain_map: f and π have different targets");
  const auto& m = f.source();
  const auto& p = pi.source();
  const auto& n = f.target();
  LinearSystem sys(m.ring());
  std::map<int, LinearSystem::Unknown> h;
  for (int k = std::max(m.lo(), p.lo()); k <= std::min(m.hi(), p.hi()); ++k)
    if (m.component(k).generators() > 0 && p.component(k).generators() > 0)
      h.emplace(k, add_morphism_unknown(sys, m.component(k), p.component(k)));
  // d^P_k h_k ≡ h_{k-1} d^M_k
  for (int k = m.lo(); k <= m.hi() + 1; ++k) {
    const auto& pk = p.component(k - 1);
    const std::size_t cols = m.component(k).generators();
    if (pk.generators() == 0 || cols == 0) continue;
    std::vector<LinearSystem::Term> terms;
    if (h.count(k)) terms.push_back({p.differential(k).matrix(), h.at(k), Matrix::identity(cols)});
    if (h.count(k - 1))
      terms.push_back({-Matrix::identity(pk.generators()), h.at(k - 1), m.differential(k).matrix()});
    if (terms.empty()) continue;
    add_congruence(sys, pk, std::move(terms), Matrix(pk.generators(), cols));
  }
  // π_k h_k ≡ f_k
  for (int k = std::max(m.lo(), n.lo()); k <= std::min(m.hi(), n.hi()); ++k) {
    const auto& nk = n.component(k);
    const std::size_t cols = m.component(k).generators();
    if (nk.generators() == 0 || cols == 0) continue;
    std::vector<LinearSystem::Term> terms;
    if (h.count(k)) terms.push_back({pi.component(k).matrix(), h.at(k), Matrix::identity(cols)});
    add_congruence(sys, nk, std::move(terms), f.component(k).matrix());
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::map<int, Matrix> comps;
  for (const auto& [k, u] : h) comps.emplace(k, (*sol)[u]);
  auto out = make_chain_map(m, p, comps);
  if (!chain_maps_equal(compose(pi, out), f)) throw Error("lift_chain_map: lift failed re-verification");
  return out;
}

// ---------------------------------------------------------------------------
// Kernels and pullbacks of chain maps

struct ComplexKernel {
  Complex complex;
  ChainMap inclusion;
};

/// Degreewise kernel with the differential induced through the monos.
inline ComplexKernel kernel(const ChainMap& f) {
  const auto& x = f.source();
  std::vector<KernelResult> ks;
  for (int n = x.lo(); n <= x.hi(); ++n) ks.push_back(kernel(f.component(n)));
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (std::size_t k = 0; k < ks.size(); ++k) {
    mods.push_back(ks[k].module);
    if (k == 0) continue;
    const int n = x.lo() + static_cast<int>(k);
    auto d = lifts_through(compose(x.differential(n), ks[k].inclusion), ks[k - 1].inclusion);
    if (!d) throw Error("kernel: differential does not restrict to the kernel");
    diffs.push_back(*d);
  }
  Complex kc = Complex::assemble(x.ring(), x.lo(), std::move(mods), std::move(diffs));
  std::map<int, ModuleMorphism> inc;
  for (std::size_t k = 0; k < ks.size(); ++k) inc.emplace(x.lo() + static_cast<int>(k), ks[k].inclusion);
  return {kc, ChainMap::assemble(kc, x, std::move(inc))};
}

/// Pullback (D, g′, f′) of g : C -> B and f : A -> B, with g′ : D -> A
/// parallel to g and f′ : D -> C parallel to f, so that g f′ = f g′.
struct PullbackSquare {
  Complex D;
  ChainMap g_prime;  // D -> A
  ChainMap f_prime;  // D -> C
  ChainMap g;
  ChainMap f;
};

inline PullbackSquare pullback(const ChainMap& g, const ChainMap& f) {
  if (!(g.target() == f.target())) throw DimensionMismatch("pullback: maps have different targets");
  const auto& c = g.source();
  const auto& a = f.source();
  // C ⊕ A and the difference map (c, a) ↦ g(c) − f(a)
  auto sum = direct_sum({c, a});
  auto diff = add(compose(g, sum.projections[0]), negate(compose(f, sum.projections[1])));
  auto k = kernel(diff);
  return {k.complex, compose(sum.projections[1], k.inclusion), compose(sum.projections[0], k.inclusion), g, f};
}

/// True when each e_n is surjective.
inline bool is_epi(const ChainMap& e) {
  const auto& t = e.target();
  for (int n = t.lo(); n <= t.hi(); ++n)
    if (!cokernel(e.component(n)).module.is_zero()) return false;
  return true;
}

/// A section k with e∘k ≡ id, or nothing.
inline std::optional<ChainMap> splits(const ChainMap& e) {
  if (!is_epi(e)) throw NotEpi("splits: map is not degreewise surjective");
  return lift_chain_map(identity_chain_map(e.target()), e);
}

// ---------------------------------------------------------------------------
// Canonical projective epi

struct ProjectiveEpi {
  Complex P;
  ChainMap pi;
};

/// P = ⊕_n disc(F_n, n−1) with F_n free on the generators of N_n, so
/// P_k = F_k ⊕ F_{k+1}, d^P_k = [[0, 0], [1, 0]] and π_k = [1 | d^N_{k+1}].
inline ProjectiveEpi canonical_projective_epi(const Complex& n) {
  const Ring& r = n.ring();
  const int lo = n.lo() - 1, hi = n.hi();
  auto rank = [&](int k) { return n.component(k).generators(); };
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (int k = lo; k <= hi; ++k) {
    mods.push_back(PresentedModule::free(r, rank(k) + rank(k + 1)));
    if (k == lo) continue;
    Matrix d(rank(k - 1) + rank(k), rank(k) + rank(k + 1));
    d.set_block(rank(k - 1), 0, Matrix::identity(rank(k)));
    diffs.push_back(make_morphism(mods[static_cast<std::size_t>(k - lo)], mods[static_cast<std::size_t>(k - 1 - lo)], d));
  }
  Complex p = Complex::assemble(r, lo, std::move(mods), std::move(diffs));
  std::map<int, Matrix> pi;
  for (int k = lo; k <= hi; ++k) pi.emplace(k, hconcat(Matrix::identity(rank(k)), n.differential(k + 1).matrix()));
  return {p, make_chain_map(p, n, pi)};
}

// ---------------------------------------------------------------------------
// Decision routes

enum class Route { Definition, HomKVanishing, KernelRoute };

inline std::string to_string(Route r) {
  switch (r) {
    case Route::Definition: return "definition";
    case Route::HomKVanishing: return "homk";
    case Route::KernelRoute: return "kernel";
  }
  return "?";
}

/// Verdict with re-checkable evidence.
///
/// YES/Definition carries one lift per Hom generator. YES on the conditional
/// routes carries a null-homotopy per generator of the relevant chain map
/// group. NO always carries a chain map M -> N that does not lift through the
/// canonical projective epi.
struct SubprojectivityCertificate {
  bool yes = false;
  Route route = Route::Definition;
  std::vector<ChainMap> generators;
  std::vector<ChainMap> lifts;
  std::vector<HomotopyWitness> homotopies;
  std::optional<ChainMap> counterexample;
};

/// N_{n+offset} ∈ Pr⁻¹(M_n) for every n on the padded window of M.
inline bool componentwise_subprojective(const Complex& m, const Complex& n, int offset) {
  for (int k = m.lo() - 1; k <= m.hi() + 1; ++k)
    if (!is_subprojective_module(m.component(k), n.component(k + offset)).yes) return false;
  return true;
}

namespace detail {

/// First chain-map generator that does not lift through π.
inline std::optional<ChainMap> non_lifting_generator(const std::vector<ChainMap>& gens, const ChainMap& pi) {
  for (const auto& f : gens)
    if (!lift_chain_map(f, pi)) return f;
  return std::nullopt;
}

}  // namespace detail

inline SubprojectivityCertificate subprojective_by_definition(const Complex& m, const Complex& n) {
  SubprojectivityCertificate cert;
  cert.route = Route::Definition;
  auto epi = canonical_projective_epi(n);
  cert.generators = chain_maps_group(m, n, 0).generators;
  for (const auto& f : cert.generators) {
    auto h = lift_chain_map(f, epi.pi);
    if (!h) {
      cert.counterexample = f;
      cert.lifts.clear();
      return cert;
    }
    cert.lifts.push_back(*h);
  }
  cert.yes = true;
  return cert;
}

inline SubprojectivityCertificate subprojective_by_homk(const Complex& m, const Complex& n) {
  if (!componentwise_subprojective(m, n, 1))
    throw HypothesisNotMet("N_{n+1} ∈ Pr⁻¹(M_n) fails for some degree n");
  SubprojectivityCertificate cert;
  cert.route = Route::HomKVanishing;
  auto hc = hom_complex(m, n);
  cert.yes = homology(hc.complex, 0).is_zero();
  cert.generators = chain_maps_group(hc, 0).generators;
  if (cert.yes) {
    for (const auto& f : cert.generators) {
      auto w = is_null_homotopic(f);
      if (!w) throw Error("route homk: generator is not null-homotopic although Hom_K vanishes");
      cert.homotopies.push_back(std::move(*w));
    }
  } else {
    cert.counterexample = detail::non_lifting_generator(cert.generators, canonical_projective_epi(n).pi);
    if (!cert.counterexample) throw Error("route homk: Hom_K is nonzero but every generator lifts");
  }
  return cert;
}

inline SubprojectivityCertificate subprojective_by_kernel(const Complex& m, const Complex& n) {
  if (!componentwise_subprojective(m, n, 0)) throw HypothesisNotMet("N_n ∈ Pr⁻¹(M_n) fails for some degree n");
  SubprojectivityCertificate cert;
  cert.route = Route::KernelRoute;
  auto epi = canonical_projective_epi(n);
  auto k = kernel(epi.pi);
  auto hc = hom_complex(shift(m, -1), k.complex);
  cert.yes = homology(hc.complex, 0).is_zero();
  if (cert.yes) {
    for (const auto& f : chain_maps_group(hc, 0).generators) {
      auto w = is_null_homotopic(f);
      if (!w) throw Error("route kernel: generator is not null-homotopic although Hom_K vanishes");
      cert.homotopies.push_back(std::move(*w));
    }
  } else {
    cert.generators = chain_maps_group(m, n, 0).generators;
    cert.counterexample = detail::non_lifting_generator(cert.generators, epi.pi);
    if (!cert.counterexample) throw Error("route kernel: Hom_K into the kernel is nonzero but every generator lifts");
  }
  return cert;
}

inline SubprojectivityCertificate is_subprojective_complex(const Complex& m, const Complex& n, Route route) {
  if (!(m.ring() == n.ring())) throw Error("is_subprojective_complex: ring mismatch");
  switch (route) {
    case Route::Definition: return subprojective_by_definition(m, n);
    case Route::HomKVanishing: return subprojective_by_homk(m, n);
    case Route::KernelRoute: return subprojective_by_kernel(m, n);
  }
  throw Error("unknown route");
}

/// Re-checks a certificate against M and N.
inline bool verify_certificate(const SubprojectivityCertificate& cert, const Complex& m, const Complex& n) {
  auto epi = canonical_projective_epi(n);
  if (!cert.yes) {
    if (!cert.counterexample) return false;
    const auto& f = *cert.counterexample;
    return f.source() == m && f.target() == n && !lift_chain_map(f, epi.pi);
  }
  if (cert.route == Route::Definition) {
    auto gens = chain_maps_group(m, n, 0).generators;
    if (gens.size() != cert.lifts.size()) return false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!(cert.lifts[i].target() == epi.P) || !chain_maps_equal(compose(epi.pi, cert.lifts[i]), gens[i])) return false;
    return true;
  }
  std::vector<ChainMap> gens = cert.route == Route::HomKVanishing
                                   ? chain_maps_group(m, n, 0).generators
                                   : chain_maps_group(shift(m, -1), kernel(epi.pi).complex, 0).generators;
  if (gens.size() != cert.homotopies.size()) return false;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!verify_homotopy(gens[i], cert.homotopies[i])) return false;
  return true;
}

struct ShiftReport {
  int shift;
  bool hom_k_zero;
  bool definition_yes;
};

struct AllShiftsReport {
  bool yes = false;
  bool componentwise = false;  // N_j ∈ Pr⁻¹(M_i) for all i, j
  std::vector<ShiftReport> shifts;
};

/// N ∈ Pr⁻¹(M[n]) for every n, decided as: every component pair is
/// subprojective and Hom_K(M[n], N) = 0 for every n. Shifts outside
/// [loN − hiM − 1, hiN − loM + 1] have disjoint support.
inline AllShiftsReport subprojective_wrt_all_shifts(const Complex& m, const Complex& n, bool with_definition = true) {
  AllShiftsReport rep;
  rep.componentwise = true;
  for (int i = m.lo(); i <= m.hi() && rep.componentwise; ++i)
    for (int j = n.lo(); j <= n.hi(); ++j)
      if (!is_subprojective_module(m.component(i), n.component(j)).yes) {
        rep.componentwise = false;
        break;
      }
  bool homk = true;
  for (int s = n.lo() - m.hi() - 1; s <= n.hi() - m.lo() + 1; ++s) {
    auto ms = shift(m, s);
    ShiftReport sr{s, hom_K(ms, n, 0).is_zero(), false};
    if (with_definition) sr.definition_yes = subprojective_by_definition(ms, n).yes;
    homk = homk && sr.hom_k_zero;
    rep.shifts.push_back(sr);
  }
  rep.yes = rep.componentwise && homk;
  return rep;
}

}  // namespace subproj
