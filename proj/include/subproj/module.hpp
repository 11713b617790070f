#pragma once

// Finitely presented modules over Z and Z/m and their morphisms.
//
// A module is coker(A: R^k -> R^g) with relations stored as the columns of
// the g x k matrix A. A morphism M -> N is a generator-level matrix F together
// with a witness X satisfying F*A_M = A_N*X exactly.

#include "subproj/exact_linalg.hpp"
#include "subproj/linear_system.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace subproj {

class IllDefined : public Error {
 public:
  using Error::Error;
};

class PresentedModule {
 public:
  PresentedModule(Ring ring, std::size_t generators, Matrix relations)
      : ring_(ring), generators_(generators), relations_(ring.reduce(relations)) {
    if (relations_.rows() != generators_)
      throw DimensionMismatch("relation matrix has " + std::to_string(relations_.rows()) + " rows for " +
                              std::to_string(generators_) + " generators");
  }

  static PresentedModule zero(Ring ring) { return {ring, 0, Matrix(0, 0)}; }
  static PresentedModule free(Ring ring, std::size_t rank) { return {ring, rank, Matrix(rank, 0)}; }
  /// R/(n), one generator.
  static PresentedModule cyclic(Ring ring, const Integer& n) { return {ring, 1, Matrix{{0}} + n * Matrix{{1}}}; }

  const Ring& ring() const { return ring_; }
  std::size_t generators() const { return generators_; }
  const Matrix& relations() const { return relations_; }

  ModuleInvariants invariants() const { return cokernel_invariants(relations_, ring_); }

  /// True iff the module is zero (every generator is killed by the relations).
  bool is_zero() const {
    if (generators_ == 0) return true;
    return solve_right(relations_, Matrix::identity(generators_), ring_).has_value();
  }

  /// Structural equality of presentations.
  friend bool operator==(const PresentedModule& a, const PresentedModule& b) {
    return a.ring_ == b.ring_ && a.generators_ == b.generators_ && a.relations_ == b.relations_;
  }

 private:
  Ring ring_;
  std::size_t generators_;
  Matrix relations_;
};

inline bool is_isomorphic(const PresentedModule& a, const PresentedModule& b) {
  return a.ring() == b.ring() && a.invariants() == b.invariants();
}

/// Order of a module over a finite ring (product of the invariant factors).
inline Integer module_order(const PresentedModule& m) {
  if (!m.ring().is_finite()) throw Error("module_order needs a finite ring");
  Integer order = 1;
  for (const auto& f : m.invariants().factors) order *= f;
  return order;
}

class ModuleMorphism {
 public:
  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& witness() const { return witness_; }

  /// Re-checks F*A_M = A_N*X.
  bool verify() const {
    const Ring& r = source_.ring();
    return r.reduce(matrix_ * source_.relations()) == r.reduce(target_.relations() * witness_);
  }

 private:
  friend ModuleMorphism make_morphism(const PresentedModule&, const PresentedModule&, const Matrix&);
  friend ModuleMorphism morphism_with_witness(const PresentedModule&, const PresentedModule&, const Matrix&,
                                              const Matrix&);

  ModuleMorphism(PresentedModule s, PresentedModule t, Matrix f, Matrix w)
      : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(f)), witness_(std::move(w)) {}

  PresentedModule source_;
  PresentedModule target_;
  Matrix matrix_;
  Matrix witness_;
};

/// Validates F: M -> N by finding X with F*A_M = A_N*X.
inline ModuleMorphism make_morphism(const PresentedModule& m, const PresentedModule& n, const Matrix& f) {
  if (!(m.ring() == n.ring())) throw Error("make_morphism: ring mismatch");
  if (f.rows() != n.generators() || f.cols() != m.generators())
    throw DimensionMismatch("morphism matrix " + f.shape() + " for " + std::to_string(m.generators()) + " -> " +
                            std::to_string(n.generators()) + " generators");
  const Ring& r = m.ring();
  Matrix fr = r.reduce(f);
  auto w = solve_right(n.relations(), r.reduce(fr * m.relations()), r);
  if (!w) throw IllDefined("matrix does not send relations into relations");
  return ModuleMorphism(m, n, std::move(fr), std::move(*w));
}

/// Builds a morphism from a known witness; the identity is re-checked.
inline ModuleMorphism morphism_with_witness(const PresentedModule& m, const PresentedModule& n, const Matrix& f,
                                            const Matrix& w) {
  const Ring& r = m.ring();
  ModuleMorphism out(m, n, r.reduce(f), r.reduce(w));
  if (f.rows() != n.generators() || f.cols() != m.generators() || !out.verify())
    throw IllDefined("witness does not certify the morphism");
  return out;
}

inline ModuleMorphism identity_morphism(const PresentedModule& m) {
  return morphism_with_witness(m, m, Matrix::identity(m.generators()),
                               Matrix::identity(m.relations().cols()));
}

inline ModuleMorphism zero_morphism(const PresentedModule& m, const PresentedModule& n) {
  return morphism_with_witness(m, n, Matrix(n.generators(), m.generators()),
                               Matrix(n.relations().cols(), m.relations().cols()));
}

/// g∘f
inline ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f is not the source of g");
  return morphism_with_witness(f.source(), g.target(), g.matrix() * f.matrix(), g.witness() * f.witness());
}

inline ModuleMorphism add(const ModuleMorphism& a, const ModuleMorphism& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DimensionMismatch("add: morphisms between different modules");
  return morphism_with_witness(a.source(), a.target(), a.matrix() + b.matrix(), a.witness() + b.witness());
}

inline ModuleMorphism scale(const Integer& c, const ModuleMorphism& a) {
  return morphism_with_witness(a.source(), a.target(), c * a.matrix(), c * a.witness());
}

inline ModuleMorphism negate(const ModuleMorphism& a) { return scale(Integer(-1), a); }

/// Equality in Hom: F - F' = A_N*Y is solvable.
inline bool morphisms_equal(const ModuleMorphism& a, const ModuleMorphism& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DimensionMismatch("morphisms_equal: different source or target");
  const Ring& r = a.source().ring();
  Matrix diff = r.reduce(a.matrix() - b.matrix());
  if (diff.is_zero()) return true;
  return solve_right(a.target().relations(), diff, r).has_value();
}

inline bool is_zero_morphism(const ModuleMorphism& a) {
  return morphisms_equal(a, zero_morphism(a.source(), a.target()));
}

// ---------------------------------------------------------------------------
// Subquotients and presentation trimming

/// Presentation of (im G + im Z) / im Z inside an ambient free module.
///
/// `generators` holds the surviving columns of G (ambient coordinates);
/// `reduction` maps coordinates over the original columns of G to
/// coordinates over the survivors.
struct Subquotient {
  Matrix generators;
  Matrix relations;
  Matrix reduction;
  std::vector<std::size_t> kept;
};

namespace detail {

inline Integer unit_inverse(const Integer& u, const Ring& ring) {
  if (ring.is_integers()) return u;  // ±1
  std::int64_t s, t;
  std::int64_t a = to_residue(u, ring.modulus());
  xgcd(a, ring.modulus(), s, t);
  return ring.reduce(Integer(s));
}

/// Eliminates generators that a relation with a unit coefficient expresses
/// through the others. Zero relation columns are dropped.
inline void trim_presentation(Matrix& relations, Matrix& reduction, std::vector<std::size_t>& kept,
                              const Ring& ring) {
  while (true) {
    std::size_t pr = relations.rows(), pc = relations.cols();
    bool found = false;
    for (std::size_t c = 0; c < relations.cols() && !found; ++c)
      for (std::size_t i = 0; i < relations.rows(); ++i)
        if (relations(i, c) != 0 && ring.is_unit(relations(i, c))) {
          pr = i;
          pc = c;
          found = true;
          break;
        }
    if (!found) break;
    const Integer inv = unit_inverse(relations(pr, pc), ring);
    // generator pr = -inv * Σ_{j≠pr} relations(j, pc) * generator j
    Matrix a = relations;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c == pc || a(pr, c) == 0) continue;
      Integer f = a(pr, c) * inv;
      for (std::size_t j = 0; j < a.rows(); ++j) a(j, c) -= f * relations(j, pc);
    }
    Matrix red = reduction;
    for (std::size_t j = 0; j < red.rows(); ++j) {
      if (j == pr || relations(j, pc) == 0) continue;
      Integer f = relations(j, pc) * inv;
      for (std::size_t c = 0; c < red.cols(); ++c) red(j, c) -= f * reduction(pr, c);
    }
    Matrix na(a.rows() - 1, a.cols() - 1);
    for (std::size_t i = 0, ii = 0; i < a.rows(); ++i) {
      if (i == pr) continue;
      for (std::size_t c = 0, cc = 0; c < a.cols(); ++c) {
        if (c == pc) continue;
        na(ii, cc++) = a(i, c);
      }
      ++ii;
    }
    Matrix nr(red.rows() - 1, red.cols());
    for (std::size_t i = 0, ii = 0; i < red.rows(); ++i) {
      if (i == pr) continue;
      for (std::size_t c = 0; c < red.cols(); ++c) nr(ii, c) = red(i, c);
      ++ii;
    }
    relations = ring.reduce(na);
    reduction = ring.reduce(nr);
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pr));
  }
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < relations.cols(); ++c) {
    bool any = false;
    for (std::size_t i = 0; i < relations.rows(); ++i) any = any || relations(i, c) != 0;
    if (any) nonzero.push_back(c);
  }
  if (nonzero.size() != relations.cols()) relations = relations.select_columns(nonzero);
}

}  // namespace detail

inline Subquotient subquotient(const Matrix& gens, const Matrix& zero, const Ring& ring) {
  if (gens.rows() != zero.rows()) throw DimensionMismatch("subquotient: ambient mismatch");
  const std::size_t t = gens.cols();
  Matrix k = kernel_basis(ring.reduce(hconcat(gens, zero)), ring);
  Subquotient out;
  out.relations = k.row_range(0, t);
  out.reduction = Matrix::identity(t);
  out.kept.resize(t);
  for (std::size_t i = 0; i < t; ++i) out.kept[i] = i;
  detail::trim_presentation(out.relations, out.reduction, out.kept, ring);
  out.generators = ring.reduce(gens.select_columns(out.kept));
  return out;
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels

struct KernelResult {
  PresentedModule module;
  ModuleMorphism inclusion;
};

struct CokernelResult {
  PresentedModule module;
  ModuleMorphism projection;
};

struct ImageResult {
  PresentedModule module;
  ModuleMorphism inclusion;      // Im f -> target
  ModuleMorphism corestriction;  // source -> Im f
};

/// Ker f with its monomorphism into the source.
inline KernelResult kernel(const ModuleMorphism& f) {
  const Ring& r = f.source().ring();
  const std::size_t g = f.source().generators();
  // x with F x ∈ im A_N
  Matrix k = kernel_basis(hconcat(f.matrix(), f.target().relations()), r).row_range(0, g);
  auto sq = subquotient(k, f.source().relations(), r);
  PresentedModule km(r, sq.generators.cols(), sq.relations);
  return {km, make_morphism(km, f.source(), sq.generators)};
}

/// coker f, presented by the target relations augmented with the columns of F.
inline CokernelResult cokernel(const ModuleMorphism& f) {
  const Ring& r = f.source().ring();
  PresentedModule c(r, f.target().generators(), hconcat(f.target().relations(), f.matrix()));
  return {c, make_morphism(f.target(), c, Matrix::identity(f.target().generators()))};
}

inline ImageResult image(const ModuleMorphism& f) {
  const Ring& r = f.source().ring();
  auto sq = subquotient(f.matrix(), f.target().relations(), r);
  PresentedModule im(r, sq.generators.cols(), sq.relations);
  return {im, make_morphism(im, f.target(), sq.generators), make_morphism(f.source(), im, sq.reduction)};
}

// ---------------------------------------------------------------------------
// Direct sums

struct ModuleSum {
  PresentedModule module;
  std::vector<ModuleMorphism> injections;
  std::vector<ModuleMorphism> projections;
};

inline PresentedModule direct_sum_module(const std::vector<PresentedModule>& parts, const Ring& ring) {
  std::size_t g = 0;
  std::vector<Matrix> rel;
  for (const auto& p : parts) {
    g += p.generators();
    rel.push_back(p.relations());
  }
  return {ring, g, block_diagonal(rel)};
}

inline ModuleSum direct_sum(const std::vector<PresentedModule>& parts, const Ring& ring) {
  PresentedModule sum = direct_sum_module(parts, ring);
  ModuleSum out{sum, {}, {}};
  std::size_t g0 = 0, k0 = 0;
  for (const auto& p : parts) {
    Matrix inj(sum.generators(), p.generators()), injw(sum.relations().cols(), p.relations().cols());
    inj.set_block(g0, 0, Matrix::identity(p.generators()));
    injw.set_block(k0, 0, Matrix::identity(p.relations().cols()));
    out.injections.push_back(morphism_with_witness(p, sum, inj, injw));
    out.projections.push_back(morphism_with_witness(sum, p, inj.transpose(), injw.transpose()));
    g0 += p.generators();
    k0 += p.relations().cols();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hom modules

/// Hom_R(M, N) as a presented module with one morphism per generator.
///
/// The generator matrices are stored column-major (vec F) in `span`; `zero`
/// spans the maps {A_N Y} that are zero in Hom. coordinates() expresses any
/// morphism M -> N through the generators.
struct HomModule {
  PresentedModule source;
  PresentedModule target;
  PresentedModule module;
  std::vector<ModuleMorphism> generators;
  Matrix span;
  Matrix zero;

  /// Coefficient columns c_j with Σ_j c_j gen_j ≡ F_j, one per input matrix.
  Matrix coordinates(const std::vector<Matrix>& maps) const {
    const Ring& r = source.ring();
    const std::size_t dim = target.generators() * source.generators();
    Matrix rhs(dim, maps.size());
    for (std::size_t j = 0; j < maps.size(); ++j) rhs.set_block(0, j, vec(maps[j]));
    auto x = solve_right(hconcat(span, zero), rhs, r);
    if (!x) throw IllDefined("map is not a morphism between the Hom module's modules");
    return x->row_range(0, span.cols());
  }
};

inline HomModule hom_module(const PresentedModule& m, const PresentedModule& n) {
  if (!(m.ring() == n.ring())) throw Error("hom_module: ring mismatch");
  const Ring& r = m.ring();
  const std::size_t gm = m.generators(), gn = n.generators(), km = m.relations().cols();
  const std::size_t dim = gn * gm;
  // (vec F, vec W) with F A_M - A_N W = 0
  Matrix c = hconcat(kron(m.relations().transpose(), Matrix::identity(gn)),
                     -kron(Matrix::identity(km), n.relations()));
  Matrix k = kernel_basis(r.reduce(c), r);
  Matrix spanning = k.row_range(0, dim);
  Matrix witnesses = k.row_range(dim, k.rows());
  Matrix zero = kron(Matrix::identity(gm), n.relations());
  auto sq = subquotient(spanning, zero, r);
  PresentedModule hom(r, sq.generators.cols(), sq.relations);
  std::vector<ModuleMorphism> gens;
  for (std::size_t j = 0; j < sq.kept.size(); ++j) {
    Matrix f = unvec(spanning, 0, gn, gm, sq.kept[j]);
    Matrix w = unvec(witnesses, 0, n.relations().cols(), km, sq.kept[j]);
    gens.push_back(morphism_with_witness(m, n, f, w));
  }
  return {m, n, hom, std::move(gens), sq.generators, r.reduce(zero)};
}

// ---------------------------------------------------------------------------
// Lifting and module-level subprojectivity

/// Adds an unknown morphism S: src -> tgt (with its well-definedness witness)
/// and returns the handle of S.
inline LinearSystem::Unknown add_morphism_unknown(LinearSystem& sys, const PresentedModule& src,
                                                  const PresentedModule& tgt) {
  auto s = sys.add_unknown(tgt.generators(), src.generators());
  if (src.relations().cols() > 0) {
    auto w = sys.add_unknown(tgt.relations().cols(), src.relations().cols());
    sys.add_equation({{Matrix::identity(tgt.generators()), s, src.relations()},
                      {-tgt.relations(), w, Matrix::identity(src.relations().cols())}},
                     Matrix(tgt.generators(), src.relations().cols()));
  }
  return s;
}

/// Adds  Σ terms ≡ rhs  modulo the relations of `tgt`.
inline void add_congruence(LinearSystem& sys, const PresentedModule& tgt, std::vector<LinearSystem::Term> terms,
                           const Matrix& rhs) {
  if (tgt.relations().cols() > 0) {
    auto y = sys.add_unknown(tgt.relations().cols(), rhs.cols());
    terms.push_back({-tgt.relations(), y, Matrix::identity(rhs.cols())});
  }
  if (terms.empty()) {
    terms.push_back({Matrix(rhs.rows(), 0), sys.add_unknown(0, 0), Matrix(0, rhs.cols())});
  }
  sys.add_equation(std::move(terms), rhs);
}

struct FreeCover {
  PresentedModule free;
  ModuleMorphism epi;
};

inline FreeCover free_cover(const PresentedModule& n) {
  PresentedModule f = PresentedModule::free(n.ring(), n.generators());
  return {f, morphism_with_witness(f, n, Matrix::identity(n.generators()), Matrix(n.relations().cols(), 0))};
}

/// h with π∘h ≡ f, or nothing when f does not lift through π.
inline std::optional<ModuleMorphism> lifts_through(const ModuleMorphism& f, const ModuleMorphism& pi) {
  if (!(f.target() == pi.target())) throw DimensionMismatch("lifts_through: f and π have different targets");
  LinearSystem sys(f.source().ring());
  auto h = add_morphism_unknown(sys, f.source(), pi.source());
  add_congruence(sys, f.target(), {{pi.matrix(), h, Matrix::identity(f.source().generators())}}, f.matrix());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return make_morphism(f.source(), pi.source(), (*sol)[h]);
}

struct ModuleSubprojectivity {
  bool yes = false;
  std::vector<ModuleMorphism> generators;
  std::vector<ModuleMorphism> lifts;              // one per generator when yes
  std::optional<ModuleMorphism> counterexample;   // a non-lifting generator when no
};

/// Decides N ∈ Pr⁻¹(M): every morphism M -> N factors through a projective.
///
/// A morphism factoring through any projective lifts along the free cover of
/// N, and liftable morphisms form a submodule of Hom(M, N), so it suffices to
/// lift each Hom generator through the free cover.
inline ModuleSubprojectivity is_subprojective_module(const PresentedModule& m, const PresentedModule& n) {
  ModuleSubprojectivity out;
  auto hom = hom_module(m, n);
  auto cover = free_cover(n);
  out.generators = hom.generators;
  for (const auto& f : hom.generators) {
    auto h = lifts_through(f, cover.epi);
    if (!h) {
      out.counterexample = f;
      out.lifts.clear();
      return out;
    }
    out.lifts.push_back(*h);
  }
  out.yes = true;
  return out;
}

}  // namespace subproj
