#pragma once

// Exhaustive oracles over small finite rings. Nothing here calls the exact
// solvers: module elements, morphisms, chain maps and homotopies are
// enumerated outright and compared through canonical coset representatives.

#include "subproj/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace subproj::oracle {

class SearchSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

constexpr std::uint64_t kDefaultLimit = std::uint64_t{1} << 24;

using Vec = std::vector<std::int64_t>;

/// Small dense residue matrix, row-major.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Vec column(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  friend bool operator<(const Mat& x, const Mat& y) { return x.a < y.a; }
  friend bool operator==(const Mat& x, const Mat& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
};

inline Mat to_mat(const Matrix& m, std::int64_t mod) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer r = m(i, j) % mod;
      if (r < 0) r += mod;
      out(i, j) = static_cast<std::int64_t>(r);
    }
  return out;
}

inline Matrix to_matrix(const Mat& m) {
  Matrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

inline Mat mul(const Mat& x, const Mat& y, std::int64_t mod) {
  Mat out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      std::int64_t v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out(i, j) = (out(i, j) + v * y(k, j)) % mod;
    }
  return out;
}

inline Mat plus(const Mat& x, const Mat& y, std::int64_t mod) {
  Mat out = x;
  for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] = (out.a[k] + y.a[k]) % mod;
  return out;
}

inline std::uint64_t saturating_pow(std::int64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= static_cast<std::uint64_t>(base);
    if (r > cap) return cap + 1;
  }
  return r;
}

/// Calls visit for every vector of (Z/m)^n.
template <class F>
void for_each_vector(std::size_t n, std::int64_t m, F&& visit) {
  Vec v(n, 0);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == m) v[i++] = 0;
    if (i == n) return;
  }
}

/// (Z/m)^g modulo the column span of the relations.
class Quotient {
 public:
  Quotient(const PresentedModule& m, std::int64_t mod) : g_(m.generators()), mod_(mod) {
    Mat rel = to_mat(m.relations(), mod);
    std::set<Vec> span;
    for_each_vector(rel.cols, mod, [&](const Vec& c) {
      Vec v(g_, 0);
      for (std::size_t j = 0; j < rel.cols; ++j)
        for (std::size_t i = 0; i < g_; ++i) v[i] = (v[i] + rel(i, j) * c[j]) % mod;
      span.insert(v);
    });
    span_.assign(span.begin(), span.end());
  }

  std::size_t generators() const { return g_; }
  bool contains_zero_class(const Vec& x) const { return std::binary_search(span_.begin(), span_.end(), x); }

  /// Lexicographically least member of x + span.
  Vec canonical(const Vec& x) const {
    Vec best;
    for (const auto& y : span_) {
      Vec z(g_);
      for (std::size_t i = 0; i < g_; ++i) z[i] = (x[i] + y[i]) % mod_;
      if (best.empty() || z < best) best = std::move(z);
    }
    return best;
  }

  std::size_t order() const {
    std::set<Vec> reps;
    for_each_vector(g_, mod_, [&](const Vec& x) { reps.insert(canonical(x)); });
    return reps.size();
  }

  Mat canonical_columns(const Mat& f) const {
    Mat out = f;
    for (std::size_t j = 0; j < f.cols; ++j) {
      Vec c = canonical(f.column(j));
      for (std::size_t i = 0; i < f.rows; ++i) out(i, j) = c[i];
    }
    return out;
  }

 private:
  std::size_t g_;
  std::int64_t mod_;
  std::vector<Vec> span_;
};

/// Residue data of one complex, cached per degree.
class ComplexView {
 public:
  explicit ComplexView(const Complex& x) : x_(x), mod_(x.ring().modulus()) {
    if (!x.ring().is_finite()) throw Error("brute force needs a finite ring");
  }
  const Complex& complex() const { return x_; }
  std::int64_t mod() const { return mod_; }
  std::size_t gens(int n) const { return x_.component(n).generators(); }
  const Quotient& quotient(int n) {
    auto it = quotients_.find(n);
    if (it == quotients_.end()) it = quotients_.emplace(n, Quotient(x_.component(n), mod_)).first;
    return it->second;
  }
  const Mat& relations(int n) {
    auto it = relations_.find(n);
    if (it == relations_.end()) it = relations_.emplace(n, to_mat(x_.component(n).relations(), mod_)).first;
    return it->second;
  }
  const Mat& d(int n) {
    auto it = diffs_.find(n);
    if (it == diffs_.end()) it = diffs_.emplace(n, to_mat(x_.differential(n).matrix(), mod_)).first;
    return it->second;
  }

 private:
  Complex x_;
  std::int64_t mod_;
  std::map<int, Quotient> quotients_;
  std::map<int, Mat> relations_;
  std::map<int, Mat> diffs_;
};

/// All well-defined maps (Z/m)^{gs}/A_s -> target, one canonical matrix per class.
inline std::vector<Mat> module_maps(std::size_t source_gens, const Mat& source_rel, const Quotient& target,
                                    std::int64_t mod, std::uint64_t limit) {
  const std::size_t tg = target.generators();
  const std::size_t cells = tg * source_gens;
  if (saturating_pow(mod, cells, limit) > limit) throw SearchSpaceTooLarge("module map search space too large");
  std::set<Mat> out;
  for_each_vector(cells, mod, [&](const Vec& v) {
    Mat f(tg, source_gens);
    f.a = v;
    Mat img = mul(f, source_rel, mod);
    for (std::size_t j = 0; j < img.cols; ++j)
      if (!target.contains_zero_class(img.column(j))) return;
    out.insert(target.canonical_columns(f));
  });
  return {out.begin(), out.end()};
}

using FamilyKey = std::vector<std::int64_t>;

/// Canonical key of a degreewise family over [lo, hi], each entry reduced in
/// the target quotient of its degree.
inline FamilyKey family_key(const std::vector<Mat>& family) {
  FamilyKey k;
  for (const auto& m : family) {
    k.push_back(static_cast<std::int64_t>(m.a.size()));
    k.insert(k.end(), m.a.begin(), m.a.end());
  }
  return k;
}

/// Exhaustive set of chain maps X -> Y on the overlap [lo, hi].
struct ChainMapEnumeration {
  int lo = 0, hi = -1;
  std::vector<std::vector<Mat>> families;  // canonical, distinct
};

inline ChainMapEnumeration enumerate_chain_map_families(ComplexView& x, ComplexView& y,
                                                        std::uint64_t limit = kDefaultLimit) {
  const std::int64_t mod = x.mod();
  ChainMapEnumeration out;
  out.lo = std::max(x.complex().lo(), y.complex().lo());
  out.hi = std::min(x.complex().hi(), y.complex().hi());
  if (out.lo > out.hi) {
    out.families.push_back({});
    return out;
  }
  std::uint64_t raw = 1;
  for (int n = out.lo; n <= out.hi; ++n) {
    raw *= saturating_pow(mod, x.gens(n) * y.gens(n), limit);
    if (raw > limit) throw SearchSpaceTooLarge("chain map search space exceeds the limit");
  }
  std::vector<std::vector<Mat>> choices;
  for (int n = out.lo; n <= out.hi; ++n)
    choices.push_back(module_maps(x.gens(n), x.relations(n), y.quotient(n), mod, limit));
  std::vector<Mat> current;
  // square at degree n: d^Y_n f_n ≡ f_{n-1} d^X_n in Y_{n-1}
  auto square_ok = [&](int n, const Mat* fn, const Mat* fprev) {
    const std::size_t rows = y.gens(n - 1), cols = x.gens(n);
    if (rows == 0 || cols == 0) return true;
    Mat lhs = fn ? mul(y.d(n), *fn, mod) : Mat(rows, cols);
    Mat rhs = fprev ? mul(*fprev, x.d(n), mod) : Mat(rows, cols);
    const auto& q = y.quotient(n - 1);
    for (std::size_t j = 0; j < cols; ++j) {
      Vec diff(rows);
      for (std::size_t i = 0; i < rows; ++i) diff[i] = ((lhs(i, j) - rhs(i, j)) % mod + mod) % mod;
      if (!q.contains_zero_class(diff)) return false;
    }
    return true;
  };
  std::function<void(int)> walk = [&](int n) {
    if (n > out.hi) {
      if (square_ok(out.hi + 1, nullptr, &current.back())) out.families.push_back(current);
      return;
    }
    for (const auto& f : choices[static_cast<std::size_t>(n - out.lo)]) {
      const Mat* prev = current.empty() ? nullptr : &current.back();
      if (!square_ok(n, &f, prev)) continue;
      current.push_back(f);
      walk(n + 1);
      current.pop_back();
    }
  };
  walk(out.lo);
  return out;
}

/// Chain maps X -> Y, materialized.
inline std::vector<ChainMap> enumerate_chain_maps(const Complex& x, const Complex& y,
                                                  std::uint64_t limit = kDefaultLimit) {
  ComplexView xv(x), yv(y);
  auto e = enumerate_chain_map_families(xv, yv, limit);
  std::vector<ChainMap> out;
  for (const auto& fam : e.families) {
    std::map<int, Matrix> comps;
    for (std::size_t k = 0; k < fam.size(); ++k) comps.emplace(e.lo + static_cast<int>(k), to_matrix(fam[k]));
    out.push_back(make_chain_map(x, y, comps));
  }
  return out;
}

/// Canonical key of a chain map on the overlap window of X and Y.
inline FamilyKey chain_map_key(ComplexView& y, int lo, int hi, const std::map<int, Mat>& comps, std::int64_t mod) {
  std::vector<Mat> fam;
  for (int n = lo; n <= hi; ++n) {
    auto it = comps.find(n);
    fam.push_back(y.quotient(n).canonical_columns(it->second));
  }
  (void)mod;
  return family_key(fam);
}

inline FamilyKey chain_map_key(ComplexView& y, const ChainMap& f) {
  const int lo = std::max(f.source().lo(), f.target().lo()), hi = std::min(f.source().hi(), f.target().hi());
  std::map<int, Mat> comps;
  for (int n = lo; n <= hi; ++n) comps.emplace(n, to_mat(f.component(n).matrix(), y.mod()));
  return chain_map_key(y, lo, hi, comps, y.mod());
}

/// Every family {t_n : X_n -> T_{n+1}} of well-defined module maps, passed
/// to visit as a map keyed by n over [lo, hi].
template <class F>
void for_each_degree_family(ComplexView& x, int lo, int hi, const std::function<std::size_t(int)>& target_gens,
                            const std::function<const Mat&(int)>& target_rel_unused,
                            const std::function<const Quotient&(int)>& target_quotient, std::uint64_t limit,
                            F&& visit) {
  (void)target_rel_unused;
  const std::int64_t mod = x.mod();
  std::uint64_t raw = 1;
  std::vector<std::vector<Mat>> choices;
  for (int n = lo; n <= hi; ++n) {
    raw *= saturating_pow(mod, x.gens(n) * target_gens(n), limit);
    if (raw > limit) throw SearchSpaceTooLarge("homotopy search space exceeds the limit");
  }
  for (int n = lo; n <= hi; ++n) choices.push_back(module_maps(x.gens(n), x.relations(n), target_quotient(n), mod, limit));
  std::map<int, Mat> current;
  std::function<void(int)> walk = [&](int n) {
    if (n > hi) {
      visit(current);
      return;
    }
    for (const auto& t : choices[static_cast<std::size_t>(n - lo)]) {
      current[n] = t;
      walk(n + 1);
    }
    current.erase(n);
  };
  walk(lo);
}

/// Keys of all null-homotopic chain maps X -> Y: d^Y s + s d^X over every s.
inline std::set<FamilyKey> null_homotopic_keys(ComplexView& x, ComplexView& y, std::uint64_t limit = kDefaultLimit) {
  const std::int64_t mod = x.mod();
  const int lo = std::max(x.complex().lo(), y.complex().lo()), hi = std::min(x.complex().hi(), y.complex().hi());
  const int slo = std::max(x.complex().lo(), y.complex().lo() - 1), shi = std::min(x.complex().hi(), y.complex().hi() - 1);
  std::set<FamilyKey> out;
  auto build = [&](const std::map<int, Mat>& s) {
    std::map<int, Mat> f;
    for (int n = lo; n <= hi; ++n) {
      Mat v(y.gens(n), x.gens(n));
      auto a = s.find(n);
      if (a != s.end() && v.rows && v.cols) v = plus(v, mul(y.d(n + 1), a->second, mod), mod);
      auto b = s.find(n - 1);
      if (b != s.end() && v.rows && v.cols) v = plus(v, mul(b->second, x.d(n), mod), mod);
      f.emplace(n, v);
    }
    out.insert(chain_map_key(y, lo, hi, f, mod));
  };
  if (slo > shi || lo > hi) {
    build({});
    return out;
  }
  for_each_degree_family(
      x, slo, shi, [&](int n) { return y.gens(n + 1); }, [&](int n) -> const Mat& { return y.relations(n + 1); },
      [&](int n) -> const Quotient& { return y.quotient(n + 1); }, limit, build);
  return out;
}

inline bool brute_force_null_homotopic(const ChainMap& f, std::uint64_t limit = kDefaultLimit) {
  ComplexView x(f.source()), y(f.target());
  return null_homotopic_keys(x, y, limit).count(chain_map_key(y, f)) == 1;
}

/// Keys of all chain maps M -> N that lift through a projective epi.
///
/// Chain maps M -> disc(F, k) with F free correspond to module maps
/// M_{k+1} -> F, so chain maps into the projective complex
/// ⊕_k disc(F_{k+1}, k) (F_{k+1} free on the generators of N_{k+1}) are
/// families a_k : M_k -> F_{k+1}; composed with the cover they give
/// f_k = a_{k-1} d^M_k + d^N_{k+1} a_k.
inline std::set<FamilyKey> liftable_keys(ComplexView& m, ComplexView& n, std::uint64_t limit = kDefaultLimit) {
  const std::int64_t mod = m.mod();
  const int lo = std::max(m.complex().lo(), n.complex().lo()), hi = std::min(m.complex().hi(), n.complex().hi());
  const int alo = std::max(m.complex().lo(), n.complex().lo() - 1), ahi = std::min(m.complex().hi(), n.complex().hi() - 1);
  std::map<int, Quotient> free_targets;
  std::map<int, Mat> no_rel;
  for (int k = alo; k <= ahi; ++k) {
    free_targets.emplace(k, Quotient(PresentedModule::free(m.complex().ring(), n.gens(k + 1)), mod));
    no_rel.emplace(k, Mat(n.gens(k + 1), 0));
  }
  std::set<FamilyKey> out;
  auto build = [&](const std::map<int, Mat>& a) {
    std::map<int, Mat> f;
    for (int k = lo; k <= hi; ++k) {
      Mat v(n.gens(k), m.gens(k));
      auto here = a.find(k);
      if (here != a.end() && v.rows && v.cols) v = plus(v, mul(n.d(k + 1), here->second, mod), mod);
      auto prev = a.find(k - 1);
      if (prev != a.end() && v.rows && v.cols) v = plus(v, mul(prev->second, m.d(k), mod), mod);
      f.emplace(k, v);
    }
    out.insert(chain_map_key(n, lo, hi, f, mod));
  };
  if (alo > ahi || lo > hi) {
    build({});
    return out;
  }
  for_each_degree_family(
      m, alo, ahi, [&](int k) { return n.gens(k + 1); }, [&](int k) -> const Mat& { return no_rel.at(k); },
      [&](int k) -> const Quotient& { return free_targets.at(k); }, limit, build);
  return out;
}

/// Exhaustive answers for one pair of complexes.
struct PairOracle {
  std::size_t chain_maps = 0;       // |Hom_C(X, Y)|
  std::size_t null_homotopic = 0;   // |null-homotopic maps|
  bool hom_k_zero = false;
  bool subprojective = false;       // every chain map lifts
  std::vector<std::vector<Mat>> families;
  std::set<FamilyKey> null_keys;
  int lo = 0;
};

inline PairOracle brute_force_pair(const Complex& x, const Complex& y, std::uint64_t limit = kDefaultLimit) {
  ComplexView xv(x), yv(y);
  auto maps = enumerate_chain_map_families(xv, yv, limit);
  auto nulls = null_homotopic_keys(xv, yv, limit);
  auto lifts = liftable_keys(xv, yv, limit);
  PairOracle out;
  out.chain_maps = maps.families.size();
  out.null_homotopic = nulls.size();
  out.hom_k_zero = nulls.size() == maps.families.size();
  out.subprojective = true;
  for (const auto& fam : maps.families)
    if (!lifts.count(family_key(fam))) {
      out.subprojective = false;
      break;
    }
  out.families = maps.families;
  out.null_keys = std::move(nulls);
  out.lo = maps.lo;
  return out;
}

}  // namespace subproj::oracle
