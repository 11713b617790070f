#pragma once

// Exact linear algebra over Z and Z/m.
//
// Over Z the solvers work from a unimodular row echelon form of A^T; over
// Z/m they work from its Howell form, which makes greedy reduction a
// complete membership test for row spans. smith_normal_form() is the
// canonical diagonalization used for module invariants.

#include "subproj/matrix.hpp"
#include "subproj/ring.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace subproj {

/// U * A * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Canonical row-span form over Z/m and the transform T with T*A = form.
struct HowellForm {
  Matrix form;
  Matrix transform;
};

namespace detail {

inline Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

/// Extended gcd on nonnegative 64-bit integers: s*a + t*b = g.
inline std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t sn = s0 - q * s1;
    s0 = s1;
    s1 = sn;
    std::int64_t tn = t0 - q * t1;
    t0 = t1;
    t1 = tn;
  }
  s = s0;
  t = t0;
  return a;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a < 0 ? -a : a;
}

inline std::int64_t mod64(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

using ModRow = std::vector<std::int64_t>;

/// Row echelon data. `pivots` rows carry pivot columns `pivot_cols`; `rest`
/// rows are zero on the eliminated columns.
template <class RowT>
struct Echelon {
  std::vector<RowT> pivots;
  std::vector<std::size_t> pivot_cols;
  std::vector<RowT> rest;
};

/// Howell elimination over Z/m on the first `width` columns of `rows`. Extra
/// columns are carried along (transform bookkeeping).
inline Echelon<ModRow> howell_eliminate(std::vector<ModRow> rows, std::size_t width, std::int64_t m) {
  const std::size_t total = rows.empty() ? 0 : rows.front().size();
  auto combine = [&](ModRow& x, ModRow& y, std::int64_t s, std::int64_t t, std::int64_t u,
                     std::int64_t v) {
    s = mod64(s, m);
    t = mod64(t, m);
    u = mod64(u, m);
    v = mod64(v, m);
    for (std::size_t j = 0; j < total; ++j) {
      std::int64_t xj = x[j], yj = y[j];
      if (xj == 0 && yj == 0) continue;
      x[j] = (s * xj + t * yj) % m;
      y[j] = (u * xj + v * yj) % m;
    }
  };

  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t k = 0; k < width && r < rows.size(); ++k) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      std::int64_t b = rows[i][k];
      if (b == 0) continue;
      std::int64_t a = rows[r][k];
      std::int64_t s, t;
      std::int64_t g = xgcd(a, b, s, t);
      combine(rows[r], rows[i], s, t, -(b / g), a / g);
    }
    std::int64_t a = rows[r][k];
    if (a == 0) continue;
    // normalize the pivot to gcd(a, m) by a unit
    std::int64_t g = gcd64(a, m);
    std::int64_t mm = m / g;
    std::int64_t unit = 1;
    if (mm > 1) {
      std::int64_t s, t;
      xgcd(mod64(a / g, mm), mm, s, t);
      unit = mod64(s, mm);
      while (gcd64(unit, m) != 1) unit += mm;
    }
    if (unit != 1)
      for (auto& e : rows[r]) e = (e * unit) % m;
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t q = rows[i][k] / g;
      if (q == 0) continue;
      for (std::size_t j = 0; j < total; ++j) rows[i][j] = mod64(rows[i][j] - q * rows[r][j], m);
    }
    // annihilator row keeps the span closed under the Howell property
    if (mm < m) {
      ModRow ann(total);
      bool nonzero = false;
      for (std::size_t j = 0; j < total; ++j) {
        ann[j] = (rows[r][j] * mm) % m;
        nonzero = nonzero || ann[j] != 0;
      }
      if (nonzero) rows.push_back(std::move(ann));
    }
    pivot_cols.push_back(k);
    ++r;
  }
  Echelon<ModRow> out;
  out.pivot_cols = std::move(pivot_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i < r) {
      out.pivots.push_back(std::move(rows[i]));
    } else {
      bool nonzero = false;
      for (auto e : rows[i]) nonzero = nonzero || e != 0;
      if (nonzero) out.rest.push_back(std::move(rows[i]));
    }
  }
  return out;
}

using IntRow = std::vector<Integer>;

/// Unimodular row echelon elimination over Z on the first `width` columns.
/// Pivot choice: smallest nonzero absolute value, lowest row on ties.
inline Echelon<IntRow> integer_eliminate(std::vector<IntRow> rows, std::size_t width) {
  const std::size_t total = rows.empty() ? 0 : rows.front().size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t k = 0; k < width && r < rows.size(); ++k) {
    while (true) {
      std::size_t best = rows.size();
      Integer best_abs;
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][k] == 0) continue;
        Integer av = abs_value(rows[i][k]);
        if (best == rows.size() || av < best_abs) {
          best = i;
          best_abs = av;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][k] == 0) continue;
        Integer q = rows[i][k] / rows[r][k];
        if (q != 0)
          for (std::size_t j = 0; j < total; ++j)
            if (rows[r][j] != 0) rows[i][j] -= q * rows[r][j];
        if (rows[i][k] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][k] == 0) continue;
    if (rows[r][k] < 0)
      for (auto& e : rows[r]) e = -e;
    // keep entries above the pivot small
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][k] == 0) continue;
      Integer q = rows[i][k] / rows[r][k];
      if (rows[i][k] - q * rows[r][k] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < total; ++j)
          if (rows[r][j] != 0) rows[i][j] -= q * rows[r][j];
    }
    pivot_cols.push_back(k);
    ++r;
  }
  Echelon<IntRow> out;
  out.pivot_cols = std::move(pivot_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i < r) {
      out.pivots.push_back(std::move(rows[i]));
    } else {
      bool nonzero = false;
      for (const auto& e : rows[i]) nonzero = nonzero || e != 0;
      if (nonzero) out.rest.push_back(std::move(rows[i]));
    }
  }
  return out;
}

/// Rows [A^T | I] as the elimination input for solving A x = b.
template <class RowT, class Conv>
std::vector<RowT> transposed_augmented(const Matrix& a, Conv conv) {
  std::vector<RowT> rows(a.cols(), RowT(a.rows() + a.cols()));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) rows[j][i] = conv(a(i, j));
    rows[j][a.rows() + j] = conv(Integer(1));
  }
  return rows;
}

inline std::int64_t to_residue(const Integer& v, std::int64_t m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// Smith normal form over Z with transforms. Pivot: minimal absolute value in
/// the active block, ties broken by lowest (row, col).
inline SmithDecomposition smith_normal_form(const Matrix& a, const Ring& ring) {
  if (!ring.is_integers()) throw Error("smith_normal_form requires the ring Z; use howell_form over Z/m");
  const std::size_t m = a.rows(), n = a.cols();
  Matrix D = a, U = Matrix::identity(m), V = Matrix::identity(n);
  auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < n; ++j)
      if (D(src, j) != 0) D(dst, j) -= q * D(src, j);
    for (std::size_t j = 0; j < m; ++j)
      if (U(src, j) != 0) U(dst, j) -= q * U(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col_dst -= q col_src
    for (std::size_t i = 0; i < m; ++i)
      if (D(i, src) != 0) D(i, dst) -= q * D(i, src);
    for (std::size_t i = 0; i < n; ++i)
      if (V(i, src) != 0) V(i, dst) -= q * V(i, src);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found_any = false;
    while (true) {
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          Integer av = detail::abs_value(D(i, j));
          if (pi == m || av < best) {
            pi = i;
            pj = j;
            best = av;
          }
        }
      if (pi == m) break;
      found_any = true;
      D.swap_rows(t, pi);
      U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      V.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_axpy(i, t, D(i, t) / D(t, t));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_axpy(j, t, D(t, j) / D(t, t));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_axpy(t, i, Integer(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!found_any) break;
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

/// Howell form over Z/m: a canonical echelon basis of the row span of A.
/// Two matrices have equal row spans iff their Howell forms are equal.
inline HowellForm howell_form(const Matrix& a, const Ring& ring) {
  if (!ring.is_finite()) throw Error("howell_form requires a ring Z/m");
  const std::int64_t m = ring.modulus();
  const std::size_t n = a.cols();
  std::vector<detail::ModRow> rows(a.rows(), detail::ModRow(n + a.rows()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = detail::to_residue(a(i, j), m);
    rows[i][n + i] = 1;
  }
  auto ech = detail::howell_eliminate(std::move(rows), n, m);
  HowellForm out{Matrix(ech.pivots.size(), n), Matrix(ech.pivots.size(), a.rows())};
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) out.form(r, j) = ech.pivots[r][j];
    for (std::size_t j = 0; j < a.rows(); ++j) out.transform(r, j) = ech.pivots[r][n + j];
  }
  return out;
}

namespace detail {

/// Shared elimination of A^T for solve_right and kernel_basis.
struct Factorization {
  std::size_t rows = 0;  // rows of A
  std::size_t cols = 0;  // cols of A
  Ring ring = Ring::integers();
  Echelon<IntRow> over_z;
  Echelon<ModRow> over_zm;
};

inline Factorization factor(const Matrix& a, const Ring& ring) {
  Factorization f;
  f.rows = a.rows();
  f.cols = a.cols();
  f.ring = ring;
  if (ring.is_integers()) {
    f.over_z = integer_eliminate(transposed_augmented<IntRow>(a, [](const Integer& v) { return v; }), a.rows());
  } else {
    const std::int64_t m = ring.modulus();
    f.over_zm = howell_eliminate(
        transposed_augmented<ModRow>(a, [m](const Integer& v) { return to_residue(v, m); }), a.rows(), m);
  }
  return f;
}

/// Greedy reduction of b against the echelon rows; returns coefficients x
/// with A x = b, or nothing.
inline std::optional<Matrix> solve_column(const Factorization& f, const Matrix& b, std::size_t col) {
  const std::size_t p = f.rows, q = f.cols;
  Matrix x(q, 1);
  if (f.ring.is_integers()) {
    IntRow v(p);
    for (std::size_t i = 0; i < p; ++i) v[i] = b(i, col);
    std::vector<Integer> acc(q);
    for (std::size_t t = 0; t < f.over_z.pivots.size(); ++t) {
      const auto& row = f.over_z.pivots[t];
      std::size_t k = f.over_z.pivot_cols[t];
      if (v[k] == 0) continue;
      if (v[k] % row[k] != 0) return std::nullopt;
      Integer c = v[k] / row[k];
      for (std::size_t i = k; i < p; ++i)
        if (row[i] != 0) v[i] -= c * row[i];
      for (std::size_t j = 0; j < q; ++j)
        if (row[p + j] != 0) acc[j] += c * row[p + j];
    }
    for (const auto& e : v)
      if (e != 0) return std::nullopt;
    for (std::size_t j = 0; j < q; ++j) x(j, 0) = acc[j];
    return x;
  }
  const std::int64_t m = f.ring.modulus();
  ModRow v(p);
  for (std::size_t i = 0; i < p; ++i) v[i] = to_residue(b(i, col), m);
  ModRow acc(q);
  for (std::size_t t = 0; t < f.over_zm.pivots.size(); ++t) {
    const auto& row = f.over_zm.pivots[t];
    std::size_t k = f.over_zm.pivot_cols[t];
    if (v[k] == 0) continue;
    if (v[k] % row[k] != 0) return std::nullopt;
    std::int64_t c = v[k] / row[k];
    for (std::size_t i = k; i < p; ++i)
      if (row[i] != 0) v[i] = mod64(v[i] - c * row[i], m);
    for (std::size_t j = 0; j < q; ++j)
      if (row[p + j] != 0) acc[j] = (acc[j] + c * row[p + j]) % m;
  }
  for (auto e : v)
    if (e != 0) return std::nullopt;
  for (std::size_t j = 0; j < q; ++j) x(j, 0) = acc[j];
  return x;
}

}  // namespace detail

/// X with A*X = B, or nothing when the system has no solution.
/// Every returned X has been re-verified by multiplication.
inline std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b, const Ring& ring) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve_right: A is " + a.shape() + ", B is " + b.shape());
  Matrix X(a.cols(), b.cols());
  if (b.cols() == 0) return X;
  auto f = detail::factor(a, ring);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto x = detail::solve_column(f, b, c);
    if (!x) return std::nullopt;
    X.set_block(0, c, *x);
  }
  X = ring.reduce(X);
  if (ring.reduce(a * X) != ring.reduce(b)) throw Error("solve_right: internal verification failed");
  return X;
}

/// Columns generating {x : A*x = 0}. Over Z they form a lattice basis.
inline Matrix kernel_basis(const Matrix& a, const Ring& ring) {
  const std::size_t p = a.rows(), q = a.cols();
  if (p == 0) return Matrix::identity(q);
  auto f = detail::factor(a, ring);
  if (ring.is_integers()) {
    Matrix k(q, f.over_z.rest.size());
    for (std::size_t c = 0; c < f.over_z.rest.size(); ++c) {
      for (std::size_t j = 0; j < q; ++j) k(j, c) = f.over_z.rest[c][p + j];
      // first nonzero entry positive
      std::size_t lead = 0;
      while (lead < q && k(lead, c) == 0) ++lead;
      if (lead < q && k(lead, c) < 0)
        for (std::size_t j = 0; j < q; ++j) k(j, c) = -k(j, c);
    }
    return k;
  }
  Matrix k(q, f.over_zm.rest.size());
  for (std::size_t c = 0; c < f.over_zm.rest.size(); ++c)
    for (std::size_t j = 0; j < q; ++j) k(j, c) = f.over_zm.rest[c][p + j];
  return k;
}

/// Reusable factorization of A for many right-hand sides.
class Solver {
 public:
  Solver(const Matrix& a, const Ring& ring) : a_(ring.reduce(a)), ring_(ring), f_(detail::factor(a, ring)) {}

  std::optional<Matrix> solve(const Matrix& b) const {
    if (b.rows() != a_.rows()) throw DimensionMismatch("Solver::solve: rhs has " + b.shape());
    Matrix X(a_.cols(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      auto x = detail::solve_column(f_, b, c);
      if (!x) return std::nullopt;
      X.set_block(0, c, *x);
    }
    return ring_.reduce(X);
  }

 private:
  Matrix a_;
  Ring ring_;
  detail::Factorization f_;
};

/// Invariant factors of coker(A) with unit factors trimmed. Over Z/m the
/// module is read as the Z-module coker([A | m*I]), so free summands show up
/// as the factor m. `free_rank` counts Z summands and is always 0 over Z/m.
struct ModuleInvariants {
  std::vector<Integer> factors;
  std::size_t free_rank = 0;

  bool is_zero() const { return factors.empty() && free_rank == 0; }
  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
};

inline ModuleInvariants cokernel_invariants(const Matrix& relations, const Ring& ring) {
  const std::size_t g = relations.rows();
  Matrix a = relations;
  Ring z = Ring::integers();
  if (ring.is_finite()) a = hconcat(ring.reduce(relations), Integer(ring.modulus()) * Matrix::identity(g));
  auto snf = smith_normal_form(a, z);
  ModuleInvariants inv;
  std::size_t nonzero = 0;
  for (const auto& d : snf.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) inv.factors.push_back(d);
  }
  inv.free_rank = g - nonzero;
  return inv;
}

}  // namespace subproj
