#pragma once

#include "subproj/matrix.hpp"
#include "subproj/ring.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace subproj::testing {

using Residues = std::vector<std::int64_t>;

/// Calls visit(v) for every v in (Z/m)^n.
inline void for_each_vector(std::size_t n, std::int64_t m, const std::function<void(const Residues&)>& visit) {
  Residues v(n, 0);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == m) v[i++] = 0;
    if (i == n) return;
  }
}

inline Residues apply_mod(const Matrix& a, const Residues& x, std::int64_t m) {
  Residues y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += static_cast<std::int64_t>(a(i, j) % m) * x[j];
    y[i] = ((acc % m) + m) % m;
  }
  return y;
}

/// The set of all A*x over (Z/m)^cols: the column span of A.
inline std::set<Residues> column_span(const Matrix& a, std::int64_t m) {
  std::set<Residues> out;
  for_each_vector(a.cols(), m, [&](const Residues& x) { out.insert(apply_mod(a, x, m)); });
  if (a.cols() == 0) out.insert(Residues(a.rows(), 0));
  return out;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = d(rng);
  return a;
}

inline Integer determinant(Matrix a) {
  // fraction-free Bareiss elimination
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace subproj::testing
