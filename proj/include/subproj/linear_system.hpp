#pragma once

#include "subproj/exact_linalg.hpp"

#include <optional>
#include <vector>

namespace subproj {

/// Joint system of matrix equations  Σ L_k X_{u_k} R_k = C  over one ring.
///
/// Every unknown matrix is flattened column-major and each equation through
/// vec(L X R) = (R^T ⊗ L) vec(X); the whole system is then a single
/// solve_right call. Lifting, homotopy and splitting problems all go
/// through here, so a family of unknowns is always solved jointly.
class LinearSystem {
 public:
  using Unknown = std::size_t;

  struct Term {
    Matrix left;
    Unknown unknown;
    Matrix right;
  };

  explicit LinearSystem(Ring ring) : ring_(ring) {}

  const Ring& ring() const { return ring_; }

  Unknown add_unknown(std::size_t rows, std::size_t cols) {
    shapes_.push_back({rows, cols});
    offsets_.push_back(width_);
    width_ += rows * cols;
    return shapes_.size() - 1;
  }

  std::size_t unknown_rows(Unknown u) const { return shapes_.at(u).first; }
  std::size_t unknown_cols(Unknown u) const { return shapes_.at(u).second; }

  void add_equation(std::vector<Term> terms, Matrix rhs) {
    for (const auto& t : terms) {
      const auto [r, c] = shapes_.at(t.unknown);
      if (t.left.cols() != r || t.right.rows() != c || t.left.rows() != rhs.rows() ||
          t.right.cols() != rhs.cols())
        throw DimensionMismatch("LinearSystem term " + t.left.shape() + " * X(" + std::to_string(r) + "x" +
                                std::to_string(c) + ") * " + t.right.shape() + " vs rhs " + rhs.shape());
    }
    height_ += rhs.rows() * rhs.cols();
    equations_.push_back({std::move(terms), std::move(rhs)});
  }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  /// Values for every unknown, or nothing if the system is infeasible.
  std::optional<std::vector<Matrix>> solve() const {
    Matrix a(height_, width_);
    Matrix b(height_, 1);
    std::size_t row = 0;
    for (const auto& eq : equations_) {
      for (const auto& t : eq.terms) {
        // (R^T ⊗ L) placed at (row, offset)
        const Matrix& L = t.left;
        const Matrix& R = t.right;
        const std::size_t off = offsets_[t.unknown];
        for (std::size_t i = 0; i < R.cols(); ++i)       // rows of R^T
          for (std::size_t j = 0; j < R.rows(); ++j) {   // cols of R^T
            const Integer& rji = R(j, i);
            if (rji == 0) continue;
            for (std::size_t p = 0; p < L.rows(); ++p)
              for (std::size_t q = 0; q < L.cols(); ++q)
                if (L(p, q) != 0) a(row + i * L.rows() + p, off + j * L.cols() + q) += rji * L(p, q);
          }
      }
      Matrix v = vec(eq.rhs);
      b.set_block(row, 0, v);
      row += v.rows();
    }
    auto x = solve_right(ring_.reduce(a), ring_.reduce(b), ring_);
    if (!x) return std::nullopt;
    std::vector<Matrix> values;
    values.reserve(shapes_.size());
    for (std::size_t u = 0; u < shapes_.size(); ++u)
      values.push_back(unvec(*x, offsets_[u], shapes_[u].first, shapes_[u].second));
    return values;
  }

 private:
  struct Equation {
    std::vector<Term> terms;
    Matrix rhs;
  };

  Ring ring_;
  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::vector<std::size_t> offsets_;
  std::vector<Equation> equations_;
  std::size_t width_ = 0;
  std::size_t height_ = 0;
};

}  // namespace subproj
