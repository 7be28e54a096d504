/*
 * Copyright 2026 The Samelson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SAMELSON_LINALG_HPP
#define SAMELSON_LINALG_HPP

#include <cstddef>
#include <vector>

#include "samelson/fp.hpp"

namespace samelson {

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, Residue p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  FpMatrix(std::vector<std::vector<std::int64_t>> rows, Residue p) : p_(p) {
    rows_ = rows.size();
    cols_ = rows_ ? rows[0].size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw StructuralError("FpMatrix: ragged rows");
      for (auto v : r) data_.push_back(fp_reduce(v, p));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue prime() const { return p_; }

  Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Residue> apply(const std::vector<Residue>& x) const {
    if (x.size() != cols_) throw StructuralError("FpMatrix::apply: dimension mismatch");
    std::vector<Residue> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{at(r, c)} * x[c]) % p_;
      y[r] = static_cast<Residue>(acc);
    }
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Residue p_;
  std::vector<Residue> data_;
};

struct LinearSystem {
  FpMatrix matrix;
  std::vector<Residue> rhs;

  LinearSystem(FpMatrix a, std::vector<Residue> b) : matrix(std::move(a)), rhs(std::move(b)) {
    if (rhs.size() != matrix.rows()) throw StructuralError("LinearSystem: rhs size mismatch");
  }
};

/// Full solution set of A x = b: particular + span(nullspace), or
/// inconsistent.
struct AffineSolution {
  bool consistent = false;
  std::vector<Residue> particular;
  std::vector<std::vector<Residue>> nullspace;
  std::size_t rank = 0;

  /// Coordinate i is the same for every solution.
  bool determined(std::size_t i) const {
    if (!consistent) return false;
    for (const auto& v : nullspace)
      if (v[i] != 0) return false;
    return true;
  }
};

namespace detail {

// Reduced row echelon form in place; pivot = first row (from the current
// one down) with a nonzero entry in the column.  Returns pivot columns.
inline std::vector<std::size_t> rref(FpMatrix& m, std::size_t ncols_to_pivot) {
  const Residue p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols_to_pivot && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    Residue inv = fp_inv(m.at(row, col), p);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = fp_mul(m.at(row, c), inv, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Residue f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(r, c) = fp_sub(m.at(r, c), fp_mul(f, m.at(row, c), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Gaussian elimination over F_p with a deterministic pivot rule.
inline AffineSolution solve_fp(const LinearSystem& sys) {
  const FpMatrix& a = sys.matrix;
  const Residue p = a.prime();
  const std::size_t n = a.cols();
  FpMatrix aug(a.rows(), n + 1, p);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = sys.rhs[r] % p;
  }
  auto pivots = detail::rref(aug, n);
  AffineSolution sol;
  sol.rank = pivots.size();
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (aug.at(r, n) != 0) return sol;
  sol.consistent = true;
  sol.particular.assign(n, 0);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    sol.particular[pivots[i]] = aug.at(i, n);
    is_pivot[pivots[i]] = true;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = fp_neg(aug.at(i, free), p);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

inline std::size_t rank(FpMatrix m) { return detail::rref(m, m.cols()).size(); }

/// Basis of {x : A x = 0}.
inline std::vector<std::vector<Residue>> nullspace(const FpMatrix& a) {
  return solve_fp(LinearSystem(a, std::vector<Residue>(a.rows(), 0))).nullspace;
}

}  // namespace samelson

#endif  // SAMELSON_LINALG_HPP
