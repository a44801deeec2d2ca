/*
   Copyright 2026 The modalg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modalg/errors.hpp"
#include "modalg/mpoly.hpp"

namespace modalg {

// Dense matrix over a commutative ring with the free-function traits
// is_zero / is_unit / inverse / zero_like / one_like.
template <class F>
class Matrix {
 public:
  Matrix(std::size_t r, std::size_t c, const F& zero) : rows_(r), cols_(c), data_(r * c, zero) {}
  Matrix(std::vector<std::vector<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows[0].size() : 0;
    for (auto& row : rows) {
      if (row.size() != cols_) throw context_mismatch("ragged matrix");
      for (auto& x : row) data_.push_back(std::move(x));
    }
  }
  static Matrix identity(std::size_t n, const F& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw context_mismatch("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_, zero_like(a.data_.at(0)));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class G>
  auto map(G g) const {
    using D = decltype(g(data_.at(0)));
    std::vector<std::vector<D>> rows;
    for (std::size_t i = 0; i < rows_; ++i) {
      rows.emplace_back();
      for (std::size_t j = 0; j < cols_; ++j) rows.back().push_back(g((*this)(i, j)));
    }
    return Matrix<D>(std::move(rows));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

// Reduced row echelon form in place; returns pivot columns.
// Pivots are taken leftmost; over rings only unit pivots are used.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, Matrix<F>* track = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (is_unit(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
      if (track)
        for (std::size_t j = 0; j < track->cols(); ++j) std::swap((*track)(piv, j), (*track)(r, j));
    }
    F inv = inverse(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(r, j) = (*track)(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      if (track)
        for (std::size_t j = 0; j < track->cols(); ++j)
          if (!is_zero((*track)(r, j))) (*track)(i, j) -= f * (*track)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

// Basis of the right kernel {x : m x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m, const F& zero) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<F> v(m.cols(), zero);
    v[f] = one_like(zero);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

// Some x with m x = b (free coordinates zero), or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b, const F& zero) {
  Matrix<F> a(m.rows(), m.cols() + 1, zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    a(i, m.cols()) = b[i];
  }
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols(), zero);
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = a(k, m.cols());
  return x;
}

// Inverse by Gauss-Jordan; requires unit pivots (fields or local rings).
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw not_invertible("non-square matrix");
  if (n == 0) return m;
  Matrix<F> a = m;
  Matrix<F> inv = Matrix<F>::identity(n, zero_like(m(0, 0)));
  auto piv = rref(a, &inv);
  if (piv.size() != n) throw not_invertible("matrix is singular");
  return inv;
}

// Determinant by cofactor expansion over any commutative ring.
template <class F>
F determinant(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw not_invertible("non-square matrix");
  if (n == 1) return m(0, 0);
  F zero = zero_like(m(0, 0));
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  F d = zero;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_zero(m(0, j))) continue;
    Matrix<F> minor(n - 1, n - 1, zero);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, kk++) = m(i, k);
      }
    F t = m(0, j) * determinant(minor);
    if (j % 2) d -= t; else d += t;
  }
  return d;
}

// Inverse over a polynomial ring: adjugate divided exactly by a unit determinant.
Matrix<MPoly> inverse_over_polynomials(const Matrix<MPoly>& m);

template <class F>
std::string to_string(const Matrix<F>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace modalg
