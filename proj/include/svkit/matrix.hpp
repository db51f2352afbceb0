// include/svkit/matrix.hpp
//
// Copyright 2026  svkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SVKIT_MATRIX_HPP_
#define SVKIT_MATRIX_HPP_

#include <vector>

#include "svkit/common.hpp"

namespace svkit {

// Dense row-major matrix of doubles. Sized for back-end work (embedding
// dimensions up to a couple thousand); no views, no sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-initialized
  static Matrix identity(int dim);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool all_finite() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& scale(double alpha);

  const Vec& data() const { return data_; }

 private:
  int rows_ = 0, cols_ = 0;
  Vec data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix transpose(const Matrix& a);
Vec mat_vec(const Matrix& a, const Vec& x);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
void vec_axpy(double alpha, const Vec& x, Vec* y);  // y += alpha * x
bool all_finite(const Vec& a);

// Symmetric matrix. Entries are written pairwise so |S_ij - S_ji| = 0 holds
// by construction; constructors reject non-finite input.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(dim, dim) {}
  static SymMatrix identity(int dim);
  static SymMatrix diag(const Vec& d);
  // Exact symmetrization (A + A^T) / 2 of a square matrix.
  static SymMatrix from(const Matrix& a);

  int dim() const { return m_.rows(); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(int i, int j, double v) {
    if (i == j) {
      m_(i, i) += v;
    } else {
      m_(i, j) += v;
      m_(j, i) = m_(i, j);
    }
  }
  // S += w * v v^T
  void add_outer(const Vec& v, double w);

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& scale(double alpha);

  const Matrix& full() const { return m_; }
  double max_abs() const { return m_.max_abs(); }
  bool all_finite() const { return m_.all_finite(); }

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);

// A^T S A, symmetrized exactly.
SymMatrix congruence(const Matrix& a, const SymMatrix& s);
// A S A^T, symmetrized exactly.
SymMatrix congruence_t(const Matrix& a, const SymMatrix& s);

}  // namespace svkit

#endif  // SVKIT_MATRIX_HPP_
