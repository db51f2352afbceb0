// src/matrix.cpp
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

#include "svkit/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace svkit {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DataError("Matrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DataError("Matrix += : shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DataError("Matrix -= : shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::scale(double alpha) {
  for (double& v : data_) v *= alpha;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DataError("Matrix *: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vec mat_vec(const Matrix& a, const Vec& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw DataError("mat_vec: shape mismatch");
  Vec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DataError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DataError("vec_sub: size mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DataError("vec_add: size mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

void vec_axpy(double alpha, const Vec& x, Vec* y) {
  if (x.size() != y->size()) throw DataError("vec_axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) (*y)[i] += alpha * x[i];
}

bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix s(dim);
  for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::diag(const Vec& d) {
  SymMatrix s(static_cast<int>(d.size()));
  for (int i = 0; i < s.dim(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::from(const Matrix& a) {
  if (a.rows() != a.cols()) throw DataError("SymMatrix::from: matrix not square");
  if (!a.all_finite()) throw DataError("SymMatrix::from: non-finite entries");
  SymMatrix s(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j <= i; ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

void SymMatrix::add_outer(const Vec& v, double w) {
  if (static_cast<int>(v.size()) != dim())
    throw DataError("SymMatrix::add_outer: size mismatch");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j <= i; ++j) {
      double upd = w * v[i] * v[j];
      m_(i, j) += upd;
      if (i != j) m_(j, i) = m_(i, j);
    }
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (dim() != other.dim()) throw DataError("SymMatrix += : shape mismatch");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j <= i; ++j) set(i, j, m_(i, j) + other(i, j));
  return *this;
}

SymMatrix& SymMatrix::scale(double alpha) {
  m_.scale(alpha);
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) {
  a += b;
  return a;
}

SymMatrix operator-(SymMatrix a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DataError("SymMatrix - : shape mismatch");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, a(i, j) - b(i, j));
  return a;
}

SymMatrix congruence(const Matrix& a, const SymMatrix& s) {
  return SymMatrix::from(transpose(a) * s.full() * a);
}

SymMatrix congruence_t(const Matrix& a, const SymMatrix& s) {
  return SymMatrix::from(a * s.full() * transpose(a));
}

}  // namespace svkit
