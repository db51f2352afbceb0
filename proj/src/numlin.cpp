// src/numlin.cpp
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

#include "svkit/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace svkit {

MeanCov sample_mean_cov(const Matrix& x) {
  const int n = x.rows(), d = x.cols();
  if (n < 1) throw DataError("sample_mean_cov: need at least one row");
  MeanCov out;
  out.mean.assign(d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out.mean[j] += x(i, j);
  for (int j = 0; j < d; ++j) out.mean[j] /= n;

  out.cov = SymMatrix(d);
  Vec diff(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) diff[j] = x(i, j) - out.mean[j];
    out.cov.add_outer(diff, 1.0);
  }
  out.cov.scale(1.0 / n);
  return out;
}

MeanCov sample_mean_cov(const std::vector<Vec>& rows) {
  if (rows.empty()) throw DataError("sample_mean_cov: need at least one row");
  Matrix x(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw DataError("sample_mean_cov: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      x(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return sample_mean_cov(x);
}

Matrix cholesky(const SymMatrix& s) {
  const int n = s.dim();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(sum > 0.0))
          throw NumericError("cholesky: matrix is not positive definite");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

SymMatrix floor_spd(const SymMatrix& s, double rel_floor) {
  EigResult eig = sym_eig(s);
  double lam_max = eig.values.empty() ? 0.0 : eig.values.front();
  double floor = lam_max > 0.0 ? rel_floor * lam_max : rel_floor;
  const int n = s.dim();
  SymMatrix out(n);
  for (int k = 0; k < n; ++k) {
    double lam = std::max(eig.values[k], floor);
    Vec col(n);
    for (int i = 0; i < n; ++i) col[i] = eig.vectors(i, k);
    out.add_outer(col, lam);
  }
  return out;
}

Matrix cholesky_floored(const SymMatrix& s, double rel_floor) {
  try {
    return cholesky(s);
  } catch (const NumericError&) {
    return cholesky(floor_spd(s, rel_floor));
  }
}

namespace {

// One cyclic Jacobi sweep; returns the rotated off-diagonal mass.
double jacobi_sweep(Matrix* a, Matrix* v) {
  const int n = a->rows();
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double apq = (*a)(p, q);
      if (apq == 0.0) continue;
      double app = (*a)(p, p), aqq = (*a)(q, q);
      // Skip rotations that cannot change the matrix at double precision.
      if (std::abs(apq) <= 1e-300 ||
          std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
        (*a)(p, q) = (*a)(q, p) = 0.0;
        continue;
      }
      double theta = (aqq - app) / (2.0 * apq);
      double t = (theta >= 0.0 ? 1.0 : -1.0) /
                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      double c = 1.0 / std::sqrt(t * t + 1.0);
      double sn = t * c;

      for (int k = 0; k < n; ++k) {
        double akp = (*a)(k, p), akq = (*a)(k, q);
        (*a)(k, p) = c * akp - sn * akq;
        (*a)(k, q) = sn * akp + c * akq;
      }
      for (int k = 0; k < n; ++k) {
        double apk = (*a)(p, k), aqk = (*a)(q, k);
        (*a)(p, k) = c * apk - sn * aqk;
        (*a)(q, k) = sn * apk + c * aqk;
      }
      (*a)(p, q) = (*a)(q, p) = 0.0;
      for (int k = 0; k < n; ++k) {
        double vkp = (*v)(k, p), vkq = (*v)(k, q);
        (*v)(k, p) = c * vkp - sn * vkq;
        (*v)(k, q) = sn * vkp + c * vkq;
      }
    }
  }
  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off += (*a)(i, j) * (*a)(i, j);
  return off;
}

}  // namespace

EigResult sym_eig(const SymMatrix& s) {
  if (!s.all_finite()) throw DataError("sym_eig: non-finite entries");
  const int n = s.dim();
  Matrix a = s.full();
  Matrix v = Matrix::identity(n);

  double frob_sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) frob_sq += a(i, j) * a(i, j);
  double tol = 1e-30 * std::max(frob_sq, 1e-300);

  const int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = jacobi_sweep(&a, &v);
    if (off <= tol) break;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });

  EigResult out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    int src = order[k];
    out.values[k] = a(src, src);
    // Canonical sign: largest-magnitude component positive.
    int arg = 0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      double mag = std::abs(v(i, src));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

SymMatrix sym_sqrt(const SymMatrix& s, bool inverse, double rel_floor) {
  EigResult eig = sym_eig(s);
  const int n = s.dim();
  double lam_max = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
  SymMatrix out(n);
  for (int k = 0; k < n; ++k) {
    double lam = eig.values[k];
    if (inverse) {
      double floor = lam_max > 0.0 ? rel_floor * lam_max : rel_floor;
      lam = std::max(lam, floor);
      if (!(lam > 0.0))
        throw NumericError("sym_sqrt: matrix not invertible after flooring");
      lam = 1.0 / std::sqrt(lam);
    } else {
      if (lam < -rel_floor * std::max(lam_max, 1.0))
        throw NumericError("sym_sqrt: negative eigenvalue below floor");
      lam = std::sqrt(std::max(lam, 0.0));
    }
    Vec col(n);
    for (int i = 0; i < n; ++i) col[i] = eig.vectors(i, k);
    out.add_outer(col, lam);
  }
  return out;
}

SimulDiag simultaneous_diagonalize(const SymMatrix& phi_w, const SymMatrix& phi_b,
                                   double rel_floor) {
  if (phi_w.dim() != phi_b.dim())
    throw DataError("simultaneous_diagonalize: dimension mismatch");
  Matrix l = cholesky_floored(phi_w, rel_floor);
  Matrix linv = invert_lower(l);
  // Whitened between matrix L^{-1} phi_b L^{-T}.
  SymMatrix wb = congruence_t(linv, phi_b);
  EigResult eig = sym_eig(wb);

  SimulDiag out;
  out.psi = eig.values;
  out.u = transpose(linv) * eig.vectors;  // U = L^{-T} V
  out.a = l * eig.vectors;                // A = U^{-T} = L V
  double logdet = 0.0;
  for (int i = 0; i < l.rows(); ++i) logdet += std::log(l(i, i));
  out.log_abs_det_u = -logdet;
  return out;
}

Matrix invert_lower(const Matrix& l) {
  const int n = l.rows();
  if (l.cols() != n) throw DataError("invert_lower: not square");
  Matrix inv(n, n);
  for (int j = 0; j < n; ++j) {
    if (l(j, j) == 0.0) throw NumericError("invert_lower: singular");
    inv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double sum = 0.0;
      for (int k = j; k < i; ++k) sum += l(i, k) * inv(k, j);
      inv(i, j) = -sum / l(i, i);
    }
  }
  return inv;
}

Matrix invert(const Matrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw DataError("invert: not square");
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (work(pivot, col) == 0.0) throw NumericError("invert: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    double d = work(col, col);
    for (int c = 0; c < n; ++c) {
      work(col, c) /= d;
      inv(col, c) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = work(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace svkit
