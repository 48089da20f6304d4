// Copyright 2026 the povmsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povmsim/errors.hpp"
#include "povmsim/matrix.hpp"

namespace povmsim {

namespace {

constexpr double kOffTarget = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kTieTol = 1e-12;
constexpr double kPhaseTol = 1e-10;

double off_diagonal_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// One Jacobi rotation zeroing the (p,q) entry of a Hermitian matrix.
// The rotation J acts on the (p,q) plane as [[c, -s*e^{i phi}],
// [s*e^{-i phi}, c]] with a(p,q) = r*e^{i phi}; A <- J^dagger A J, V <- V J.
// Pass a null v to skip eigenvector accumulation.
void rotate(ComplexMatrix& a, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const cxd apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cxd phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  // Zeroing condition: r (c^2 - s^2) + c s (aqq - app) = 0, i.e.
  // t^2 - 2 tau t - 1 = 0 with t = s/c; take the smaller-magnitude root.
  const double tau = (aqq - app) / (2.0 * r);
  const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cxd sp = s * phase;              // s * e^{i phi}
  const cxd spc = s * std::conj(phase);  // s * e^{-i phi}

  const std::size_t n = a.rows;
  // Column update: A <- A J.
  for (std::size_t i = 0; i < n; ++i) {
    const cxd aip = a(i, p), aiq = a(i, q);
    a(i, p) = c * aip + spc * aiq;
    a(i, q) = -sp * aip + c * aiq;
  }
  // Row update: A <- J^dagger A.
  for (std::size_t j = 0; j < n; ++j) {
    const cxd apj = a(p, j), aqj = a(q, j);
    a(p, j) = c * apj + sp * aqj;
    a(q, j) = -spc * apj + c * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cxd(a(p, p).real(), 0.0);
  a(q, q) = cxd(a(q, q).real(), 0.0);
  if (v) {
    for (std::size_t i = 0; i < n; ++i) {
      const cxd vip = (*v)(i, p), viq = (*v)(i, q);
      (*v)(i, p) = c * vip + spc * viq;
      (*v)(i, q) = -sp * vip + c * viq;
    }
  }
}

// Relative (Demmel-Veselic) convergence: every off-diagonal entry small
// against the geometric mean of its diagonal pair. Two-sided Jacobi keeps
// this property attainable for graded PSD matrices, which is what makes
// generalized inverse roots accurate in the tiny-eigenvalue directions.
bool relatively_converged(const ComplexMatrix& a) {
  constexpr double rel2 = 1e-28;   // (1e-14)^2
  constexpr double guard = 1e-60;  // exact-null diagonal pairs
  for (std::size_t p = 0; p + 1 < a.rows; ++p)
    for (std::size_t q = p + 1; q < a.rows; ++q) {
      const double dp = std::max(a(p, p).real(), 0.0);
      const double dq = std::max(a(q, q).real(), 0.0);
      if (std::norm(a(p, q)) > rel2 * dp * dq + guard) return false;
    }
  return true;
}

// Shared sweep driver; eigenvalues land on the diagonal of the scaled
// matrix. `relative` demands the entrywise relative criterion on top of the
// absolute off-diagonal target.
void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix* v, bool relative) {
  const std::size_t n = a.rows;
  if (n <= 1) return;
  auto done = [&] {
    if (off_diagonal_frobenius(a) >= kOffTarget) return false;
    return !relative || relatively_converged(a);
  };
  bool converged = done();
  int sweep = 0;
  while (!converged) {
    if (sweep++ >= kMaxSweeps) {
      throw ConvergenceFailure("spectral_decompose: off-diagonal norm " +
                               std::to_string(off_diagonal_frobenius(a)) + " after " +
                               std::to_string(kMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = done();
  }
}

void phase_normalize_column(ComplexMatrix& u, std::size_t col) {
  for (std::size_t i = 0; i < u.rows; ++i) {
    const cxd z = u(i, col);
    const double m = std::abs(z);
    if (m > kPhaseTol) {
      const cxd ph = std::conj(z) / m;
      for (std::size_t j = 0; j < u.rows; ++j) u(j, col) *= ph;
      u(i, col) = cxd(u(i, col).real(), 0.0);
      return;
    }
  }
}

// Lexicographic order of phase-normalized eigenvector columns, used only to
// break eigenvalue ties deterministically.
bool column_less(const ComplexMatrix& u, std::size_t ca, std::size_t cb) {
  for (std::size_t i = 0; i < u.rows; ++i) {
    const cxd x = u(i, ca), y = u(i, cb);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

SpectralDecomposition decompose_impl(const HermitianOperator& h, bool relative) {
  const std::size_t n = h.dim();
  SpectralDecomposition out;
  if (n == 0) return out;

  const double scale = std::max(max_abs(h.mat), 1e-300);
  ComplexMatrix a = (1.0 / scale) * h.mat;
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_sweeps(a, &v, relative);

  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real() * scale;
  for (std::size_t c = 0; c < n; ++c) phase_normalize_column(v, c);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (std::abs(vals[i] - vals[j]) >= kTieTol * std::max(1.0, scale)) return vals[i] > vals[j];
    return column_less(v, i, j);
  });

  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = vals[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace

SpectralDecomposition spectral_decompose(const HermitianOperator& h) {
  return decompose_impl(h, /*relative=*/false);
}

SpectralDecomposition spectral_decompose_relative(const HermitianOperator& h) {
  return decompose_impl(h, /*relative=*/true);
}

std::vector<double> eigenvalues_only(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  if (n == 0) return {};
  const double scale = std::max(max_abs(h.mat), 1e-300);
  ComplexMatrix a = (1.0 / scale) * h.mat;
  jacobi_sweeps(a, nullptr, /*relative=*/false);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real() * scale;
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

SpectralDecomposition factored_gram_decompose(const ComplexMatrix& f) {
  // Columns of x = f^dagger are orthogonalized in place; then
  // f f^dagger = V diag(|x_i|^2) V^dagger with V the accumulated rotations.
  const std::size_t n = f.rows;
  SpectralDecomposition out;
  if (n == 0) return out;
  const double scale = std::max(max_abs(f), 1e-300);
  ComplexMatrix x = dagger((1.0 / scale) * f);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const std::size_t rows = x.rows;

  constexpr double rel2 = 1e-28;
  constexpr double guard = 1e-120;
  int sweep = 0;
  bool converged = n <= 1;
  while (!converged) {
    if (sweep++ >= kMaxSweeps)
      throw ConvergenceFailure("factored_gram_decompose: no convergence after " +
                               std::to_string(kMaxSweeps) + " sweeps");
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double a = 0.0, b = 0.0;
        cxd c = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          a += std::norm(x(i, p));
          b += std::norm(x(i, q));
          c += std::conj(x(i, p)) * x(i, q);
        }
        if (std::norm(c) <= rel2 * a * b + guard) continue;
        converged = false;
        const double r = std::abs(c);
        const cxd phase = c / r;
        const double tau = (b - a) / (2.0 * r);
        const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const double sth = t * cth;
        const cxd sp = sth * phase;
        const cxd spc = sth * std::conj(phase);
        for (std::size_t i = 0; i < rows; ++i) {
          const cxd xp = x(i, p), xq = x(i, q);
          x(i, p) = cth * xp + spc * xq;
          x(i, q) = -sp * xp + cth * xq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cxd vp = v(i, p), vq = v(i, q);
          v(i, p) = cth * vp + spc * vq;
          v(i, q) = -sp * vp + cth * vq;
        }
      }
  }

  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) norm2 += std::norm(x(r, i));
    vals[i] = norm2 * scale * scale;
  }
  for (std::size_t c = 0; c < n; ++c) phase_normalize_column(v, c);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const double top = *std::max_element(vals.begin(), vals.end());
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (std::abs(vals[i] - vals[j]) >= kTieTol * std::max(1.0, top)) return vals[i] > vals[j];
    return column_less(v, i, j);
  });
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = vals[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace povmsim
