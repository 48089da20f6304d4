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

#include "povmsim/matrix.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "povmsim/errors.hpp"

namespace povmsim {

namespace {
std::atomic<std::size_t> g_budget_entries{std::size_t(1) << 26};

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const char* op) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(x.rows) + "x" +
                            std::to_string(x.cols) + " vs " + std::to_string(y.rows) + "x" +
                            std::to_string(y.cols));
  }
}
}  // namespace

std::size_t budget_entries() { return g_budget_entries.load(); }
void set_budget_entries(std::size_t cap) { g_budget_entries.store(cap); }

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cxd>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "add");
  ComplexMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "sub");
  ComplexMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

ComplexMatrix operator*(cxd s, const ComplexMatrix& x) {
  ComplexMatrix r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols != y.rows) throw DimensionMismatch("matmul: inner dimensions differ");
  ComplexMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      const cxd v = x(i, k);
      if (v == cxd(0.0, 0.0)) continue;
      const cxd* yrow = &y.a[k * y.cols];
      cxd* rrow = &r.a[i * r.cols];
      for (std::size_t j = 0; j < y.cols; ++j) rrow[j] += v * yrow[j];
    }
  }
  return r;
}

ComplexMatrix dagger(const ComplexMatrix& x) {
  ComplexMatrix r(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = std::conj(x(i, j));
  return r;
}

ComplexMatrix transpose(const ComplexMatrix& x) {
  ComplexMatrix r(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

cxd trace(const ComplexMatrix& x) {
  if (!x.square()) throw DimensionMismatch("trace: matrix not square");
  cxd t = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) t += x(i, i);
  return t;
}

double max_abs(const ComplexMatrix& x) {
  double m = 0.0;
  for (const auto& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

double frobenius(const ComplexMatrix& x) {
  double s = 0.0;
  for (const auto& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (!x.square()) return false;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = i; j < x.cols; ++j)
      if (std::abs(x(i, j) - std::conj(x(j, i))) > tol) return false;
  return true;
}

bool all_finite(const ComplexMatrix& x) {
  for (const auto& v : x.a)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix basis_conjugate(const ComplexMatrix& x) {
  ComplexMatrix r = x;
  for (auto& v : r.a) v = std::conj(v);
  return r;
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix r(x.rows * y.rows, x.cols * y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) {
      const cxd v = x(i, j);
      if (v == cxd(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < y.rows; ++k) {
        const cxd* yrow = &y.a[k * y.cols];
        cxd* rrow = &r.a[(i * y.rows + k) * r.cols + j * y.cols];
        for (std::size_t l = 0; l < y.cols; ++l) rrow[l] = v * yrow[l];
      }
    }
  }
  return r;
}

ComplexMatrix tensor_power(const ComplexMatrix& x, int n) {
  if (!x.square()) throw DimensionMismatch("tensor_power: matrix not square");
  if (n < 1) throw Error("tensor_power: n must be >= 1");
  double entries = 1.0;
  for (int i = 0; i < n; ++i) entries *= double(x.rows) * double(x.cols);
  if (entries > double(budget_entries())) {
    throw BudgetExceeded("tensor_power: " + std::to_string(x.rows) + "^" + std::to_string(2 * n) +
                         " entries exceed the configured cap");
  }
  ComplexMatrix r = x;
  for (int i = 1; i < n; ++i) r = kron(r, x);
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  if (!x.square()) throw DimensionMismatch("partial_trace: matrix not square");
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (total != x.rows) throw DimensionMismatch("partial_trace: dims product != matrix dim");

  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw DimensionMismatch("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::size_t dkeep = 1, dtrace = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? dkeep : dtrace) *= dims[i];

  // Strides of each subsystem in the flat index.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  // Flat index = keep_part + trace_part, enumerated through mixed-radix digits.
  std::vector<std::size_t> keep_offsets(dkeep, 0), trace_offsets(dtrace, 0);
  {
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t c = 0; c < dkeep; ++c) {
      std::size_t rem = c, off = 0;
      for (std::size_t i = dims.size(); i-- > 0;) {
        if (!kept[i]) continue;
        digits[i] = rem % dims[i];
        rem /= dims[i];
        off += digits[i] * stride[i];
      }
      keep_offsets[c] = off;
    }
    for (std::size_t c = 0; c < dtrace; ++c) {
      std::size_t rem = c, off = 0;
      for (std::size_t i = dims.size(); i-- > 0;) {
        if (kept[i]) continue;
        off += (rem % dims[i]) * stride[i];
        rem /= dims[i];
      }
      trace_offsets[c] = off;
    }
  }

  ComplexMatrix r(dkeep, dkeep);
  for (std::size_t i = 0; i < dkeep; ++i)
    for (std::size_t j = 0; j < dkeep; ++j) {
      cxd s = 0.0;
      for (std::size_t t = 0; t < dtrace; ++t)
        s += x(keep_offsets[i] + trace_offsets[t], keep_offsets[j] + trace_offsets[t]);
      r(i, j) = s;
    }
  return r;
}

HermitianOperator hermitian(ComplexMatrix m, double tol) {
  if (!m.square()) throw DimensionMismatch("hermitian: matrix not square");
  if (!all_finite(m)) throw Error("hermitian: non-finite entries");
  if (!is_hermitian(m, tol)) throw Error("hermitian: matrix deviates from its adjoint");
  return HermitianOperator{std::move(m)};
}

namespace {

SpectralDecomposition scd_of(const HermitianOperator& p) { return spectral_decompose(p); }

HermitianOperator rebuild(const SpectralDecomposition& s, const std::vector<double>& vals) {
  const std::size_t d = s.eigenvalues.size();
  const ComplexMatrix& u = s.eigenvectors;
  ComplexMatrix r(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (vals[k] == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const cxd ui = vals[k] * u(i, k);
      for (std::size_t j = 0; j < d; ++j) r(i, j) += ui * std::conj(u(j, k));
    }
  }
  // Exact Hermitian symmetrization of rounding noise.
  for (std::size_t i = 0; i < d; ++i) {
    r(i, i) = cxd(r(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const cxd m = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = m;
      r(j, i) = std::conj(m);
    }
  }
  return HermitianOperator{std::move(r)};
}

}  // namespace

HermitianOperator op_sqrt(const HermitianOperator& p) {
  SpectralDecomposition s = scd_of(p);
  std::vector<double> vals(s.eigenvalues.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double g = s.eigenvalues[i];
    if (g < -kPsdTol) throw NotPositive("op_sqrt: eigenvalue " + std::to_string(g));
    vals[i] = g > 0.0 ? std::sqrt(g) : 0.0;
  }
  return rebuild(s, vals);
}

HermitianOperator gen_inv_sqrt(const HermitianOperator& p, double cutoff) {
  SpectralDecomposition s = spectral_decompose_relative(p);
  double top = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
  if (top < -kPsdTol) throw NotPositive("gen_inv_sqrt: eigenvalue " + std::to_string(top));
  if (cutoff < 0.0) cutoff = 1e-10 * std::max(top, 0.0);
  std::vector<double> vals(s.eigenvalues.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double g = s.eigenvalues[i];
    if (g < -kPsdTol) throw NotPositive("gen_inv_sqrt: eigenvalue " + std::to_string(g));
    vals[i] = g > cutoff ? 1.0 / std::sqrt(g) : 0.0;
  }
  return rebuild(s, vals);
}

HermitianOperator support_projector(const HermitianOperator& p, double cutoff) {
  SpectralDecomposition s = spectral_decompose_relative(p);
  double top = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
  if (cutoff < 0.0) cutoff = 1e-10 * std::max(top, 0.0);
  std::vector<double> vals(s.eigenvalues.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = s.eigenvalues[i] > cutoff ? 1.0 : 0.0;
  return rebuild(s, vals);
}

double trace_norm(const ComplexMatrix& x) {
  if (!x.square()) throw DimensionMismatch("trace_norm: matrix not square");
  if (is_hermitian(x, kHermTol)) {
    double t = 0.0;
    for (double g : eigenvalues_only(HermitianOperator{x})) t += std::abs(g);
    return t;
  }
  // Singular values via the Hermitian PSD product x^dagger x.
  double t = 0.0;
  for (double g : eigenvalues_only(hermitian(matmul(dagger(x), x), 1e-8)))
    t += std::sqrt(std::max(g, 0.0));
  return t;
}

double block_trace_norm(const std::vector<ComplexMatrix>& blocks) {
  double t = 0.0;
  for (const auto& b : blocks) t += trace_norm(b);
  return t;
}

}  // namespace povmsim
