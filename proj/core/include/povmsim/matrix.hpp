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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace povmsim {

using cxd = std::complex<double>;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

// Per-matrix entry budget for tensor-power experiments. Default 2^26 complex
// entries; the CLI overrides it from --budget-entries.
std::size_t budget_entries();
void set_budget_entries(std::size_t cap);

/// Dense complex matrix, row-major.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cxd> a;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  cxd& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const cxd& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  bool square() const { return rows == cols; }

  static ComplexMatrix zero(std::size_t r, std::size_t c) { return ComplexMatrix(r, c); }
  static ComplexMatrix identity(std::size_t d);
  static ComplexMatrix diag(const std::vector<double>& d);
  static ComplexMatrix diag(const std::vector<cxd>& d);
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cxd s, const ComplexMatrix& x);
inline ComplexMatrix operator*(double s, const ComplexMatrix& x) { return cxd(s, 0.0) * x; }
ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix dagger(const ComplexMatrix& x);
ComplexMatrix transpose(const ComplexMatrix& x);

cxd trace(const ComplexMatrix& x);
double max_abs(const ComplexMatrix& x);
double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);
double frobenius(const ComplexMatrix& x);
bool is_hermitian(const ComplexMatrix& x, double tol = kHermTol);
bool all_finite(const ComplexMatrix& x);

/// Entrywise complex conjugation in the fixed computational basis; equals the
/// transpose for Hermitian input, and is an involution.
ComplexMatrix basis_conjugate(const ComplexMatrix& x);

/// Kronecker product; block (i,j) of the result equals x(i,j)*y.
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

/// n-fold Kronecker power. Throws BudgetExceeded when the result would
/// exceed the configured entry cap.
ComplexMatrix tensor_power(const ComplexMatrix& x, int n);

/// Traces out the subsystems whose indices are not listed in `keep`.
/// `dims` are the local dimensions in tensor order; their product must match
/// the matrix dimension. Kept subsystems stay in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& x, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

/// Square matrix known to be Hermitian within kHermTol.
struct HermitianOperator {
  ComplexMatrix mat;
  std::size_t dim() const { return mat.rows; }
};

/// Validating constructor; throws DimensionMismatch / Error on violation.
HermitianOperator hermitian(ComplexMatrix m, double tol = kHermTol);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // sorted descending
  ComplexMatrix eigenvectors;       // orthonormal columns, phase-normalized
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. The rotation
/// sweeps stop once the off-diagonal Frobenius norm of the (max-entry scaled)
/// matrix drops below 1e-12; more than 100 sweeps is a ConvergenceFailure.
/// Eigenvalues are returned descending; ties under 1e-12 are ordered by
/// lexicographic comparison of the phase-normalized eigenvector entries.
SpectralDecomposition spectral_decompose(const HermitianOperator& h);

/// Same iteration driven further, to entrywise-relative off-diagonal
/// convergence (Demmel-Veselic). For graded PSD matrices this makes the
/// small eigenpairs accurate in the relative sense, which the generalized
/// inverse root needs near its cutoff.
SpectralDecomposition spectral_decompose_relative(const HermitianOperator& h);

/// Same Jacobi iteration without eigenvector accumulation; descending.
std::vector<double> eigenvalues_only(const HermitianOperator& h);

/// Eigendecomposition of f f^dagger computed from the factor f itself by
/// one-sided Jacobi (column orthogonalization of f^dagger). Eigenvalues are
/// squared column norms at convergence, so tiny eigenvalues keep full
/// relative accuracy; this is what keeps likelihood-POVM completions PSD
/// when S_k is badly graded.
SpectralDecomposition factored_gram_decompose(const ComplexMatrix& f);

/// PSD square root. Eigenvalues in (-kPsdTol, 0) are clamped to zero;
/// anything below -kPsdTol throws NotPositive.
HermitianOperator op_sqrt(const HermitianOperator& p);

/// Generalized inverse square root: eigenvalues above the cutoff map to
/// g^{-1/2}, the rest to 0. A negative cutoff selects the default
/// 1e-10 * (largest eigenvalue).
HermitianOperator gen_inv_sqrt(const HermitianOperator& p, double cutoff = -1.0);

/// Support projector of a PSD operator (same cutoff convention).
HermitianOperator support_projector(const HermitianOperator& p, double cutoff = -1.0);

/// Schatten-1 norm: sum of singular values; for Hermitian input the sum of
/// absolute eigenvalues.
double trace_norm(const ComplexMatrix& x);

double block_trace_norm(const std::vector<ComplexMatrix>& blocks);

}  // namespace povmsim
