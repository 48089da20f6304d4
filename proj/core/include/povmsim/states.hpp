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

#include <string>
#include <vector>

#include "povmsim/matrix.hpp"

namespace povmsim {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPovmSumTol = 1e-8;
inline constexpr double kEntropyZero = 1e-14;

struct DensityOperator {
  HermitianOperator op;
  std::size_t dim() const { return op.dim(); }
  const ComplexMatrix& mat() const { return op.mat; }
};

/// Validates trace-1 (1e-9) and PSD (-1e-9 on eigenvalues).
DensityOperator density(ComplexMatrix m);

/// Labeled family of Hermitian operators on a common space. POVM-ness
/// (positivity, completeness) is checked by validate_povm, not construction,
/// so intentionally broken families can be fed to the validator.
struct Povm {
  std::vector<std::string> labels;
  std::vector<HermitianOperator> elements;
  std::size_t size() const { return elements.size(); }
  std::size_t dim() const { return elements.empty() ? 0 : elements.front().dim(); }
};

Povm make_povm(std::vector<std::string> labels, std::vector<ComplexMatrix> elements);

struct PovmValidation {
  double max_negative_eigenvalue = 0.0;  // most negative eigenvalue across elements
  double max_identity_deviation = 0.0;   // max-entry deviation of the sum from I
  bool pass = false;
};

PovmValidation validate_povm(const Povm& p);

struct Ensemble {
  std::vector<std::string> labels;
  std::vector<DensityOperator> states;
  std::vector<double> pmf;
};

Ensemble make_ensemble(std::vector<std::string> labels, std::vector<DensityOperator> states,
                       std::vector<double> pmf);

/// Pure state on reference (x) system, amplitude at (r, s) stored at
/// r * dim_sys + s.
struct PurifiedState {
  std::size_t dim_ref = 0;
  std::size_t dim_sys = 0;
  std::vector<cxd> amp;
};

/// Canonical purification sum_i sqrt(g_i) |conj(u_i)> (x) |u_i> built from the
/// spectral decomposition; deterministic thanks to the eigensolver's phase
/// convention. Amplitudes are renormalized to exact unit norm.
PurifiedState canonical_purification(const DensityOperator& s);

/// Reference-side partial trace of |psi><psi| (recovers the purified state).
ComplexMatrix purified_marginal_sys(const PurifiedState& ps);

cxd purified_overlap(const PurifiedState& x, const PurifiedState& y);

/// Block-diagonal classical-quantum state: one matrix block per classical
/// label. The full tensor with the classical register is never materialized.
struct CqState {
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> blocks;
  std::size_t size() const { return blocks.size(); }
};

double cq_trace(const CqState& s);
CqState cq_scale(const CqState& s, double f);
CqState cq_add(const CqState& x, const CqState& y);  // aligns by label union
CqState cq_kron(const CqState& x, const CqState& y); // labels joined with ','
CqState cq_tensor_power(const CqState& x, int n);
/// Trace distance via the block structure (sum of per-block trace norms).
double cq_trace_distance(const CqState& x, const CqState& y);
ComplexMatrix cq_assemble(const CqState& s);  // dense block-diagonal matrix

struct ClassicalChannel {
  std::vector<std::string> in_labels;
  std::vector<std::string> out_labels;
  std::vector<double> p;  // row-major |in| x |out|, rows sum to 1
  double at(std::size_t in, std::size_t out) const { return p[in * out_labels.size() + out]; }
};

ClassicalChannel make_channel(std::vector<std::string> in_labels,
                              std::vector<std::string> out_labels, std::vector<double> p);
ClassicalChannel identity_channel(const std::vector<std::string>& labels);

/// Measurement channel: s -> sum_y tr(s lambda_y) |y><y| as a CqState of 1x1
/// blocks.
CqState measurement_channel(const Povm& p, const DensityOperator& s);

/// Reference-side post-measurement state of the canonical purification:
/// block y = basis_conjugate(sqrt(s) lambda_y sqrt(s)).
CqState reference_measurement_state(const DensityOperator& s, const Povm& p);

/// Faithful evaluation of (i_ref (x) E^povm)(|psi><psi|) for an arbitrary
/// purified state; the independent oracle for the closed form above.
CqState measured_reference_blocks(const PurifiedState& ps, const Povm& p);

CqState classical_postprocess(const CqState& cq, const ClassicalChannel& ch);

/// Von Neumann entropy in bits; eigenvalues below 1e-14 count as exact zeros.
double von_neumann_entropy(const HermitianOperator& h);
double entropy_of_blocks(const std::vector<ComplexMatrix>& blocks);

/// Holevo information of an ensemble, in bits.
double holevo_information(const Ensemble& e);
/// Holevo information of a family of cq states with the given weights,
/// computed blockwise.
double holevo_information_cq(const std::vector<CqState>& states, const std::vector<double>& pmf);

struct PurificationDistance {
  double exact = 0.0;  // 2 sqrt(1 - |<phi_s|phi_r>|^2)
  double bound = 0.0;  // 2 sqrt(2) * ||s - r||_1^{1/4}
};

PurificationDistance purification_distance(const DensityOperator& s, const DensityOperator& r);

/// Applies an isometry (v^dagger v = I within 1e-10) to the reference factor;
/// the system marginal is unchanged.
PurifiedState apply_reference_isometry(const PurifiedState& ps, const ComplexMatrix& v);

/// sum_k sum_y | p(k) tr(lambda_y s_k) - p(k) tr(theta_y s_k) | for an
/// ensemble averaging to rho.
double ensemble_simulation_distance(const DensityOperator& rho, const Povm& lam, const Povm& theta,
                                    const Ensemble& e);

}  // namespace povmsim
