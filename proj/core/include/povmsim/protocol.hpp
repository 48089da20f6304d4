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

#include <cstdint>
#include <string>
#include <vector>

#include "povmsim/codebook.hpp"
#include "povmsim/states.hpp"

namespace povmsim {

inline constexpr double kDegenerateTol = 1e-14;

/// (W, mu_W, p_{Y|W}) with the derived outcome distribution p_W, the
/// normalized post-measurement states beta_w = sqrt(rho) mu_w sqrt(rho) /
/// p_W(w) and the classical-quantum states gamma_w = sum_y p(y|w) beta_w (x)
/// |y><y|. Labels with p_W(w) below kDegenerateTol keep their slot in the
/// alphabet (coset codebooks may still index them) but carry no derived
/// state.
struct CompatibleTriple {
  std::vector<std::string> w_labels;
  Povm mu;
  ClassicalChannel channel;
  std::vector<double> p_w;
  std::vector<bool> retained;
  std::vector<ComplexMatrix> beta;       // valid where retained
  std::vector<ComplexMatrix> beta_root;  // b_w with beta_w = b_w b_w^dagger
  std::vector<CqState> gamma;            // valid where retained
  std::vector<std::string> dropped;

  std::size_t alphabet() const { return w_labels.size(); }
  Pmf pw_pmf() const;
  /// gamma-bar = sum_w p_W(w) gamma_w, the single-letter target state.
  CqState gamma_average() const;
};

CompatibleTriple derive_beta_gamma(const DensityOperator& rho, const Povm& mu,
                                   const ClassicalChannel& channel);

struct CompatibilityReport {
  bool pass = false;
  double max_block_deviation = 0.0;  // worst y-block of the splitting identity
  double rho_deviation = 0.0;        // || rho - sum_w p_W(w) beta_w ||_max
};

/// Checks sum_w p(y|w) sqrt(rho) mu_w sqrt(rho) = sqrt(rho) lambda_y
/// sqrt(rho) blockwise (1e-8) and the rho resummation.
CompatibilityReport check_compatibility(const DensityOperator& rho, const Povm& lambda,
                                        const CompatibleTriple& t);

struct RatePair {
  double chi_beta = 0.0;   // chi(beta_w; p_W), bits: the message-rate threshold
  double chi_gamma = 0.0;  // chi(gamma_w; p_W), bits: the sum-rate threshold
};

RatePair rates(const CompatibleTriple& t);

/// Likelihood POVM: per common-randomness index k the operators
/// theta_{k,e} = S_k^{-1/2} E_e S_k^{-1/2} with E_e = (x)_i beta_{w_i} over
/// codeword e and S_k the sum of the E_e, plus the completion theta_{k,0}.
/// Entries with tr(omega mu_e) below kDegenerateTol are skipped and their
/// mass folds into theta_{k,0}. The same kernel serves the unstructured
/// (B = 1) and structured builds, so a B = 1 structured build is bitwise
/// identical to the 2-D build on the flattened book.
struct LikelihoodPovm {
  int n = 0;
  std::size_t K = 0, M = 0, B = 1;
  Codebook3D codebook;
  std::vector<ComplexMatrix> s_k;
  std::vector<std::vector<ComplexMatrix>> theta;  // per k, index m * B + b
  std::vector<ComplexMatrix> theta0;
  std::vector<std::vector<std::uint8_t>> skipped;  // per k, per entry
  std::size_t skipped_total = 0;

  const ComplexMatrix& theta_at(std::size_t k, std::size_t m, std::size_t b = 0) const {
    return theta[k][m * B + b];
  }
  /// The per-k family {theta_{k,0..M*B}} as a labeled Povm, for validation.
  Povm family(std::size_t k) const;
};

LikelihoodPovm build_likelihood_povm(const DensityOperator& rho, const CompatibleTriple& t,
                                     const Codebook2D& cb, int n);
LikelihoodPovm build_structured_povm(const DensityOperator& rho, const CompatibleTriple& t,
                                     const Codebook3D& cb, int n);

/// Decoder weights Delta_{y^n | k,m} = prod_i p(y_i | c(k,m)_i).
struct DecoderPovm {
  ClassicalChannel channel;
  Codebook2D codebook;

  double weight(std::size_t k, std::size_t m, const std::vector<int>& yseq) const;
  double row_sum(std::size_t k, std::size_t m) const;  // exhaustive, small |Y|^n only
};

DecoderPovm build_decoder(const CompatibleTriple& t, const Codebook2D& cb);

/// alpha_O: blocks sqrt(omega) lambda_{y^n} sqrt(omega) over y^n labels
/// (transpose-free convention; per-block trace norms are unaffected).
/// Equals the n-fold cq tensor power of the single-letter state.
CqState alpha_o(const DensityOperator& rho, const Povm& lambda, int n);

/// alpha: (1/KM) sum_{k,m} gamma_{c(k,m)}, the protocol's simulated output
/// evaluated in closed form. Throws on a degenerate codeword.
CqState alpha_direct(const DensityOperator& rho, const CompatibleTriple& t, const Codebook2D& cb,
                     int n);

/// The same state obtained the long way: the canonical purification of
/// sigma_{A^nK} evolved through E^theta, the decoder channel and tr_K.
/// Materializes the full (d^n K)-dimensional composition; small instances
/// only. Serves as the independent oracle for alpha_direct.
CqState alpha_via_channels(const DensityOperator& rho, const LikelihoodPovm& lik,
                           const DecoderPovm& dec);

/// Both routes to alpha_S: the effective POVM Delta o theta_e applied to the
/// purification of omega, and the full composition applied to the
/// purification of rho_K^{(x)n}. The two agree identically; returned as a
/// pair (effective, composed) so tests can assert it.
std::pair<CqState, CqState> alpha_s_two_routes(const DensityOperator& rho,
                                               const LikelihoodPovm& lik, const DecoderPovm& dec);

/// sigma_{A^nK} = (1/K) sum_k T_k (x) |k><k| with T_k = S_k / (M B), plus
/// term2_raw = || sigma - rho_K^{(x)n} ||_1 computed blockwise as
/// (1/K) sum_k || omega - T_k ||_1.
std::pair<CqState, double> sigma_ank(const DensityOperator& rho, const LikelihoodPovm& lik);

struct SimulationReport {
  int n = 0;
  std::size_t K = 0, M = 0, B = 1;
  double C = 0.0, R = 0.0;
  double chi_beta = 0.0, chi_gamma = 0.0;  // rate thresholds for the mode
  double term1 = 0.0;                      // || alpha_O - alpha ||_1
  double term2_raw = 0.0;                  // || sigma_{A^nK} - rho_K^{(x)n} ||_1
  double term2 = 0.0;                      // 4 * term2_raw^{1/4}
  double total = 0.0;                      // term1 + term2
  double decode_failure_rate = 0.0;        // structured mode only
  std::uint64_t seed = 0;
};

/// Unstructured end-to-end run: samples an i.i.d. codebook with
/// K = ceil(2^{nC}), M = ceil(2^{nR}), builds the POVM and decoder, and
/// assembles the triangle-inequality bound on || alpha_O - alpha_S ||_1.
SimulationReport simulate_end_to_end(const DensityOperator& rho, const Povm& lambda,
                                     const CompatibleTriple& t, int n, double C, double R,
                                     std::uint64_t seed);

/// Coset-structured run: W must be a prime field. Only m is communicated;
/// the decoder recovers b by scanning for the unique p_W-typical entry, and
/// failed cells (no or ambiguous candidate) fall back to b = 0 and count
/// toward decode_failure_rate. The reported chi columns carry the structured
/// thresholds chi + log2 q - H(p_W).
SimulationReport simulate_structured(const DensityOperator& rho, const Povm& lambda,
                                     const CompatibleTriple& t, int n, CosetExponents exps,
                                     double delta, std::uint64_t seed);

}  // namespace povmsim
