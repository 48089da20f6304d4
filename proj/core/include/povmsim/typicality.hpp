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
#include <vector>

#include "povmsim/matrix.hpp"
#include "povmsim/states.hpp"

namespace povmsim {

struct Pmf {
  std::vector<double> p;  // alphabet is {0, ..., p.size()-1}
  std::size_t size() const { return p.size(); }
};

Pmf make_pmf(std::vector<double> p);

/// Strong (frequency) typicality: |freq(a) - p(a)| <= delta * p(a) for every
/// letter, and zero-probability letters never occur.
bool is_typical(const std::vector<int>& x, const Pmf& p, double delta);

/// Typical projector of s^{(x)n} in the product eigenbasis of s. The mask
/// selects eigenindex sequences y^n whose empirical log-probability is within
/// delta * slack_constant of the entropy (entropy typicality); sequences
/// hitting a zero eigenvalue are never selected. Stored as the single-letter
/// eigenbasis plus a 0/1 mask over d^n index sequences, not as a dense
/// matrix.
struct TypicalProjector {
  int n = 0;
  double delta = 0.0;
  std::size_t d = 0;                // single-letter dimension
  std::vector<double> eigprobs;     // descending eigenvalues of s
  ComplexMatrix basis;              // eigenvectors of s (columns)
  std::vector<std::uint8_t> mask;   // d^n sequence selector
  double entropy = 0.0;             // S(s) in bits
  double slack_constant = 0.0;      // sum over letters of |log2 p|

  std::size_t rank() const;
  ComplexMatrix dense() const;      // budget-checked materialization
  /// Probability of the selected sequences under the eigenvalue product
  /// distribution: tr(pi s^{(x)n} pi) without any dense algebra.
  double captured_mass() const;
  double max_selected_prob() const;
};

TypicalProjector typical_projector(const DensityOperator& s, int n, double delta);

/// Conditional typical projector of s_{x^n} in the product of the per-letter
/// eigenbases. Zero (empty mask) whenever x^n is not strongly typical for
/// px. slack_constant here includes the cross-term from frequency slack on
/// x^n, so the reported operator inequality holds by construction.
struct ConditionalTypicalProjector {
  std::vector<int> x;
  double delta = 0.0;
  bool zero = true;
  std::size_t d = 0;
  std::vector<std::vector<double>> letter_probs;  // per alphabet letter
  std::vector<ComplexMatrix> letter_bases;
  std::vector<std::uint8_t> mask;
  double slack_constant = 0.0;
  double mean_entropy = 0.0;  // sum_a p(a) S(s_a)

  std::size_t rank() const;
  ComplexMatrix dense() const;
  /// pi_{x^n} s_{x^n} pi_{x^n} materialized densely.
  ComplexMatrix compressed_state() const;
  double max_selected_prob() const;
};

ConditionalTypicalProjector conditional_typical_projector(
    const Pmf& px, const std::vector<DensityOperator>& states, const std::vector<int>& xn,
    double delta);

struct ProjectorBounds {
  double trace_pi = 0.0;
  double trace_bound = 0.0;  // 2^{n(S + c delta)}
  double max_eig = 0.0;      // largest eigenvalue of pi s^{(x)n} pi
  double eig_bound = 0.0;    // 2^{-n(S - c delta)}
  bool trace_ok = false;
  bool eig_ok = false;
};

ProjectorBounds projector_bounds(const TypicalProjector& tp, const DensityOperator& s);

}  // namespace povmsim
