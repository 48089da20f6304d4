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
#include "povmsim/typicality.hpp"

namespace povmsim {

enum class CoverMode { Iid, Coset };

/// One covering-lemma configuration: an ensemble of states indexed by a
/// classical alphabet, a block length and a codeword rate in bits/letter.
/// Coset mode requires the alphabet size to be prime.
struct CoveringInstance {
  Pmf pmf;
  std::vector<DensityOperator> states;
  int n = 1;
  double rate = 0.0;
  CoverMode mode = CoverMode::Iid;

  std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
  DensityOperator average() const;
  /// Holevo information of the instance ensemble, bits.
  double chi() const;
  /// Codeword count for this (mode, n, rate): ceil(2^{nR}) i.i.d. entries, or
  /// all q^l coset entries with l = ceil(nR / log2 q).
  std::size_t codeword_count() const;
  /// The decay exponent base-2 bound reported for this mode:
  /// 2^{-(n/2)(R - chi)} for i.i.d. sampling and
  /// 2^{-(n/2)(R - chi - log2 q + H(p))} for uniform pairwise-independent
  /// coset sampling.
  double expected_bound() const;
};

/// Tensor-product state of one codeword.
ComplexMatrix codeword_state(const std::vector<DensityOperator>& states,
                             const std::vector<int>& codeword);

/// Uniform average of codeword states; trace 1.
ComplexMatrix mixture_iid(const std::vector<DensityOperator>& states,
                          const std::vector<std::vector<int>>& codewords);

/// Importance-weighted average with weights q^n p^n(x^n); trace 1 only in
/// expectation, deliberately left unnormalized.
ComplexMatrix mixture_weighted(PrimeField f, const Pmf& pmf,
                               const std::vector<DensityOperator>& states,
                               const std::vector<std::vector<int>>& codewords);

/// Draws the codeword list for one trial of the instance.
std::vector<std::vector<int>> draw_codewords(const CoveringInstance& inst, std::uint64_t seed);

/// Draws one codebook and returns || s^{(x)n} - s(A) ||_1.
double covering_trial(const CoveringInstance& inst, std::uint64_t seed);

struct CoveringResult {
  std::vector<double> distances;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double chi = 0.0;
  double bound = 0.0;
  int n = 0;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

CoveringResult covering_experiment(const CoveringInstance& inst, std::size_t trials,
                                   std::uint64_t seed);

/// The three-term split of the covering proof for one sampled codebook:
/// t1 = ||s(A) - w(A)||_1, t2 = ||w(A) - w||_1, t3 = ||w - s^{(x)n}||_1 with
/// w(A) the projector-compressed mixture and w its exact expectation
/// (exhaustive over typical x^n). dist <= t1 + t2 + t3 up to rounding.
struct T123 {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double dist = 0.0;
  double t2_bound = 0.0;  // 2^{-(n/2)(R - chi - c delta)}, c reported below
  double slack_constant = 0.0;
};

T123 t123_decomposition(const CoveringInstance& inst,
                        const std::vector<std::vector<int>>& codewords, double delta);

}  // namespace povmsim
