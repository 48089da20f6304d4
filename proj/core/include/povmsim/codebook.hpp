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
#include <utility>
#include <vector>

#include "povmsim/typicality.hpp"

namespace povmsim {

struct PrimeField {
  int q = 2;
};

/// Throws unless q is prime.
PrimeField prime_field(int q);

int f_add(PrimeField f, int a, int b);
int f_mul(PrimeField f, int a, int b);
int f_neg(PrimeField f, int a);
/// Multiplicative inverse; DivisionByZero for a == 0 mod q.
int f_inv(PrimeField f, int a);

struct Codebook2D {
  std::size_t K = 0, M = 0;
  int n = 0;
  int alphabet = 0;
  std::vector<std::vector<int>> entries;  // index (k, m) -> entries[k * M + m]

  const std::vector<int>& at(std::size_t k, std::size_t m) const { return entries[k * M + m]; }
};

struct Codebook3D {
  std::size_t K = 0, M = 0, B = 0;
  int n = 0;
  int alphabet = 0;
  std::vector<std::vector<int>> entries;  // (k, m, b) -> entries[(k * M + m) * B + b]

  const std::vector<int>& at(std::size_t k, std::size_t m, std::size_t b) const {
    return entries[(k * M + m) * B + b];
  }
};

/// Drops the (always singleton) b index; requires B == 1.
Codebook2D flatten(const Codebook3D& cb);

/// K*M entries sampled i.i.d. from p^n. Entry (k, m) draws from its own
/// counter-based stream keyed by (seed, k, m), so generation order is
/// irrelevant.
Codebook2D sample_iid_codebook(const Pmf& p, int n, std::size_t K, std::size_t M,
                               std::uint64_t seed);

struct CosetCode {
  PrimeField field;
  std::vector<std::vector<int>> generator;  // l rows of length n
  std::vector<int> shift;

  /// codeword(u) = u G + shift for a message row vector u.
  std::vector<int> codeword(const std::vector<int>& msg) const;
};

struct CosetExponents {
  int lc = 0, lr = 0, lb = 0;  // base-q digit counts for k, m, b
};

/// Uniform random coset code: G and shift i.i.d. uniform over F_q. Entry
/// (k, m, b) encodes the base-q digits of k, then m, then b (least
/// significant digit first within each group). K = q^lc, M = q^lr, B = q^lb.
std::pair<CosetCode, Codebook3D> sample_coset_codebook(PrimeField f, int n, CosetExponents exps,
                                                       std::uint64_t seed);

struct PairwiseReport {
  bool uniform = false;       // joint distribution uniform over F_q^n x F_q^n
  bool degenerate = false;    // identical messages: diagonal support
  std::size_t draws = 0;      // enumerated (G, shift) count
  std::size_t cells = 0;      // q^{2n} joint cells
  std::size_t min_count = 0;  // per-cell count extremes over the enumeration
  std::size_t max_count = 0;
};

/// Exact joint distribution of (codeword(u1), codeword(u2)) over all (G,
/// shift) draws; u1, u2 given as message integers in [0, q^l).
PairwiseReport pairwise_independence_check(PrimeField f, int n, int l, std::uint64_t u1,
                                           std::uint64_t u2);

struct DecodeResult {
  enum class Status { Unique, None, Ambiguous };
  Status status = Status::None;
  std::size_t b = 0;  // valid when Unique
};

/// Scans column (k, m, .) for entries typical w.r.t. p at slack delta.
DecodeResult typical_index_decode(const Codebook3D& cb, std::size_t k, std::size_t m, const Pmf& p,
                                  double delta);

}  // namespace povmsim
