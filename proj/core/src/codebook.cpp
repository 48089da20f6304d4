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

#include "povmsim/codebook.hpp"

#include <cmath>
#include <string>

#include "povmsim/errors.hpp"
#include "povmsim/rng.hpp"

namespace povmsim {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Base-q digits, least significant first, fixed width.
void digits_of(std::uint64_t v, int q, int width, std::vector<int>& out) {
  for (int i = 0; i < width; ++i) {
    out.push_back(int(v % std::uint64_t(q)));
    v /= std::uint64_t(q);
  }
}

}  // namespace

PrimeField prime_field(int q) {
  if (!is_prime(q)) throw Error("prime_field: " + std::to_string(q) + " is not prime");
  return PrimeField{q};
}

int f_add(PrimeField f, int a, int b) { return (a + b) % f.q; }
int f_mul(PrimeField f, int a, int b) { return (a * b) % f.q; }
int f_neg(PrimeField f, int a) { return (f.q - a % f.q) % f.q; }

int f_inv(PrimeField f, int a) {
  a %= f.q;
  if (a == 0) throw DivisionByZero("f_inv: zero has no inverse");
  // Fermat: a^{q-2} mod q.
  int r = 1, base = a, e = f.q - 2;
  while (e > 0) {
    if (e & 1) r = (r * base) % f.q;
    base = (base * base) % f.q;
    e >>= 1;
  }
  return r;
}

Codebook2D flatten(const Codebook3D& cb) {
  if (cb.B != 1) throw Error("flatten: codebook has B > 1");
  Codebook2D out;
  out.K = cb.K;
  out.M = cb.M;
  out.n = cb.n;
  out.alphabet = cb.alphabet;
  out.entries = cb.entries;
  return out;
}

Codebook2D sample_iid_codebook(const Pmf& p, int n, std::size_t K, std::size_t M,
                               std::uint64_t seed) {
  Codebook2D cb;
  cb.K = K;
  cb.M = M;
  cb.n = n;
  cb.alphabet = int(p.size());
  cb.entries.resize(K * M);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t m = 0; m < M; ++m) {
      RngStream rs(stream_key({seed, k, m, 0}));
      auto& e = cb.entries[k * M + m];
      e.reserve(n);
      for (int i = 0; i < n; ++i) e.push_back(rs.sample(p.p));
    }
  return cb;
}

std::vector<int> CosetCode::codeword(const std::vector<int>& msg) const {
  const std::size_t n = shift.size();
  std::vector<int> w = shift;
  for (std::size_t r = 0; r < msg.size(); ++r) {
    const int u = msg[r] % field.q;
    if (u == 0) continue;
    for (std::size_t j = 0; j < n; ++j) w[j] = (w[j] + u * generator[r][j]) % field.q;
  }
  return w;
}

std::pair<CosetCode, Codebook3D> sample_coset_codebook(PrimeField f, int n, CosetExponents exps,
                                                       std::uint64_t seed) {
  const int l = exps.lc + exps.lr + exps.lb;
  CosetCode code;
  code.field = f;
  {
    RngStream rs(stream_key({seed, 0xC05E7ULL}));
    code.generator.assign(std::size_t(l), std::vector<int>(std::size_t(n)));
    for (auto& row : code.generator)
      for (auto& v : row) v = int(rs.below(std::uint64_t(f.q)));
    code.shift.resize(std::size_t(n));
    for (auto& v : code.shift) v = int(rs.below(std::uint64_t(f.q)));
  }

  Codebook3D cb;
  cb.K = ipow(std::size_t(f.q), exps.lc);
  cb.M = ipow(std::size_t(f.q), exps.lr);
  cb.B = ipow(std::size_t(f.q), exps.lb);
  cb.n = n;
  cb.alphabet = f.q;
  cb.entries.resize(cb.K * cb.M * cb.B);
  std::vector<int> msg;
  for (std::size_t k = 0; k < cb.K; ++k)
    for (std::size_t m = 0; m < cb.M; ++m)
      for (std::size_t b = 0; b < cb.B; ++b) {
        msg.clear();
        digits_of(k, f.q, exps.lc, msg);
        digits_of(m, f.q, exps.lr, msg);
        digits_of(b, f.q, exps.lb, msg);
        cb.entries[(k * cb.M + m) * cb.B + b] = code.codeword(msg);
      }
  return {std::move(code), std::move(cb)};
}

PairwiseReport pairwise_independence_check(PrimeField f, int n, int l, std::uint64_t u1,
                                           std::uint64_t u2) {
  PairwiseReport rep;
  const std::size_t q = std::size_t(f.q);
  const std::size_t gcells = ipow(q, l * n);
  const std::size_t scells = ipow(q, n);
  const double draws = double(gcells) * double(scells);
  if (draws > double(budget_entries()))
    throw BudgetExceeded("pairwise_independence_check: enumeration too large");
  rep.draws = gcells * scells;
  rep.cells = scells * scells;
  rep.degenerate = (u1 == u2);

  std::vector<int> m1, m2;
  digits_of(u1, f.q, l, m1);
  digits_of(u2, f.q, l, m2);

  std::vector<std::size_t> counts(rep.cells, 0);
  CosetCode code;
  code.field = f;
  code.generator.assign(std::size_t(l), std::vector<int>(std::size_t(n)));
  code.shift.assign(std::size_t(n), 0);
  for (std::size_t g = 0; g < gcells; ++g) {
    std::size_t rem = g;
    for (int r = 0; r < l; ++r)
      for (int j = 0; j < n; ++j) {
        code.generator[r][j] = int(rem % q);
        rem /= q;
      }
    for (std::size_t s = 0; s < scells; ++s) {
      std::size_t srem = s;
      for (int j = 0; j < n; ++j) {
        code.shift[j] = int(srem % q);
        srem /= q;
      }
      std::size_t i1 = 0, i2 = 0;
      const auto w1 = code.codeword(m1);
      const auto w2 = code.codeword(m2);
      for (int j = 0; j < n; ++j) {
        i1 = i1 * q + std::size_t(w1[j]);
        i2 = i2 * q + std::size_t(w2[j]);
      }
      ++counts[i1 * scells + i2];
    }
  }
  rep.min_count = counts[0];
  rep.max_count = counts[0];
  for (auto c : counts) {
    rep.min_count = std::min(rep.min_count, c);
    rep.max_count = std::max(rep.max_count, c);
  }
  rep.uniform = rep.min_count == rep.max_count;
  return rep;
}

DecodeResult typical_index_decode(const Codebook3D& cb, std::size_t k, std::size_t m, const Pmf& p,
                                  double delta) {
  DecodeResult r;
  bool found = false;
  for (std::size_t b = 0; b < cb.B; ++b) {
    if (!is_typical(cb.at(k, m, b), p, delta)) continue;
    if (found) {
      r.status = DecodeResult::Status::Ambiguous;
      return r;
    }
    found = true;
    r.b = b;
  }
  r.status = found ? DecodeResult::Status::Unique : DecodeResult::Status::None;
  return r;
}

}  // namespace povmsim
