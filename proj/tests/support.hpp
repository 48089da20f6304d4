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
#include "povmsim/rng.hpp"
#include "povmsim/states.hpp"

namespace povmsim::test {

inline ComplexMatrix random_matrix(RngStream& rs, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (auto& v : m.a) v = cxd(rs.gaussian(), rs.gaussian());
  return m;
}

inline HermitianOperator random_hermitian(RngStream& rs, std::size_t d) {
  ComplexMatrix g = random_matrix(rs, d, d);
  ComplexMatrix h = 0.5 * (g + dagger(g));
  return hermitian(std::move(h));
}

inline DensityOperator random_density(RngStream& rs, std::size_t d) {
  ComplexMatrix g = random_matrix(rs, d, d);
  ComplexMatrix p = matmul(g, dagger(g));
  const double t = trace(p).real();
  return density((1.0 / t) * p);
}

inline ComplexMatrix random_unitary(RngStream& rs, std::size_t d) {
  // Gram-Schmidt on a Gaussian matrix.
  ComplexMatrix g = random_matrix(rs, d, d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cxd dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(g(r, prev)) * g(r, c);
      for (std::size_t r = 0; r < d; ++r) g(r, c) -= dot * g(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) g(r, c) /= norm;
  }
  return g;
}

/// Random POVM via the square-root normalization of random PSD operators.
inline Povm random_povm(RngStream& rs, std::size_t d, std::size_t count,
                        const std::string& prefix = "") {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total(d, d);
  for (std::size_t i = 0; i < count; ++i) {
    ComplexMatrix g = random_matrix(rs, d, d);
    raw.push_back(matmul(g, dagger(g)));
    total = total + raw.back();
  }
  const ComplexMatrix t_inv = gen_inv_sqrt(hermitian(total, 1e-8)).mat;
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> elems;
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(prefix + std::to_string(i));
    ComplexMatrix e = matmul(t_inv, matmul(raw[i], t_inv));
    elems.push_back(0.5 * (e + dagger(e)));
  }
  return make_povm(std::move(labels), std::move(elems));
}

inline std::vector<double> random_pmf(RngStream& rs, std::size_t count) {
  std::vector<double> p(count);
  double s = 0.0;
  for (auto& v : p) {
    v = rs.uniform() + 0.05;
    s += v;
  }
  for (auto& v : p) v /= s;
  // Exact renormalization of the rounding tail.
  double s2 = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) s2 += p[i];
  p[count - 1] = 1.0 - s2;
  return p;
}

inline ClassicalChannel random_channel(RngStream& rs, std::vector<std::string> in,
                                       std::vector<std::string> out) {
  std::vector<double> p;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto row = random_pmf(rs, out.size());
    p.insert(p.end(), row.begin(), row.end());
  }
  return make_channel(std::move(in), std::move(out), std::move(p));
}

}  // namespace povmsim::test
