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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "povmsim/errors.hpp"
#include "povmsim/matrix.hpp"
#include "support.hpp"

using namespace povmsim;
using test::random_density;
using test::random_hermitian;
using test::random_matrix;
using test::random_unitary;

TEST_CASE("kron identity and diagonal cases") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                     ComplexMatrix::identity(6)) == 0.0);
  const ComplexMatrix d1 = ComplexMatrix::diag(std::vector<double>{1.0, 0.0});
  const ComplexMatrix d2 = ComplexMatrix::diag(std::vector<double>{1.0, 1.0});
  CHECK(max_abs_diff(kron(d1, d2), ComplexMatrix::diag(std::vector<double>{1, 1, 0, 0})) == 0.0);
}

TEST_CASE("kron matches the four-loop index formula on random input") {
  RngStream rs(stream_key({11, 1}));
  const ComplexMatrix a = random_matrix(rs, 2, 2), b = random_matrix(rs, 2, 2);
  const ComplexMatrix k = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q)
          CHECK(std::abs(k(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) == 0.0);
}

TEST_CASE("tensor_power basics and budget") {
  CHECK(max_abs_diff(tensor_power(ComplexMatrix::identity(2), 3), ComplexMatrix::identity(8)) ==
        0.0);
  const ComplexMatrix p = ComplexMatrix::diag(std::vector<double>{0.3, 0.7});
  CHECK(max_abs_diff(tensor_power(p, 2),
                     ComplexMatrix::diag(std::vector<double>{0.09, 0.21, 0.21, 0.49})) < 1e-15);

  RngStream rs(stream_key({11, 2}));
  const DensityOperator rho = random_density(rs, 3);
  ComplexMatrix manual = rho.mat();
  for (int i = 1; i < 3; ++i) manual = kron(manual, rho.mat());
  CHECK(max_abs_diff(tensor_power(rho.mat(), 3), manual) == 0.0);
  CHECK(std::abs(trace(tensor_power(rho.mat(), 3)).real() - std::pow(trace(rho.mat()).real(), 3)) <
        1e-12);

  const std::size_t saved = budget_entries();
  set_budget_entries(100);
  CHECK_THROWS_AS(tensor_power(ComplexMatrix::identity(4), 2), BudgetExceeded);
  set_budget_entries(saved);
}

TEST_CASE("spectral_decompose diagonal and projector cases") {
  auto s = spectral_decompose(hermitian(ComplexMatrix::diag(std::vector<double>{0.25, 0.75})));
  CHECK(s.eigenvalues[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix plus(2, 2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  auto sp = spectral_decompose(hermitian(plus));
  CHECK(sp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spectral_decompose reconstruction, orthonormality, trace identity") {
  RngStream rs(stream_key({11, 3}));
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = 2 + rep % 5;
    const HermitianOperator h = random_hermitian(rs, d);
    auto s = spectral_decompose(h);

    double esum = 0.0;
    for (double g : s.eigenvalues) esum += g;
    CHECK(std::abs(esum - trace(h.mat).real()) < 1e-10);

    ComplexMatrix rec(d, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          rec(i, j) += s.eigenvalues[k] * s.eigenvectors(i, k) * std::conj(s.eigenvectors(j, k));
    CHECK(max_abs_diff(rec, h.mat) < 1e-9);

    const ComplexMatrix gram = matmul(dagger(s.eigenvectors), s.eigenvectors);
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(d)) < 1e-10);

    for (std::size_t k = 0; k + 1 < d; ++k) CHECK(s.eigenvalues[k] >= s.eigenvalues[k + 1]);
  }
}

TEST_CASE("op_sqrt basics and multiply-back oracle") {
  CHECK(max_abs_diff(op_sqrt(hermitian(ComplexMatrix::identity(3))).mat,
                     ComplexMatrix::identity(3)) < 1e-12);
  CHECK(max_abs_diff(op_sqrt(hermitian(ComplexMatrix::diag(std::vector<double>{4, 9}))).mat,
                     ComplexMatrix::diag(std::vector<double>{2, 3})) < 1e-12);
  RngStream rs(stream_key({11, 4}));
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator rho = random_density(rs, 2 + rep % 3);
    const ComplexMatrix r = op_sqrt(rho.op).mat;
    CHECK(max_abs_diff(matmul(r, r), rho.mat()) < 1e-8);
  }
  CHECK_THROWS_AS(op_sqrt(hermitian(ComplexMatrix::diag(std::vector<double>{1.0, -0.5}))),
                  NotPositive);
}

TEST_CASE("gen_inv_sqrt null space and projector oracle") {
  CHECK(max_abs_diff(gen_inv_sqrt(hermitian(ComplexMatrix::identity(2))).mat,
                     ComplexMatrix::identity(2)) < 1e-12);
  const ComplexMatrix g =
      gen_inv_sqrt(hermitian(ComplexMatrix::diag(std::vector<double>{2.0, 0.0}))).mat;
  CHECK(max_abs_diff(g, ComplexMatrix::diag(std::vector<double>{1.0 / std::sqrt(2.0), 0.0})) <
        1e-12);

  RngStream rs(stream_key({11, 5}));
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t d = 3;
    // Rank-deficient PSD: G G^dagger with a 3x2 factor.
    ComplexMatrix f = random_matrix(rs, d, 2);
    ComplexMatrix p = matmul(f, dagger(f));
    p = 0.5 * (p + dagger(p));
    const HermitianOperator ph = hermitian(p, 1e-8);
    const ComplexMatrix inv = gen_inv_sqrt(ph).mat;
    const ComplexMatrix proj = matmul(inv, matmul(p, inv));
    CHECK(max_abs_diff(proj, support_projector(ph).mat) < 1e-7);
    CHECK(max_abs_diff(matmul(proj, proj), proj) < 1e-7);
  }
}

TEST_CASE("trace_norm values and invariances") {
  CHECK(trace_norm(ComplexMatrix::diag(std::vector<double>{1.0, -1.0})) ==
        doctest::Approx(2.0).epsilon(1e-12));
  RngStream rs(stream_key({11, 6}));
  const DensityOperator rho = random_density(rs, 4);
  CHECK(trace_norm(rho.mat()) == doctest::Approx(1.0).epsilon(1e-9));

  const HermitianOperator a = random_hermitian(rs, 4);
  CHECK(trace_norm(a.mat) == doctest::Approx(trace_norm(basis_conjugate(a.mat))).epsilon(1e-10));

  const ComplexMatrix u = random_unitary(rs, 4);
  CHECK(trace_norm(matmul(dagger(u), matmul(a.mat, u))) ==
        doctest::Approx(trace_norm(a.mat)).epsilon(1e-9));
}

TEST_CASE("Hoelder-style bound |tr(AB)| <= trace_norm(AB)") {
  RngStream rs(stream_key({11, 7}));
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix g = random_matrix(rs, 3, 3);
    const ComplexMatrix a = matmul(g, dagger(g));  // PSD
    const ComplexMatrix b = random_hermitian(rs, 3).mat;
    const ComplexMatrix ab = matmul(a, b);
    CHECK(std::abs(trace(ab)) <= trace_norm(ab) + 1e-9);
  }
}

TEST_CASE("basis_conjugate involution, transpose on reals, eigenvalues preserved") {
  RngStream rs(stream_key({11, 8}));
  ComplexMatrix real(3, 3);
  for (auto& v : real.a) v = rs.gaussian();
  CHECK(max_abs_diff(basis_conjugate(real), real) == 0.0);  // real entries: conj is a no-op
  ComplexMatrix m = random_matrix(rs, 3, 3);
  CHECK(max_abs_diff(basis_conjugate(basis_conjugate(m)), m) == 0.0);

  const HermitianOperator h = random_hermitian(rs, 3);
  // For Hermitian h the entrywise conjugate equals the transpose.
  CHECK(max_abs_diff(basis_conjugate(h.mat), transpose(h.mat)) < 1e-15);
  auto s1 = spectral_decompose(h);
  auto s2 = spectral_decompose(hermitian(basis_conjugate(h.mat)));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(s1.eigenvalues[i] == doctest::Approx(s2.eigenvalues[i]).epsilon(1e-10));

  // (A - C)* = A* - C* exactly.
  const ComplexMatrix a = random_matrix(rs, 3, 3), c = random_matrix(rs, 3, 3);
  CHECK(max_abs_diff(basis_conjugate(a - c), basis_conjugate(a) - basis_conjugate(c)) == 0.0);
}

TEST_CASE("partial_trace product, Bell marginal, trace preservation") {
  RngStream rs(stream_key({11, 9}));
  const DensityOperator a = random_density(rs, 2), b = random_density(rs, 3);
  const ComplexMatrix joint = kron(a.mat(), b.mat());
  CHECK(max_abs_diff(partial_trace(joint, {2, 3}, {0}), a.mat()) < 1e-12);
  CHECK(max_abs_diff(partial_trace(joint, {2, 3}, {1}), b.mat()) < 1e-12);

  ComplexMatrix bell(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(max_abs_diff(partial_trace(bell, {2, 2}, {1}), 0.5 * ComplexMatrix::identity(2)) < 1e-15);

  const ComplexMatrix r = random_matrix(rs, 12, 12);
  const ComplexMatrix pt = partial_trace(r, {2, 3, 2}, {0, 2});
  CHECK(std::abs(trace(pt) - trace(r)) < 1e-12);
  CHECK(pt.rows == 4);
  CHECK_THROWS_AS(partial_trace(r, {2, 3}, {0}), DimensionMismatch);
}

TEST_CASE("block_trace_norm equals dense assembly") {
  CHECK(block_trace_norm({ComplexMatrix::diag(std::vector<double>{1.0}),
                          ComplexMatrix::diag(std::vector<double>{-1.0})}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  RngStream rs(stream_key({11, 10}));
  std::vector<ComplexMatrix> blocks;
  std::size_t total = 0;
  for (int i = 0; i < 4; ++i) {
    blocks.push_back(random_hermitian(rs, 2 + i % 2).mat);
    total += blocks.back().rows;
  }
  ComplexMatrix dense(total, total);
  std::size_t off = 0;
  for (const auto& blk : blocks) {
    for (std::size_t i = 0; i < blk.rows; ++i)
      for (std::size_t j = 0; j < blk.cols; ++j) dense(off + i, off + j) = blk(i, j);
    off += blk.rows;
  }
  CHECK(block_trace_norm(blocks) == doctest::Approx(trace_norm(dense)).epsilon(1e-10));
}

TEST_CASE("deterministic tie-breaking in degenerate spectra") {
  // I/2 is fully degenerate; two runs must produce identical output.
  const HermitianOperator h = hermitian(0.5 * ComplexMatrix::identity(4));
  auto s1 = spectral_decompose(h);
  auto s2 = spectral_decompose(h);
  CHECK(max_abs_diff(s1.eigenvectors, s2.eigenvectors) == 0.0);
}
