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
#include "povmsim/states.hpp"
#include "support.hpp"

using namespace povmsim;
using test::random_channel;
using test::random_density;
using test::random_matrix;
using test::random_povm;
using test::random_unitary;

namespace {

ComplexMatrix ketbra(std::size_t d, std::size_t i) {
  ComplexMatrix m(d, d);
  m(i, i) = 1.0;
  return m;
}

ComplexMatrix plus_projector() {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return m;
}

ComplexMatrix minus_projector() {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = -0.5;
  return m;
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

}  // namespace

TEST_CASE("validate_povm pass and fail") {
  CHECK(validate_povm(make_povm({"0", "1"}, {ketbra(2, 0), ketbra(2, 1)})).pass);
  const Povm bad = make_povm({"0", "1"}, {0.6 * ComplexMatrix::identity(2),
                                          0.6 * ComplexMatrix::identity(2)});
  const auto rep = validate_povm(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_identity_deviation == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("canonical_purification pure, maximally mixed, and marginal oracle") {
  const PurifiedState pure = canonical_purification(density(ketbra(2, 0)));
  CHECK(std::abs(pure.amp[0] - cxd(1.0, 0.0)) < 1e-12);

  const PurifiedState bell = canonical_purification(density(0.5 * ComplexMatrix::identity(2)));
  CHECK(std::abs(bell.amp[0] - cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(bell.amp[3] - cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(bell.amp[1]) < 1e-12);

  RngStream rs(stream_key({21, 1}));
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator rho = random_density(rs, 2 + rep % 3);
    const PurifiedState ps = canonical_purification(rho);
    CHECK(max_abs_diff(purified_marginal_sys(ps), rho.mat()) < 1e-9);
    double norm2 = 0.0;
    for (const auto& z : ps.amp) norm2 += std::norm(z);
    CHECK(std::abs(norm2 - 1.0) < 1e-10);
  }
}

TEST_CASE("conjugated inner product: <conj(x)|conj(y)> = <y|x>") {
  RngStream rs(stream_key({21, 2}));
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix x = random_matrix(rs, 4, 1), y = random_matrix(rs, 4, 1);
    cxd lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      lhs += std::conj(std::conj(x(i, 0))) * std::conj(y(i, 0));
      rhs += std::conj(y(i, 0)) * x(i, 0);
    }
    CHECK(std::abs(lhs - rhs) == 0.0);
  }
}

TEST_CASE("measurement_channel outcomes") {
  const DensityOperator mixed = density(0.5 * ComplexMatrix::identity(2));
  const Povm comp = make_povm({"0", "1"}, {ketbra(2, 0), ketbra(2, 1)});
  const CqState out = measurement_channel(comp, mixed);
  CHECK(out.blocks[0](0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cq_trace(out) == doctest::Approx(1.0).epsilon(1e-10));

  // {|+><+|, |-><-|} on diag(0.75, 0.25): both outcomes equally likely.
  const Povm pm = make_povm({"+", "-"}, {plus_projector(), minus_projector()});
  const CqState out2 =
      measurement_channel(pm, density(ComplexMatrix::diag(std::vector<double>{0.75, 0.25})));
  CHECK(out2.blocks[0](0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out2.blocks[1](0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

  RngStream rs(stream_key({21, 3}));
  const Povm rp = random_povm(rs, 3, 4);
  const CqState out3 = measurement_channel(rp, random_density(rs, 3));
  double total = 0.0;
  for (const auto& b : out3.blocks) {
    CHECK(b(0, 0).real() >= -1e-12);
    total += b(0, 0).real();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("reference_measurement_state closed form vs channel oracle") {
  // Commuting diagonal case.
  const DensityOperator rho = density(ComplexMatrix::diag(std::vector<double>{0.75, 0.25}));
  const Povm comp = make_povm({"0", "1"}, {ketbra(2, 0), ketbra(2, 1)});
  const CqState rms = reference_measurement_state(rho, comp);
  CHECK(max_abs_diff(rms.blocks[0], 0.75 * ketbra(2, 0)) < 1e-12);
  CHECK(max_abs_diff(rms.blocks[1], 0.25 * ketbra(2, 1)) < 1e-12);

  // Trivial POVM {I}: single block = conj(rho).
  const CqState triv = reference_measurement_state(rho, make_povm({"0"},
                                                                  {ComplexMatrix::identity(2)}));
  CHECK(max_abs_diff(triv.blocks[0], basis_conjugate(rho.mat())) < 1e-12);

  // Oracle: explicit (i (x) E^lambda) on the canonical purification.
  RngStream rs(stream_key({21, 4}));
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator s = random_density(rs, 3);
    const Povm p = random_povm(rs, 3, 3);
    const CqState closed = reference_measurement_state(s, p);
    const CqState faithful = measured_reference_blocks(canonical_purification(s), p);
    for (std::size_t y = 0; y < closed.size(); ++y) {
      CHECK(max_abs_diff(closed.blocks[y], faithful.blocks[y]) < 1e-10);
      const auto evs = eigenvalues_only(hermitian(closed.blocks[y], 1e-8));
      CHECK(evs.back() >= -kPsdTol);
    }
    CHECK(cq_trace(closed) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(cq_trace(rms) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("classical_postprocess identity, constant, monolithic oracle") {
  RngStream rs(stream_key({21, 5}));
  const DensityOperator s = random_density(rs, 2);
  const Povm mu = random_povm(rs, 2, 3, "w");
  const CqState cq = reference_measurement_state(s, mu);

  const CqState same = classical_postprocess(cq, identity_channel(mu.labels));
  for (std::size_t i = 0; i < cq.size(); ++i)
    CHECK(max_abs_diff(same.blocks[i], cq.blocks[i]) == 0.0);

  // Constant channel: single output accumulates every block.
  std::vector<double> ones(mu.size(), 1.0);
  const CqState merged =
      classical_postprocess(cq, make_channel(mu.labels, {"y0"}, std::move(ones)));
  ComplexMatrix total(2, 2);
  for (const auto& b : cq.blocks) total = total + b;
  CHECK(max_abs_diff(merged.blocks[0], total) < 1e-13);
  CHECK(std::abs(cq_trace(merged) - cq_trace(cq)) < 1e-12);

  // Monolithic oracle: E^{Y|W} o E^mu applied to the purification equals
  // measurement through the composed POVM sum_w p(y|w) mu_w.
  const ClassicalChannel ch = random_channel(rs, mu.labels, {"a", "b"});
  const CqState two_step = classical_postprocess(cq, ch);
  std::vector<ComplexMatrix> composed;
  for (std::size_t y = 0; y < 2; ++y) {
    ComplexMatrix e(2, 2);
    for (std::size_t w = 0; w < mu.size(); ++w) e = e + ch.at(w, y) * mu.elements[w].mat;
    composed.push_back(std::move(e));
  }
  const CqState direct = reference_measurement_state(s, make_povm({"a", "b"}, composed));
  for (std::size_t y = 0; y < 2; ++y)
    CHECK(max_abs_diff(two_step.blocks[y], direct.blocks[y]) < 1e-10);
}

TEST_CASE("holevo_information known values") {
  const DensityOperator z0 = density(ketbra(2, 0));
  CHECK(holevo_information(make_ensemble({"a", "b"}, {z0, z0}, {0.5, 0.5})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(holevo_information(make_ensemble({"0", "1"}, {z0, density(ketbra(2, 1))}, {0.5, 0.5})) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // Uniform {|0><0|, |+><+|}: chi = H2(cos^2(pi/8)), via the closed-form 2x2
  // oracle: eigenvalues (1 +- sqrt(1/2)) / 2.
  const double lam = 0.5 * (1.0 + std::sqrt(0.5));
  const double expected = binary_entropy(lam);
  CHECK(expected == doctest::Approx(0.6008760366928562).epsilon(1e-12));
  const double chi = holevo_information(
      make_ensemble({"0", "+"}, {z0, density(plus_projector())}, {0.5, 0.5}));
  CHECK(chi == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("holevo invariance under simultaneous unitary conjugation") {
  RngStream rs(stream_key({21, 6}));
  std::vector<DensityOperator> states;
  for (int i = 0; i < 3; ++i) states.push_back(random_density(rs, 3));
  const std::vector<double> pmf = test::random_pmf(rs, 3);
  const double chi0 = holevo_information(make_ensemble({"a", "b", "c"}, states, pmf));
  const ComplexMatrix u = random_unitary(rs, 3);
  std::vector<DensityOperator> rotated;
  for (const auto& s : states)
    rotated.push_back(density(matmul(u, matmul(s.mat(), dagger(u)))));
  const double chi1 = holevo_information(make_ensemble({"a", "b", "c"}, rotated, pmf));
  CHECK(chi0 == doctest::Approx(chi1).epsilon(1e-9));
}

TEST_CASE("purification_distance cases and the 1000-pair sweep") {
  RngStream rs(stream_key({21, 7}));
  const DensityOperator s = random_density(rs, 2);
  CHECK(purification_distance(s, s).exact < 1e-7);

  const auto ortho = purification_distance(density(ketbra(2, 0)), density(ketbra(2, 1)));
  CHECK(ortho.exact == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ortho.bound == doctest::Approx(2.0 * std::sqrt(2.0) * std::pow(2.0, 0.25)).epsilon(1e-12));

  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = rep % 2 ? 2 : 3;
    const DensityOperator a = random_density(rs, d), b = random_density(rs, d);
    const auto pd = purification_distance(a, b);
    CHECK(pd.exact <= pd.bound + 1e-9);
    // <phi_a|phi_b> = tr(sqrt(a) sqrt(b)), real nonnegative.
    const cxd overlap = purified_overlap(canonical_purification(a), canonical_purification(b));
    const double tr_form = trace(matmul(op_sqrt(a.op).mat, op_sqrt(b.op).mat)).real();
    CHECK(std::abs(overlap - cxd(tr_form, 0.0)) < 1e-10);
  }
}

TEST_CASE("apply_reference_isometry preserves the marginal and distances") {
  RngStream rs(stream_key({21, 8}));
  const DensityOperator rho = random_density(rs, 2);
  const PurifiedState ps = canonical_purification(rho);

  const PurifiedState same = apply_reference_isometry(ps, ComplexMatrix::identity(2));
  CHECK(max_abs_diff(purified_marginal_sys(same), rho.mat()) < 1e-9);

  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix v = random_unitary(rs, 2);
    const PurifiedState moved = apply_reference_isometry(ps, v);
    CHECK(max_abs_diff(purified_marginal_sys(moved), rho.mat()) < 1e-10);

    // The measured-reference distance is invariant under reference
    // isometries, for any POVM pair.
    const Povm lam = random_povm(rs, 2, 2);
    const Povm theta = random_povm(rs, 2, 2);
    const CqState l0 = measured_reference_blocks(ps, lam);
    const CqState t0 = measured_reference_blocks(ps, theta);
    const CqState l1 = measured_reference_blocks(moved, lam);
    const CqState t1 = measured_reference_blocks(moved, theta);
    CHECK(cq_trace_distance(l0, t0) == doctest::Approx(cq_trace_distance(l1, t1)).epsilon(1e-9));
  }
  ComplexMatrix notiso(2, 2);
  notiso(0, 0) = 2.0;
  CHECK_THROWS_AS(apply_reference_isometry(ps, notiso), NotIsometry);
}

TEST_CASE("ensemble_simulation_distance") {
  RngStream rs(stream_key({21, 9}));
  const DensityOperator a = random_density(rs, 2), b = random_density(rs, 2);
  ComplexMatrix avg = 0.5 * (a.mat() + b.mat());
  const DensityOperator rho = density(avg);
  const Ensemble e = make_ensemble({"0", "1"}, {a, b}, {0.5, 0.5});
  const Povm lam = random_povm(rs, 2, 3);

  CHECK(ensemble_simulation_distance(rho, lam, lam, e) == doctest::Approx(0.0).epsilon(1e-12));

  // Single-element ensemble reduces to sum_y |tr(lambda_y rho) - tr(theta_y rho)|.
  const Povm theta = random_povm(rs, 2, 3);
  const Ensemble single = make_ensemble({"0"}, {rho}, {1.0});
  double manual = 0.0;
  for (std::size_t y = 0; y < 3; ++y)
    manual += std::abs(trace(matmul(rho.mat(), lam.elements[y].mat)).real() -
                       trace(matmul(rho.mat(), theta.elements[y].mat)).real());
  CHECK(ensemble_simulation_distance(rho, lam, theta, single) ==
        doctest::Approx(manual).epsilon(1e-12));

  // Always below the purification-side distance sum_y ||sqrt(rho)(lambda_y -
  // theta_y)sqrt(rho)||_1.
  for (int rep = 0; rep < 20; ++rep) {
    const Povm l2 = random_povm(rs, 2, 3);
    const Povm t2 = random_povm(rs, 2, 3);
    const double lhs = ensemble_simulation_distance(rho, l2, t2, e);
    const ComplexMatrix r = op_sqrt(rho.op).mat;
    double rhs = 0.0;
    for (std::size_t y = 0; y < 3; ++y)
      rhs += trace_norm(matmul(r, matmul(l2.elements[y].mat - t2.elements[y].mat, r)));
    CHECK(lhs <= rhs + 1e-9);
  }

  const Ensemble off = make_ensemble({"0"}, {a}, {1.0});
  CHECK_THROWS_AS(ensemble_simulation_distance(rho, lam, lam, off), AverageMismatch);
}

TEST_CASE("density validation rejects bad inputs") {
  CHECK_THROWS(density(0.9 * ComplexMatrix::identity(2)));
  ComplexMatrix neg = ComplexMatrix::diag(std::vector<double>{1.5, -0.5});
  CHECK_THROWS_AS(density(std::move(neg)), NotPositive);
}
