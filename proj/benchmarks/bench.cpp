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

#include <benchmark/benchmark.h>

#include "povmsim/covering.hpp"
#include "povmsim/protocol.hpp"
#include "povmsim/rng.hpp"

namespace {

using namespace povmsim;

HermitianOperator random_hermitian(std::size_t d, std::uint64_t seed) {
  RngStream rs(stream_key({seed, d}));
  ComplexMatrix g(d, d);
  for (auto& v : g.a) v = cxd(rs.gaussian(), rs.gaussian());
  return hermitian(0.5 * (g + dagger(g)));
}

DensityOperator random_density(std::size_t d, std::uint64_t seed) {
  RngStream rs(stream_key({seed, d, 1}));
  ComplexMatrix g(d, d);
  for (auto& v : g.a) v = cxd(rs.gaussian(), rs.gaussian());
  ComplexMatrix p = matmul(g, dagger(g));
  return density((1.0 / trace(p).real()) * p);
}

void BM_spectral_decompose(benchmark::State& state) {
  const HermitianOperator h = random_hermitian(std::size_t(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(h));
}
BENCHMARK(BM_spectral_decompose)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_trace_norm(benchmark::State& state) {
  const HermitianOperator h = random_hermitian(std::size_t(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(h.mat));
}
BENCHMARK(BM_trace_norm)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_kron(benchmark::State& state) {
  const std::size_t d = std::size_t(state.range(0));
  const HermitianOperator a = random_hermitian(d, 3), b = random_hermitian(d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a.mat, b.mat));
}
BENCHMARK(BM_kron)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_covering_trial(benchmark::State& state) {
  CoveringInstance inst;
  inst.pmf = make_pmf({0.5, 0.5});
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  ComplexMatrix pl(2, 2);
  pl(0, 0) = pl(0, 1) = pl(1, 0) = pl(1, 1) = 0.5;
  inst.states = {density(std::move(z)), density(std::move(pl))};
  inst.n = int(state.range(0));
  inst.rate = 0.9;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(covering_trial(inst, ++seed));
}
BENCHMARK(BM_covering_trial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_build_likelihood_povm(benchmark::State& state) {
  const int n = int(state.range(0));
  const DensityOperator rho = random_density(2, 5);
  RngStream rs(stream_key({6}));
  ComplexMatrix e0(2, 2), e1(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  const Povm mu = make_povm({"0", "1"}, {e0, e1});
  const CompatibleTriple t = derive_beta_gamma(rho, mu, identity_channel(mu.labels));
  const std::size_t km = std::size_t(1) << n;
  const Codebook2D cb = sample_iid_codebook(t.pw_pmf(), n, km, km, 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_likelihood_povm(rho, t, cb, n));
}
BENCHMARK(BM_build_likelihood_povm)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
