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

#include "povmsim/covering.hpp"

#include <cmath>
#include <map>
#include <string>

#include "povmsim/errors.hpp"
#include "povmsim/rng.hpp"

namespace povmsim {

namespace {

double pmf_entropy(const Pmf& p) {
  double h = 0.0;
  for (double v : p.p)
    if (v > kEntropyZero) h -= v * std::log2(v);
  return h;
}

void check_budget_dim(std::size_t d, int n) {
  double e = 1.0;
  for (int i = 0; i < 2 * n; ++i) e *= double(d);
  if (e > double(budget_entries()))
    throw BudgetExceeded("covering: d^{2n} exceeds the configured cap");
}

}  // namespace

DensityOperator CoveringInstance::average() const {
  ComplexMatrix avg(dim(), dim());
  for (std::size_t x = 0; x < states.size(); ++x) avg = avg + pmf.p[x] * states[x].mat();
  return density(std::move(avg));
}

double CoveringInstance::chi() const {
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < states.size(); ++x) labels.push_back(std::to_string(x));
  return holevo_information(make_ensemble(labels, states, pmf.p));
}

std::size_t CoveringInstance::codeword_count() const {
  if (mode == CoverMode::Iid) return std::size_t(std::ceil(std::exp2(n * rate)));
  const int q = int(pmf.size());
  const int l = int(std::ceil(n * rate / std::log2(double(q)) - 1e-12));
  std::size_t c = 1;
  for (int i = 0; i < l; ++i) c *= std::size_t(q);
  return c;
}

double CoveringInstance::expected_bound() const {
  double exponent = rate - chi();
  if (mode == CoverMode::Coset)
    exponent += pmf_entropy(pmf) - std::log2(double(pmf.size()));
  return std::exp2(-0.5 * n * exponent);
}

ComplexMatrix codeword_state(const std::vector<DensityOperator>& states,
                             const std::vector<int>& codeword) {
  ComplexMatrix out = states[std::size_t(codeword.front())].mat();
  for (std::size_t i = 1; i < codeword.size(); ++i)
    out = kron(out, states[std::size_t(codeword[i])].mat());
  return out;
}

ComplexMatrix mixture_iid(const std::vector<DensityOperator>& states,
                          const std::vector<std::vector<int>>& codewords) {
  if (codewords.empty()) throw Error("mixture_iid: empty codeword list");
  check_budget_dim(states.front().dim(), int(codewords.front().size()));
  ComplexMatrix acc = codeword_state(states, codewords.front());
  for (std::size_t m = 1; m < codewords.size(); ++m)
    acc = acc + codeword_state(states, codewords[m]);
  return (1.0 / double(codewords.size())) * acc;
}

ComplexMatrix mixture_weighted(PrimeField f, const Pmf& pmf,
                               const std::vector<DensityOperator>& states,
                               const std::vector<std::vector<int>>& codewords) {
  if (codewords.empty()) throw Error("mixture_weighted: empty codeword list");
  const int n = int(codewords.front().size());
  check_budget_dim(states.front().dim(), n);
  const std::size_t dn = std::size_t(std::llround(std::pow(double(states.front().dim()), n)));
  ComplexMatrix acc(dn, dn);
  const double qn = std::pow(double(f.q), n);
  for (const auto& cw : codewords) {
    double w = qn;
    for (int x : cw) w *= pmf.p[std::size_t(x)];
    if (w == 0.0) continue;
    acc = acc + w * codeword_state(states, cw);
  }
  return (1.0 / double(codewords.size())) * acc;
}

std::vector<std::vector<int>> draw_codewords(const CoveringInstance& inst, std::uint64_t seed) {
  const std::size_t count = inst.codeword_count();
  if (inst.mode == CoverMode::Iid) {
    Codebook2D cb = sample_iid_codebook(inst.pmf, inst.n, 1, count, seed);
    return cb.entries;
  }
  PrimeField f = prime_field(int(inst.pmf.size()));
  const int l = int(std::ceil(inst.n * inst.rate / std::log2(double(f.q)) - 1e-12));
  auto [code, cb] = sample_coset_codebook(f, inst.n, CosetExponents{0, l, 0}, seed);
  return cb.entries;
}

double covering_trial(const CoveringInstance& inst, std::uint64_t seed) {
  check_budget_dim(inst.dim(), inst.n);
  const auto codewords = draw_codewords(inst, seed);
  ComplexMatrix mix = inst.mode == CoverMode::Iid
                          ? mixture_iid(inst.states, codewords)
                          : mixture_weighted(prime_field(int(inst.pmf.size())), inst.pmf,
                                             inst.states, codewords);
  const ComplexMatrix target = tensor_power(inst.average().mat(), inst.n);
  return trace_norm(target - mix);
}

CoveringResult covering_experiment(const CoveringInstance& inst, std::size_t trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw Error("covering_experiment: trials must be >= 1");
  CoveringResult r;
  r.n = inst.n;
  r.rate = inst.rate;
  r.seed = seed;
  r.trials = trials;
  r.chi = inst.chi();
  r.bound = inst.expected_bound();
  r.distances.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t)
    r.distances.push_back(covering_trial(inst, stream_key({seed, 0x7121A1ULL, t})));
  double sum = 0.0;
  for (double d : r.distances) sum += d;
  r.mean = sum / double(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double d : r.distances) ss += (d - r.mean) * (d - r.mean);
    r.stddev = std::sqrt(ss / double(trials - 1));
  }
  return r;
}

T123 t123_decomposition(const CoveringInstance& inst,
                        const std::vector<std::vector<int>>& codewords, double delta) {
  if (inst.mode != CoverMode::Iid)
    throw Error("t123_decomposition: the three-term split applies to i.i.d. sampling");
  check_budget_dim(inst.dim(), inst.n);

  const DensityOperator avg = inst.average();
  const ComplexMatrix target = tensor_power(avg.mat(), inst.n);
  const TypicalProjector tp = typical_projector(avg, inst.n, delta);
  const ComplexMatrix pi = tp.dense();

  auto compressed = [&](const std::vector<int>& xn) {
    // pi pi_{x^n} s_{x^n} pi_{x^n} pi, zero when x^n is not typical.
    const ConditionalTypicalProjector cp =
        conditional_typical_projector(inst.pmf, inst.states, xn, delta);
    if (cp.zero) return ComplexMatrix::zero(target.rows, target.cols);
    return matmul(pi, matmul(cp.compressed_state(), pi));
  };

  // Codewords enter with multiplicity weights; repeated entries are computed
  // once, and a single-letter alphabet collapses to weight one exactly.
  std::map<std::vector<int>, std::size_t> multiplicity;
  for (const auto& cw : codewords) ++multiplicity[cw];
  ComplexMatrix mix(target.rows, target.cols);
  ComplexMatrix wa(target.rows, target.cols);
  for (const auto& [cw, count] : multiplicity) {
    const double weight = double(count) / double(codewords.size());
    mix = mix + weight * codeword_state(inst.states, cw);
    wa = wa + weight * compressed(cw);
  }

  // Exact expectation, exhaustively over all |X|^n sequences; non-typical
  // ones contribute nothing.
  const std::size_t alpha = inst.pmf.size();
  double count_d = 1.0;
  for (int i = 0; i < inst.n; ++i) count_d *= double(alpha);
  if (count_d > double(budget_entries()))
    throw BudgetExceeded("t123_decomposition: |X|^n enumeration too large");
  ComplexMatrix w(target.rows, target.cols);
  std::vector<int> xn(std::size_t(inst.n), 0);
  const std::size_t count = std::size_t(count_d);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (int i = inst.n; i-- > 0;) {
      xn[std::size_t(i)] = int(rem % alpha);
      rem /= alpha;
    }
    if (!is_typical(xn, inst.pmf, delta)) continue;
    double prob = 1.0;
    for (int x : xn) prob *= inst.pmf.p[std::size_t(x)];
    if (prob == 0.0) continue;
    w = w + prob * compressed(xn);
  }

  T123 out;
  out.t1 = trace_norm(mix - wa);
  out.t2 = trace_norm(wa - w);
  out.t3 = trace_norm(w - target);
  out.dist = trace_norm(mix - target);
  // Slack constant for the reported T2 exponent: conditional-projector
  // constant plus the unconditional one.
  ConditionalTypicalProjector probe =
      conditional_typical_projector(inst.pmf, inst.states, std::vector<int>(std::size_t(inst.n), 0),
                                    delta);
  out.slack_constant = probe.slack_constant + tp.slack_constant;
  out.t2_bound = std::exp2(-0.5 * inst.n * (inst.rate - inst.chi() - out.slack_constant * delta));
  return out;
}

}  // namespace povmsim
