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

#include "povmsim/typicality.hpp"

#include <cmath>
#include <string>

#include "povmsim/errors.hpp"

namespace povmsim {

namespace {

double pow_size(std::size_t base, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= double(base);
  return v;
}

std::size_t checked_sequence_count(std::size_t d, int n) {
  if (pow_size(d, n) > double(budget_entries()))
    throw BudgetExceeded("typicality: " + std::to_string(d) + "^" + std::to_string(n) +
                         " index sequences exceed the configured cap");
  std::size_t c = 1;
  for (int i = 0; i < n; ++i) c *= d;
  return c;
}

// Mixed-radix digits of idx, base d, most significant letter first.
void decode_seq(std::size_t idx, std::size_t d, int n, std::vector<int>& out) {
  out.resize(n);
  for (int i = n; i-- > 0;) {
    out[i] = int(idx % d);
    idx /= d;
  }
}

ComplexMatrix mask_dense(const std::vector<ComplexMatrix>& bases,
                         const std::vector<std::uint8_t>& mask,
                         const std::vector<double>* probs_by_seq) {
  // U diag(mask .* probs) U^dagger with U the tensor of per-letter bases.
  ComplexMatrix u = bases.front();
  for (std::size_t i = 1; i < bases.size(); ++i) u = kron(u, bases[i]);
  const std::size_t dn = u.rows;
  if (dn * dn > budget_entries()) throw BudgetExceeded("typicality: dense projector too large");
  ComplexMatrix r(dn, dn);
  for (std::size_t k = 0; k < dn; ++k) {
    if (!mask[k]) continue;
    const double w = probs_by_seq ? (*probs_by_seq)[k] : 1.0;
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < dn; ++i) {
      const cxd ui = w * u(i, k);
      if (ui == cxd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < dn; ++j) r(i, j) += ui * std::conj(u(j, k));
    }
  }
  return r;
}

}  // namespace

Pmf make_pmf(std::vector<double> p) {
  double s = 0.0;
  for (double v : p) {
    if (v < 0.0) throw Error("make_pmf: negative probability");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error("make_pmf: sums to " + std::to_string(s));
  return Pmf{std::move(p)};
}

bool is_typical(const std::vector<int>& x, const Pmf& p, double delta) {
  std::vector<double> freq(p.size(), 0.0);
  for (int a : x) {
    if (a < 0 || std::size_t(a) >= p.size()) return false;
    freq[a] += 1.0;
  }
  const double n = double(x.size());
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.p[a] == 0.0) {
      if (freq[a] > 0.0) return false;
    } else if (std::abs(freq[a] / n - p.p[a]) > delta * p.p[a]) {
      return false;
    }
  }
  return true;
}

std::size_t TypicalProjector::rank() const {
  std::size_t r = 0;
  for (auto m : mask) r += m;
  return r;
}

ComplexMatrix TypicalProjector::dense() const {
  std::vector<ComplexMatrix> bases(std::size_t(n), basis);
  return mask_dense(bases, mask, nullptr);
}

double TypicalProjector::captured_mass() const {
  double total = 0.0;
  std::vector<int> seq;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    decode_seq(k, d, n, seq);
    double pr = 1.0;
    for (int y : seq) pr *= eigprobs[y];
    total += pr;
  }
  return total;
}

double TypicalProjector::max_selected_prob() const {
  double best = 0.0;
  std::vector<int> seq;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    decode_seq(k, d, n, seq);
    double pr = 1.0;
    for (int y : seq) pr *= eigprobs[y];
    best = std::max(best, pr);
  }
  return best;
}

TypicalProjector typical_projector(const DensityOperator& s, int n, double delta) {
  if (n < 1) throw Error("typical_projector: n must be >= 1");
  TypicalProjector tp;
  tp.n = n;
  tp.delta = delta;
  tp.d = s.dim();

  SpectralDecomposition scd = spectral_decompose(s.op);
  tp.eigprobs = scd.eigenvalues;
  for (auto& g : tp.eigprobs) g = std::max(g, 0.0);
  tp.basis = scd.eigenvectors;

  std::vector<double> logp(tp.d, 0.0);
  for (std::size_t y = 0; y < tp.d; ++y) {
    const double g = tp.eigprobs[y];
    if (g > kEntropyZero) {
      logp[y] = -std::log2(g);
      tp.entropy += g * logp[y];
      tp.slack_constant += std::abs(std::log2(g));
    } else {
      logp[y] = -1.0;  // sentinel: excluded
    }
  }

  const std::size_t count = checked_sequence_count(tp.d, n);
  tp.mask.assign(count, 0);
  const double threshold = delta * tp.slack_constant;
  std::vector<int> seq;
  for (std::size_t k = 0; k < count; ++k) {
    decode_seq(k, tp.d, n, seq);
    double total = 0.0;
    bool ok = true;
    for (int y : seq) {
      if (logp[y] < 0.0) {
        ok = false;
        break;
      }
      total += logp[y];
    }
    if (ok && std::abs(total / n - tp.entropy) <= threshold) tp.mask[k] = 1;
  }
  return tp;
}

std::size_t ConditionalTypicalProjector::rank() const {
  std::size_t r = 0;
  for (auto m : mask) r += m;
  return r;
}

ComplexMatrix ConditionalTypicalProjector::dense() const {
  if (zero) {
    std::size_t dn = 1;
    for (std::size_t i = 0; i < x.size(); ++i) dn *= d;
    return ComplexMatrix::zero(dn, dn);
  }
  std::vector<ComplexMatrix> bases;
  for (int a : x) bases.push_back(letter_bases[a]);
  return mask_dense(bases, mask, nullptr);
}

ComplexMatrix ConditionalTypicalProjector::compressed_state() const {
  if (zero) {
    std::size_t dn = 1;
    for (std::size_t i = 0; i < x.size(); ++i) dn *= d;
    return ComplexMatrix::zero(dn, dn);
  }
  const int n = int(x.size());
  std::vector<double> probs(mask.size(), 0.0);
  std::vector<int> seq;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    decode_seq(k, d, n, seq);
    double pr = 1.0;
    for (int i = 0; i < n; ++i) pr *= letter_probs[x[i]][seq[i]];
    probs[k] = pr;
  }
  std::vector<ComplexMatrix> bases;
  for (int a : x) bases.push_back(letter_bases[a]);
  return mask_dense(bases, mask, &probs);
}

double ConditionalTypicalProjector::max_selected_prob() const {
  if (zero) return 0.0;
  const int n = int(x.size());
  double best = 0.0;
  std::vector<int> seq;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    decode_seq(k, d, n, seq);
    double pr = 1.0;
    for (int i = 0; i < n; ++i) pr *= letter_probs[x[i]][seq[i]];
    best = std::max(best, pr);
  }
  return best;
}

ConditionalTypicalProjector conditional_typical_projector(
    const Pmf& px, const std::vector<DensityOperator>& states, const std::vector<int>& xn,
    double delta) {
  if (states.empty()) throw Error("conditional_typical_projector: no states");
  if (px.size() != states.size())
    throw LabelMismatch("conditional_typical_projector: pmf/state counts differ");
  ConditionalTypicalProjector cp;
  cp.x = xn;
  cp.delta = delta;
  cp.d = states.front().dim();

  // Selection uses the per-letter log constant alone; the reported
  // slack_constant adds the frequency-slack cross term so the operator
  // inequality pi_x s_x pi_x <= 2^{-n(mean_entropy - c delta)} pi_x holds
  // for every strongly typical x^n by construction.
  double c_letters = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a) {
    if (states[a].dim() != cp.d)
      throw DimensionMismatch("conditional_typical_projector: mixed dims");
    SpectralDecomposition scd = spectral_decompose(states[a].op);
    std::vector<double> probs = scd.eigenvalues;
    for (auto& g : probs) g = std::max(g, 0.0);
    cp.letter_bases.push_back(scd.eigenvectors);
    double ent = 0.0;
    for (double g : probs)
      if (g > kEntropyZero) {
        ent -= g * std::log2(g);
        c_letters += std::abs(std::log2(g));
      }
    cp.letter_probs.push_back(std::move(probs));
    cp.mean_entropy += px.p[a] * ent;
  }
  cp.slack_constant = c_letters + cp.mean_entropy;

  if (!is_typical(xn, px, delta)) {
    cp.zero = true;
    return cp;
  }
  cp.zero = false;

  const int n = int(xn.size());
  double empirical_entropy = 0.0;
  for (int a : xn) {
    double ent = 0.0;
    for (double g : cp.letter_probs[a])
      if (g > kEntropyZero) ent -= g * std::log2(g);
    empirical_entropy += ent / n;
  }

  const std::size_t count = checked_sequence_count(cp.d, n);
  cp.mask.assign(count, 0);
  const double threshold = delta * c_letters;
  std::vector<int> seq;
  for (std::size_t k = 0; k < count; ++k) {
    decode_seq(k, cp.d, n, seq);
    double total = 0.0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const double g = cp.letter_probs[xn[i]][seq[i]];
      if (g <= kEntropyZero) {
        ok = false;
        break;
      }
      total -= std::log2(g);
    }
    if (ok && std::abs(total / n - empirical_entropy) <= threshold) cp.mask[k] = 1;
  }
  return cp;
}

ProjectorBounds projector_bounds(const TypicalProjector& tp, const DensityOperator& s) {
  (void)s;  // the projector already carries the eigenvalue products it needs
  ProjectorBounds b;
  b.trace_pi = double(tp.rank());
  b.trace_bound = std::exp2(tp.n * (tp.entropy + tp.slack_constant * tp.delta));
  b.max_eig = tp.max_selected_prob();
  b.eig_bound = std::exp2(-tp.n * (tp.entropy - tp.slack_constant * tp.delta));
  b.trace_ok = b.trace_pi <= b.trace_bound * (1.0 + 1e-12);
  b.eig_ok = b.max_eig <= b.eig_bound * (1.0 + 1e-12);
  return b;
}

}  // namespace povmsim
