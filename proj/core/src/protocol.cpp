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

#include "povmsim/protocol.hpp"

#include <cmath>
#include <string>

#include "povmsim/errors.hpp"
#include "povmsim/rng.hpp"

namespace povmsim {

namespace {

double pmf_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > kEntropyZero) h -= v * std::log2(v);
  return h;
}

ComplexMatrix symmetrized(ComplexMatrix m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    m(i, i) = cxd(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < m.cols; ++j) {
      const cxd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

std::size_t int_pow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_sequence_budget(std::size_t base, int n, const char* what) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= double(base);
  if (v > double(budget_entries())) throw BudgetExceeded(std::string(what) + " exceeds the cap");
}

// All base^n sequences, most significant letter first (matching cq_kron's
// label order).
std::vector<std::vector<int>> all_sequences(std::size_t base, int n) {
  const std::size_t count = int_pow(base, n);
  std::vector<std::vector<int>> out(count, std::vector<int>(std::size_t(n)));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (int i = n; i-- > 0;) {
      out[idx][std::size_t(i)] = int(rem % base);
      rem /= base;
    }
  }
  return out;
}

std::string joined_label(const std::vector<std::string>& letters, const std::vector<int>& seq) {
  std::string s = letters[std::size_t(seq.front())];
  for (std::size_t i = 1; i < seq.size(); ++i) s += "," + letters[std::size_t(seq[i])];
  return s;
}

// Tensor product of per-letter beta matrices along a codeword.
ComplexMatrix beta_tensor(const CompatibleTriple& t, const std::vector<int>& cw) {
  ComplexMatrix out = t.beta[std::size_t(cw.front())];
  for (std::size_t i = 1; i < cw.size(); ++i) out = kron(out, t.beta[std::size_t(cw[i])]);
  return out;
}

ComplexMatrix beta_root_tensor(const CompatibleTriple& t, const std::vector<int>& cw) {
  ComplexMatrix out = t.beta_root[std::size_t(cw.front())];
  for (std::size_t i = 1; i < cw.size(); ++i) out = kron(out, t.beta_root[std::size_t(cw[i])]);
  return out;
}

double codeword_prob(const CompatibleTriple& t, const std::vector<int>& cw) {
  double p = 1.0;
  for (int w : cw) p *= t.p_w[std::size_t(w)];
  return p;
}

// Raw canonical-purification amplitude matrix of a PSD operator: rows index
// the reference, columns the system. Not normalized.
ComplexMatrix purification_matrix(const HermitianOperator& h) {
  SpectralDecomposition s = spectral_decompose(h);
  const std::size_t d = h.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const double g = std::max(s.eigenvalues[i], 0.0);
    if (g == 0.0) continue;
    const double rg = std::sqrt(g);
    for (std::size_t r = 0; r < d; ++r) {
      const cxd ref = std::conj(s.eigenvectors(r, i));
      if (ref == cxd(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < d; ++c) m(r, c) += rg * ref * s.eigenvectors(c, i);
    }
  }
  return m;
}

// The composed map (i_ref (x) tr_K (x) i_Y) o (i (x) E^Delta) o (i (x)
// E^theta) applied to the pure state with the given amplitude matrix on
// (reference) x (A^n x K). Returns blocks over y^n in the transpose-free
// convention.
CqState evolve_through_sim(const ComplexMatrix& amp, const LikelihoodPovm& lik,
                           const DecoderPovm& dec) {
  if (lik.B != 1) throw Error("evolve_through_sim: structured POVMs are not materialized");
  const std::size_t dn = lik.s_k.empty() ? 0 : lik.s_k.front().rows;
  const std::size_t K = lik.K, M = lik.M;
  const std::size_t dim = dn * K;
  const ComplexMatrix ampd = dagger(amp);

  // Reference-side blocks per (k, m) outcome: amp theta^t amp^dagger with
  // theta = theta_{k,m} (x) |k><k|.
  std::vector<ComplexMatrix> km_blocks;
  km_blocks.reserve(K * M);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t m = 0; m < M; ++m) {
      ComplexMatrix theta(dim, dim);
      const ComplexMatrix& th = lik.theta_at(k, m);
      for (std::size_t i = 0; i < dn; ++i)
        for (std::size_t j = 0; j < dn; ++j) theta(i * K + k, j * K + k) = th(i, j);
      km_blocks.push_back(matmul(amp, matmul(transpose(theta), ampd)));
    }

  const auto& ylab = dec.channel.out_labels;
  const int n = lik.n;
  check_sequence_budget(ylab.size(), n, "protocol: |Y|^n");
  const auto yseqs = all_sequences(ylab.size(), n);

  CqState out;
  for (const auto& ys : yseqs) {
    ComplexMatrix acc(dim, dim);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t m = 0; m < M; ++m) {
        const double w = dec.weight(k, m, ys);
        if (w == 0.0) continue;
        acc = acc + w * km_blocks[k * M + m];
      }
    ComplexMatrix reduced = partial_trace(acc, {dn, K}, {0});
    out.labels.push_back(joined_label(ylab, ys));
    out.blocks.push_back(basis_conjugate(reduced));
  }
  return out;
}

}  // namespace

Pmf CompatibleTriple::pw_pmf() const {
  std::vector<double> p = p_w;
  double s = 0.0;
  for (double v : p) s += v;
  for (auto& v : p) v /= s;
  return Pmf{std::move(p)};
}

CqState CompatibleTriple::gamma_average() const {
  CqState avg;
  bool first = true;
  for (std::size_t w = 0; w < alphabet(); ++w) {
    if (!retained[w]) continue;
    if (first) {
      avg = cq_scale(gamma[w], p_w[w]);
      first = false;
    } else {
      avg = cq_add(avg, cq_scale(gamma[w], p_w[w]));
    }
  }
  return avg;
}

CompatibleTriple derive_beta_gamma(const DensityOperator& rho, const Povm& mu,
                                   const ClassicalChannel& channel) {
  if (channel.in_labels != mu.labels)
    throw LabelMismatch("derive_beta_gamma: channel inputs must match mu labels");
  if (mu.dim() != rho.dim()) throw DimensionMismatch("derive_beta_gamma: dims differ");

  CompatibleTriple t;
  t.w_labels = mu.labels;
  t.mu = mu;
  t.channel = channel;
  const ComplexMatrix rs = op_sqrt(rho.op).mat;
  const std::size_t nw = mu.size();
  t.p_w.resize(nw);
  t.retained.resize(nw);
  t.beta.resize(nw);
  t.beta_root.resize(nw);
  t.gamma.resize(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    const ComplexMatrix raw = matmul(rs, matmul(mu.elements[w].mat, rs));
    t.p_w[w] = trace(raw).real();
    t.retained[w] = t.p_w[w] > kDegenerateTol;
    if (!t.retained[w]) {
      t.dropped.push_back(mu.labels[w]);
      continue;
    }
    t.beta[w] = symmetrized((1.0 / t.p_w[w]) * raw);
    // Root factor: beta_w = b_w b_w^dagger with b_w = sqrt(rho) sqrt(mu_w) /
    // sqrt(p_W(w)); the POVM build multiplies these Gram factors so its
    // operators stay PSD at machine precision even for ill-conditioned S_k.
    t.beta_root[w] =
        (1.0 / std::sqrt(t.p_w[w])) * matmul(rs, op_sqrt(mu.elements[w]).mat);
    CqState g;
    for (std::size_t y = 0; y < channel.out_labels.size(); ++y) {
      g.labels.push_back(channel.out_labels[y]);
      g.blocks.push_back(channel.at(w, y) * t.beta[w]);
    }
    t.gamma[w] = std::move(g);
  }
  return t;
}

CompatibilityReport check_compatibility(const DensityOperator& rho, const Povm& lambda,
                                        const CompatibleTriple& t) {
  if (lambda.labels != t.channel.out_labels)
    throw LabelMismatch("check_compatibility: lambda labels must match channel outputs");
  const ComplexMatrix rs = op_sqrt(rho.op).mat;
  std::vector<ComplexMatrix> raw_mu;
  raw_mu.reserve(t.mu.size());
  for (std::size_t w = 0; w < t.mu.size(); ++w)
    raw_mu.push_back(matmul(rs, matmul(t.mu.elements[w].mat, rs)));

  CompatibilityReport rep;
  for (std::size_t y = 0; y < lambda.size(); ++y) {
    const ComplexMatrix lhs = matmul(rs, matmul(lambda.elements[y].mat, rs));
    ComplexMatrix rhs(rho.dim(), rho.dim());
    for (std::size_t w = 0; w < t.mu.size(); ++w) {
      const double p = t.channel.at(w, y);
      if (p == 0.0) continue;
      rhs = rhs + p * raw_mu[w];
    }
    rep.max_block_deviation = std::max(rep.max_block_deviation, max_abs_diff(lhs, rhs));
  }
  ComplexMatrix resum(rho.dim(), rho.dim());
  for (const auto& r : raw_mu) resum = resum + r;
  rep.rho_deviation = max_abs_diff(resum, rho.mat());
  rep.pass = rep.max_block_deviation <= kPovmSumTol && rep.rho_deviation <= kPovmSumTol;
  return rep;
}

RatePair rates(const CompatibleTriple& t) {
  RatePair r;
  const std::size_t d = t.mu.dim();
  ComplexMatrix avg_beta(d, d);
  double mean_entropy = 0.0;
  std::vector<CqState> gams;
  std::vector<double> ps;
  for (std::size_t w = 0; w < t.alphabet(); ++w) {
    if (!t.retained[w]) continue;
    avg_beta = avg_beta + t.p_w[w] * t.beta[w];
    mean_entropy += t.p_w[w] * von_neumann_entropy(hermitian(t.beta[w], 1e-8));
    gams.push_back(t.gamma[w]);
    ps.push_back(t.p_w[w]);
  }
  r.chi_beta = von_neumann_entropy(hermitian(avg_beta, 1e-8)) - mean_entropy;
  r.chi_gamma = holevo_information_cq(gams, ps);
  return r;
}

namespace {

LikelihoodPovm build_kernel(const DensityOperator& rho, const CompatibleTriple& t,
                            Codebook3D cb, int n) {
  if (cb.n != n) throw DimensionMismatch("likelihood povm: codebook block length != n");
  if (std::size_t(cb.alphabet) != t.alphabet())
    throw DimensionMismatch("likelihood povm: codebook alphabet != triple alphabet");
  check_sequence_budget(rho.dim() * rho.dim(), n, "likelihood povm: d^{2n}");

  LikelihoodPovm lik;
  lik.n = n;
  lik.K = cb.K;
  lik.M = cb.M;
  lik.B = cb.B;
  lik.codebook = std::move(cb);

  const std::size_t dn = int_pow(rho.dim(), n);
  const ComplexMatrix eye = ComplexMatrix::identity(dn);
  const std::size_t per_k = lik.M * lik.B;

  lik.s_k.reserve(lik.K);
  lik.theta.resize(lik.K);
  lik.theta0.reserve(lik.K);
  lik.skipped.assign(lik.K, std::vector<std::uint8_t>(per_k, 0));
  for (std::size_t k = 0; k < lik.K; ++k) {
    // Gram factors B_e with E_e = B_e B_e^dagger. S_k^{-1/2} comes from the
    // one-sided Jacobi decomposition of the stacked factor [B_1 ... B_M],
    // and each element is assembled as the Gram matrix (G B)(G B)^dagger.
    // Both choices keep the family PSD and complementary at machine
    // precision even when S_k is badly graded.
    std::vector<ComplexMatrix> roots(per_k);
    ComplexMatrix s(dn, dn);
    std::size_t live = 0;
    for (std::size_t e = 0; e < per_k; ++e) {
      const auto& cw = lik.codebook.entries[k * per_k + e];
      if (codeword_prob(t, cw) < kDegenerateTol) {
        lik.skipped[k][e] = 1;
        ++lik.skipped_total;
        roots[e] = ComplexMatrix::zero(dn, dn);
        continue;
      }
      roots[e] = beta_root_tensor(t, cw);
      s = s + matmul(roots[e], dagger(roots[e]));
      ++live;
    }
    s = symmetrized(std::move(s));

    ComplexMatrix g(dn, dn);
    if (live > 0) {
      ComplexMatrix stacked(dn, live * dn);
      std::size_t filled = 0;
      for (std::size_t e = 0; e < per_k; ++e) {
        if (lik.skipped[k][e]) continue;
        for (std::size_t r = 0; r < dn; ++r)
          for (std::size_t c = 0; c < dn; ++c) stacked(r, filled * dn + c) = roots[e](r, c);
        ++filled;
      }
      const SpectralDecomposition scd = factored_gram_decompose(stacked);
      const double cutoff = 1e-10 * std::max(scd.eigenvalues.front(), 0.0);
      for (std::size_t i = 0; i < dn; ++i) {
        const double gamma = scd.eigenvalues[i];
        if (gamma <= cutoff) continue;
        const double w = 1.0 / std::sqrt(gamma);
        for (std::size_t r = 0; r < dn; ++r) {
          const cxd ui = w * scd.eigenvectors(r, i);
          for (std::size_t c = 0; c < dn; ++c)
            g(r, c) += ui * std::conj(scd.eigenvectors(c, i));
        }
      }
      g = symmetrized(std::move(g));
    }

    auto& thetas = lik.theta[k];
    thetas.reserve(per_k);
    ComplexMatrix sum(dn, dn);
    for (std::size_t e = 0; e < per_k; ++e) {
      ComplexMatrix th = ComplexMatrix::zero(dn, dn);
      if (!lik.skipped[k][e]) {
        const ComplexMatrix c = matmul(g, roots[e]);
        th = symmetrized(matmul(c, dagger(c)));
      }
      sum = sum + th;
      thetas.push_back(std::move(th));
    }
    lik.theta0.push_back(symmetrized(eye - sum));
    lik.s_k.push_back(std::move(s));
  }
  return lik;
}

}  // namespace

Povm LikelihoodPovm::family(std::size_t k) const {
  std::vector<std::string> labels{"0"};
  std::vector<ComplexMatrix> elems{theta0[k]};
  for (std::size_t e = 0; e < theta[k].size(); ++e) {
    labels.push_back(std::to_string(e + 1));
    elems.push_back(theta[k][e]);
  }
  return make_povm(std::move(labels), std::move(elems));
}

LikelihoodPovm build_likelihood_povm(const DensityOperator& rho, const CompatibleTriple& t,
                                     const Codebook2D& cb, int n) {
  Codebook3D cb3;
  cb3.K = cb.K;
  cb3.M = cb.M;
  cb3.B = 1;
  cb3.n = cb.n;
  cb3.alphabet = cb.alphabet;
  cb3.entries = cb.entries;
  return build_kernel(rho, t, std::move(cb3), n);
}

LikelihoodPovm build_structured_povm(const DensityOperator& rho, const CompatibleTriple& t,
                                     const Codebook3D& cb, int n) {
  prime_field(cb.alphabet);  // W must be a prime field here
  return build_kernel(rho, t, cb, n);
}

double DecoderPovm::weight(std::size_t k, std::size_t m, const std::vector<int>& yseq) const {
  const auto& cw = codebook.at(k, m);
  double w = 1.0;
  for (std::size_t i = 0; i < cw.size(); ++i)
    w *= channel.at(std::size_t(cw[i]), std::size_t(yseq[i]));
  return w;
}

double DecoderPovm::row_sum(std::size_t k, std::size_t m) const {
  const auto yseqs = all_sequences(channel.out_labels.size(), int(codebook.at(k, m).size()));
  double s = 0.0;
  for (const auto& ys : yseqs) s += weight(k, m, ys);
  return s;
}

DecoderPovm build_decoder(const CompatibleTriple& t, const Codebook2D& cb) {
  return DecoderPovm{t.channel, cb};
}

CqState alpha_o(const DensityOperator& rho, const Povm& lambda, int n) {
  check_sequence_budget(lambda.size() * rho.dim() * rho.dim(), n, "alpha_o: |Y|^n d^{2n}");
  const ComplexMatrix rs = op_sqrt(rho.op).mat;
  CqState single;
  for (std::size_t y = 0; y < lambda.size(); ++y) {
    single.labels.push_back(lambda.labels[y]);
    single.blocks.push_back(symmetrized(matmul(rs, matmul(lambda.elements[y].mat, rs))));
  }
  return cq_tensor_power(single, n);
}

CqState alpha_direct(const DensityOperator& rho, const CompatibleTriple& t, const Codebook2D& cb,
                     int n) {
  check_sequence_budget(t.channel.out_labels.size() * rho.dim() * rho.dim(), n,
                        "alpha_direct: |Y|^n d^{2n}");
  const std::size_t dn = int_pow(rho.dim(), n);
  const auto yseqs = all_sequences(t.channel.out_labels.size(), n);
  CqState out;
  for (const auto& ys : yseqs) {
    out.labels.push_back(joined_label(t.channel.out_labels, ys));
    out.blocks.push_back(ComplexMatrix::zero(dn, dn));
  }
  const double scale = 1.0 / double(cb.K * cb.M);
  for (std::size_t k = 0; k < cb.K; ++k)
    for (std::size_t m = 0; m < cb.M; ++m) {
      const auto& cw = cb.at(k, m);
      if (codeword_prob(t, cw) < kDegenerateTol)
        throw DegenerateCodeword("alpha_direct: tr(omega mu) vanishes for entry (" +
                                 std::to_string(k) + "," + std::to_string(m) + ")");
      const ComplexMatrix e = beta_tensor(t, cw);
      for (std::size_t yi = 0; yi < yseqs.size(); ++yi) {
        double w = scale;
        for (std::size_t i = 0; i < cw.size(); ++i)
          w *= t.channel.at(std::size_t(cw[i]), std::size_t(yseqs[yi][i]));
        if (w == 0.0) continue;
        auto& blk = out.blocks[yi];
        for (std::size_t j = 0; j < blk.a.size(); ++j) blk.a[j] += w * e.a[j];
      }
    }
  return out;
}

CqState alpha_via_channels(const DensityOperator& rho, const LikelihoodPovm& lik,
                           const DecoderPovm& dec) {
  const std::size_t dn = int_pow(rho.dim(), lik.n);
  const std::size_t K = lik.K;
  const std::size_t dim = dn * K;
  if (dim * dim > budget_entries())
    throw BudgetExceeded("alpha_via_channels: composition too large");

  // Canonical purification of sigma_{A^nK}: block diagonal over k with
  // T_k = S_k / M purified per block and weight 1/sqrt(K).
  ComplexMatrix amp(dim, dim);
  const double root_k = std::sqrt(double(K));
  for (std::size_t k = 0; k < K; ++k) {
    const ComplexMatrix tk = (1.0 / double(lik.M * lik.B)) * lik.s_k[k];
    const ComplexMatrix pk = purification_matrix(HermitianOperator{symmetrized(tk)});
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dn; ++c) amp(r * K + k, c * K + k) = pk(r, c) / root_k;
  }
  return evolve_through_sim(amp, lik, dec);
}

std::pair<CqState, CqState> alpha_s_two_routes(const DensityOperator& rho,
                                               const LikelihoodPovm& lik, const DecoderPovm& dec) {
  const std::size_t dn = int_pow(rho.dim(), lik.n);
  const std::size_t K = lik.K;
  const ComplexMatrix omega = tensor_power(rho.mat(), lik.n);
  const ComplexMatrix rs = op_sqrt(HermitianOperator{symmetrized(omega)}).mat;

  // Route one: the effective POVM Delta o theta_e on omega directly.
  const auto yseqs = all_sequences(dec.channel.out_labels.size(), lik.n);
  CqState eff;
  for (const auto& ys : yseqs) {
    ComplexMatrix lam(dn, dn);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t m = 0; m < lik.M; ++m) {
        const double w = dec.weight(k, m, ys) / double(K);
        if (w == 0.0) continue;
        lam = lam + w * lik.theta_at(k, m);
      }
    eff.labels.push_back(joined_label(dec.channel.out_labels, ys));
    eff.blocks.push_back(matmul(rs, matmul(lam, rs)));
  }

  // Route two: the full composition on the purification of rho_K^{(x)n}.
  const std::size_t dim = dn * K;
  if (dim * dim > budget_entries())
    throw BudgetExceeded("alpha_s_two_routes: composition too large");
  const ComplexMatrix pw = purification_matrix(HermitianOperator{symmetrized(omega)});
  ComplexMatrix amp(dim, dim);
  const double root_k = std::sqrt(double(K));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dn; ++c) amp(r * K + k, c * K + k) = pw(r, c) / root_k;
  CqState composed = evolve_through_sim(amp, lik, dec);
  return {std::move(eff), std::move(composed)};
}

std::pair<CqState, double> sigma_ank(const DensityOperator& rho, const LikelihoodPovm& lik) {
  const ComplexMatrix omega = tensor_power(rho.mat(), lik.n);
  CqState sigma;
  double dist = 0.0;
  for (std::size_t k = 0; k < lik.K; ++k) {
    ComplexMatrix tk = symmetrized((1.0 / double(lik.M * lik.B)) * lik.s_k[k]);
    dist += trace_norm(omega - tk);
    sigma.labels.push_back(std::to_string(k));
    sigma.blocks.push_back((1.0 / double(lik.K)) * tk);
  }
  return {std::move(sigma), dist / double(lik.K)};
}

namespace {

// (1/|entries per k| / K) sum over entries of gamma_{codeword} with decoder
// weights given per entry; shared by the plain and structured runs.
CqState simulated_mixture(const CompatibleTriple& t, const Codebook3D& cb,
                          const std::vector<std::vector<int>>& weight_source, double scale) {
  const int n = cb.n;
  const auto yseqs = all_sequences(t.channel.out_labels.size(), n);
  const std::size_t d = t.mu.dim();
  const std::size_t dn = int_pow(d, n);
  CqState out;
  for (const auto& ys : yseqs) {
    out.labels.push_back(joined_label(t.channel.out_labels, ys));
    out.blocks.push_back(ComplexMatrix::zero(dn, dn));
  }
  for (std::size_t k = 0; k < cb.K; ++k)
    for (std::size_t m = 0; m < cb.M; ++m)
      for (std::size_t b = 0; b < cb.B; ++b) {
        const auto& cw = cb.at(k, m, b);
        if (codeword_prob(t, cw) < kDegenerateTol) continue;  // mass sits in theta_{k,0}
        const auto& wsrc = weight_source[(k * cb.M + m) * cb.B + b];
        const ComplexMatrix e = beta_tensor(t, cw);
        for (std::size_t yi = 0; yi < yseqs.size(); ++yi) {
          double w = scale;
          for (int i = 0; i < n; ++i)
            w *= t.channel.at(std::size_t(wsrc[std::size_t(i)]), std::size_t(yseqs[yi][i]));
          if (w == 0.0) continue;
          auto& blk = out.blocks[yi];
          for (std::size_t j = 0; j < blk.a.size(); ++j) blk.a[j] += w * e.a[j];
        }
      }
  return out;
}

SimulationReport assemble_report(const DensityOperator& rho, const CompatibleTriple& t,
                                 const LikelihoodPovm& lik, const CqState& mixture) {
  SimulationReport rep;
  rep.n = lik.n;
  rep.K = lik.K;
  rep.M = lik.M;
  rep.B = lik.B;
  const CqState target = cq_tensor_power(t.gamma_average(), lik.n);
  rep.term1 = cq_trace_distance(target, mixture);
  auto [sigma, raw] = sigma_ank(rho, lik);
  (void)sigma;
  rep.term2_raw = raw;
  rep.term2 = 4.0 * std::pow(raw, 0.25);
  rep.total = rep.term1 + rep.term2;
  return rep;
}

}  // namespace

SimulationReport simulate_end_to_end(const DensityOperator& rho, const Povm& lambda,
                                     const CompatibleTriple& t, int n, double C, double R,
                                     std::uint64_t seed) {
  CompatibilityReport comp = check_compatibility(rho, lambda, t);
  if (!comp.pass)
    throw Error("simulate_end_to_end: the supplied triple is not compatible with (rho, lambda)");
  const std::size_t K = std::size_t(std::ceil(std::exp2(n * C)));
  const std::size_t M = std::size_t(std::ceil(std::exp2(n * R)));
  const Codebook2D cb = sample_iid_codebook(t.pw_pmf(), n, K, M, seed);
  const LikelihoodPovm lik = build_likelihood_povm(rho, t, cb, n);
  (void)build_decoder(t, cb);  // the mixture below carries the same weights

  // Decoder weights use each entry's own codeword.
  std::vector<std::vector<int>> wsrc = lik.codebook.entries;
  const CqState mixture = simulated_mixture(t, lik.codebook, wsrc, 1.0 / double(K * M));

  SimulationReport rep = assemble_report(rho, t, lik, mixture);
  rep.C = C;
  rep.R = R;
  const RatePair rp = rates(t);
  rep.chi_beta = rp.chi_beta;
  rep.chi_gamma = rp.chi_gamma;
  rep.seed = seed;
  return rep;
}

SimulationReport simulate_structured(const DensityOperator& rho, const Povm& lambda,
                                     const CompatibleTriple& t, int n, CosetExponents exps,
                                     double delta, std::uint64_t seed) {
  CompatibilityReport comp = check_compatibility(rho, lambda, t);
  if (!comp.pass)
    throw Error("simulate_structured: the supplied triple is not compatible with (rho, lambda)");
  const PrimeField f = prime_field(int(t.alphabet()));
  auto [code, cb] = sample_coset_codebook(f, n, exps, seed);
  (void)code;
  const LikelihoodPovm lik = build_structured_povm(rho, t, cb, n);

  // The receiver sees only (k, m); the recovered index b*(k, m) drives the
  // decoder weights for the whole column. Failed columns fall back to b = 0.
  const Pmf pw = t.pw_pmf();
  std::size_t failures = 0;
  std::vector<std::vector<int>> wsrc(cb.K * cb.M * cb.B);
  for (std::size_t k = 0; k < cb.K; ++k)
    for (std::size_t m = 0; m < cb.M; ++m) {
      DecodeResult dr = typical_index_decode(cb, k, m, pw, delta);
      std::size_t bstar = 0;
      if (dr.status == DecodeResult::Status::Unique) {
        bstar = dr.b;
      } else {
        ++failures;
      }
      for (std::size_t b = 0; b < cb.B; ++b)
        wsrc[(k * cb.M + m) * cb.B + b] = cb.at(k, m, bstar);
    }
  const CqState mixture =
      simulated_mixture(t, lik.codebook, wsrc, 1.0 / double(cb.K * cb.M * cb.B));

  SimulationReport rep = assemble_report(rho, t, lik, mixture);
  const double logq = std::log2(double(f.q));
  rep.C = exps.lc * logq / n;
  rep.R = exps.lr * logq / n;
  const RatePair rp = rates(t);
  const double offset = logq - pmf_entropy(t.p_w);
  rep.chi_beta = rp.chi_beta + offset;
  rep.chi_gamma = rp.chi_gamma + offset;
  rep.decode_failure_rate = double(failures) / double(cb.K * cb.M);
  rep.seed = seed;
  return rep;
}

}  // namespace povmsim
