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

#include "povmsim/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "povmsim/errors.hpp"

namespace povmsim {

DensityOperator density(ComplexMatrix m) {
  HermitianOperator h = hermitian(std::move(m));
  const double tr = trace(h.mat).real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw Error("density: trace " + std::to_string(tr) + " deviates from 1");
  SpectralDecomposition s = spectral_decompose(h);
  if (!s.eigenvalues.empty() && s.eigenvalues.back() < -kPsdTol)
    throw NotPositive("density: eigenvalue " + std::to_string(s.eigenvalues.back()));
  return DensityOperator{std::move(h)};
}

Povm make_povm(std::vector<std::string> labels, std::vector<ComplexMatrix> elements) {
  if (labels.size() != elements.size()) throw LabelMismatch("make_povm: label/element counts");
  Povm p;
  p.labels = std::move(labels);
  p.elements.reserve(elements.size());
  for (auto& e : elements) {
    if (!elements.empty() && e.rows != elements.front().rows)
      throw DimensionMismatch("make_povm: mixed dimensions");
    p.elements.push_back(hermitian(std::move(e)));
  }
  return p;
}

PovmValidation validate_povm(const Povm& p) {
  PovmValidation v;
  if (p.elements.empty()) return v;
  ComplexMatrix sum = ComplexMatrix::zero(p.dim(), p.dim());
  double min_eig = 0.0;
  for (const auto& e : p.elements) {
    sum = sum + e.mat;
    SpectralDecomposition s = spectral_decompose(e);
    if (!s.eigenvalues.empty()) min_eig = std::min(min_eig, s.eigenvalues.back());
  }
  v.max_negative_eigenvalue = min_eig;
  v.max_identity_deviation = max_abs_diff(sum, ComplexMatrix::identity(p.dim()));
  v.pass = min_eig >= -kPsdTol && v.max_identity_deviation <= kPovmSumTol;
  return v;
}

Ensemble make_ensemble(std::vector<std::string> labels, std::vector<DensityOperator> states,
                       std::vector<double> pmf) {
  if (labels.size() != states.size() || labels.size() != pmf.size())
    throw LabelMismatch("make_ensemble: size mismatch");
  double s = 0.0;
  for (double q : pmf) {
    if (q < 0.0) throw Error("make_ensemble: negative probability");
    s += q;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error("make_ensemble: pmf sums to " + std::to_string(s));
  return Ensemble{std::move(labels), std::move(states), std::move(pmf)};
}

PurifiedState canonical_purification(const DensityOperator& s) {
  const std::size_t d = s.dim();
  SpectralDecomposition scd = spectral_decompose(s.op);
  PurifiedState ps;
  ps.dim_ref = d;
  ps.dim_sys = d;
  ps.amp.assign(d * d, cxd(0.0, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    const double g = std::max(scd.eigenvalues[i], 0.0);
    if (g == 0.0) continue;
    const double rg = std::sqrt(g);
    for (std::size_t r = 0; r < d; ++r) {
      const cxd ref = std::conj(scd.eigenvectors(r, i));
      if (ref == cxd(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < d; ++c) ps.amp[r * d + c] += rg * ref * scd.eigenvectors(c, i);
    }
  }
  double norm2 = 0.0;
  for (const auto& z : ps.amp) norm2 += std::norm(z);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : ps.amp) z *= inv;
  return ps;
}

ComplexMatrix purified_marginal_sys(const PurifiedState& ps) {
  ComplexMatrix m(ps.dim_sys, ps.dim_sys);
  for (std::size_t r = 0; r < ps.dim_ref; ++r) {
    const cxd* row = &ps.amp[r * ps.dim_sys];
    for (std::size_t i = 0; i < ps.dim_sys; ++i)
      for (std::size_t j = 0; j < ps.dim_sys; ++j) m(i, j) += row[i] * std::conj(row[j]);
  }
  return m;
}

cxd purified_overlap(const PurifiedState& x, const PurifiedState& y) {
  if (x.amp.size() != y.amp.size()) throw DimensionMismatch("purified_overlap: sizes differ");
  cxd s = 0.0;
  for (std::size_t i = 0; i < x.amp.size(); ++i) s += std::conj(x.amp[i]) * y.amp[i];
  return s;
}

double cq_trace(const CqState& s) {
  double t = 0.0;
  for (const auto& b : s.blocks) t += trace(b).real();
  return t;
}

CqState cq_scale(const CqState& s, double f) {
  CqState r = s;
  for (auto& b : r.blocks)
    for (auto& v : b.a) v *= f;
  return r;
}

CqState cq_add(const CqState& x, const CqState& y) {
  CqState r = x;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < r.labels.size(); ++i) idx[r.labels[i]] = i;
  for (std::size_t j = 0; j < y.labels.size(); ++j) {
    auto it = idx.find(y.labels[j]);
    if (it == idx.end()) {
      r.labels.push_back(y.labels[j]);
      r.blocks.push_back(y.blocks[j]);
    } else {
      r.blocks[it->second] = r.blocks[it->second] + y.blocks[j];
    }
  }
  return r;
}

CqState cq_kron(const CqState& x, const CqState& y) {
  CqState r;
  r.labels.reserve(x.size() * y.size());
  r.blocks.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      r.labels.push_back(x.labels[i] + "," + y.labels[j]);
      r.blocks.push_back(kron(x.blocks[i], y.blocks[j]));
    }
  return r;
}

CqState cq_tensor_power(const CqState& x, int n) {
  if (n < 1) throw Error("cq_tensor_power: n must be >= 1");
  CqState r = x;
  for (int i = 1; i < n; ++i) r = cq_kron(r, x);
  return r;
}

double cq_trace_distance(const CqState& x, const CqState& y) {
  std::map<std::string, std::size_t> yidx;
  for (std::size_t j = 0; j < y.labels.size(); ++j) yidx[y.labels[j]] = j;
  double t = 0.0;
  std::vector<bool> seen(y.size(), false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = yidx.find(x.labels[i]);
    if (it == yidx.end()) {
      t += trace_norm(x.blocks[i]);
    } else {
      seen[it->second] = true;
      t += trace_norm(x.blocks[i] - y.blocks[it->second]);
    }
  }
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!seen[j]) t += trace_norm(y.blocks[j]);
  return t;
}

ComplexMatrix cq_assemble(const CqState& s) {
  std::size_t total = 0;
  for (const auto& b : s.blocks) total += b.rows;
  ComplexMatrix m(total, total);
  std::size_t off = 0;
  for (const auto& b : s.blocks) {
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < b.cols; ++j) m(off + i, off + j) = b(i, j);
    off += b.rows;
  }
  return m;
}

ClassicalChannel make_channel(std::vector<std::string> in_labels,
                              std::vector<std::string> out_labels, std::vector<double> p) {
  if (p.size() != in_labels.size() * out_labels.size())
    throw DimensionMismatch("make_channel: wrong stochastic matrix size");
  for (std::size_t i = 0; i < in_labels.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < out_labels.size(); ++j) {
      const double v = p[i * out_labels.size() + j];
      if (v < 0.0) throw Error("make_channel: negative probability");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw Error("make_channel: row " + std::to_string(i) + " sums to " + std::to_string(s));
  }
  return ClassicalChannel{std::move(in_labels), std::move(out_labels), std::move(p)};
}

ClassicalChannel identity_channel(const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
  return ClassicalChannel{labels, labels, std::move(p)};
}

CqState measurement_channel(const Povm& p, const DensityOperator& s) {
  if (p.dim() != s.dim()) throw DimensionMismatch("measurement_channel: dims differ");
  CqState r;
  for (std::size_t y = 0; y < p.size(); ++y) {
    ComplexMatrix b(1, 1);
    b(0, 0) = trace(matmul(s.mat(), p.elements[y].mat)).real();
    r.labels.push_back(p.labels[y]);
    r.blocks.push_back(std::move(b));
  }
  return r;
}

CqState reference_measurement_state(const DensityOperator& s, const Povm& p) {
  if (p.dim() != s.dim()) throw DimensionMismatch("reference_measurement_state: dims differ");
  const ComplexMatrix rs = op_sqrt(s.op).mat;
  CqState r;
  for (std::size_t y = 0; y < p.size(); ++y) {
    r.labels.push_back(p.labels[y]);
    r.blocks.push_back(basis_conjugate(matmul(rs, matmul(p.elements[y].mat, rs))));
  }
  return r;
}

CqState measured_reference_blocks(const PurifiedState& ps, const Povm& p) {
  if (p.dim() != ps.dim_sys) throw DimensionMismatch("measured_reference_blocks: dims differ");
  // Block y = M lambda_y^t M^dagger with M the amplitude matrix: this is
  // tr_sys[(I (x) lambda_y) |psi><psi|].
  CqState r;
  ComplexMatrix m(ps.dim_ref, ps.dim_sys);
  m.a = ps.amp;
  const ComplexMatrix md = dagger(m);
  for (std::size_t y = 0; y < p.size(); ++y) {
    r.labels.push_back(p.labels[y]);
    r.blocks.push_back(matmul(m, matmul(transpose(p.elements[y].mat), md)));
  }
  return r;
}

CqState classical_postprocess(const CqState& cq, const ClassicalChannel& ch) {
  if (cq.labels != ch.in_labels)
    throw LabelMismatch("classical_postprocess: cq labels differ from channel inputs");
  const std::size_t d = cq.blocks.empty() ? 0 : cq.blocks.front().rows;
  CqState r;
  for (std::size_t y = 0; y < ch.out_labels.size(); ++y) {
    ComplexMatrix b(d, d);
    for (std::size_t w = 0; w < ch.in_labels.size(); ++w) {
      const double v = ch.at(w, y);
      if (v == 0.0) continue;
      for (std::size_t i = 0; i < b.a.size(); ++i) b.a[i] += v * cq.blocks[w].a[i];
    }
    r.labels.push_back(ch.out_labels[y]);
    r.blocks.push_back(std::move(b));
  }
  return r;
}

double von_neumann_entropy(const HermitianOperator& h) {
  SpectralDecomposition s = spectral_decompose(h);
  double e = 0.0;
  for (double g : s.eigenvalues)
    if (g > kEntropyZero) e -= g * std::log2(g);
  return e;
}

double entropy_of_blocks(const std::vector<ComplexMatrix>& blocks) {
  double e = 0.0;
  for (const auto& b : blocks) {
    SpectralDecomposition s = spectral_decompose(hermitian(b, 1e-8));
    for (double g : s.eigenvalues)
      if (g > kEntropyZero) e -= g * std::log2(g);
  }
  return e;
}

double holevo_information(const Ensemble& e) {
  if (e.states.empty()) return 0.0;
  const std::size_t d = e.states.front().dim();
  ComplexMatrix avg(d, d);
  double avg_entropy = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    avg = avg + e.pmf[i] * e.states[i].mat();
    if (e.pmf[i] > 0.0) avg_entropy += e.pmf[i] * von_neumann_entropy(e.states[i].op);
  }
  return von_neumann_entropy(hermitian(avg, 1e-8)) - avg_entropy;
}

double holevo_information_cq(const std::vector<CqState>& states, const std::vector<double>& pmf) {
  if (states.empty()) return 0.0;
  if (states.size() != pmf.size()) throw LabelMismatch("holevo_information_cq: size mismatch");
  CqState avg = cq_scale(states[0], pmf[0]);
  for (std::size_t i = 1; i < states.size(); ++i)
    avg = cq_add(avg, cq_scale(states[i], pmf[i]));
  double avg_entropy = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (pmf[i] > 0.0) avg_entropy += pmf[i] * entropy_of_blocks(states[i].blocks);
  return entropy_of_blocks(avg.blocks) - avg_entropy;
}

PurificationDistance purification_distance(const DensityOperator& s, const DensityOperator& r) {
  if (s.dim() != r.dim()) throw DimensionMismatch("purification_distance: dims differ");
  const cxd overlap = purified_overlap(canonical_purification(s), canonical_purification(r));
  PurificationDistance d;
  d.exact = 2.0 * std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
  d.bound = 2.0 * std::sqrt(2.0) * std::pow(trace_norm(s.mat() - r.mat()), 0.25);
  return d;
}

PurifiedState apply_reference_isometry(const PurifiedState& ps, const ComplexMatrix& v) {
  if (v.cols != ps.dim_ref) throw DimensionMismatch("apply_reference_isometry: shape mismatch");
  if (max_abs_diff(matmul(dagger(v), v), ComplexMatrix::identity(v.cols)) > 1e-10)
    throw NotIsometry("apply_reference_isometry: v^dagger v deviates from identity");
  PurifiedState out;
  out.dim_ref = v.rows;
  out.dim_sys = ps.dim_sys;
  out.amp.assign(out.dim_ref * out.dim_sys, cxd(0.0, 0.0));
  for (std::size_t r = 0; r < v.rows; ++r)
    for (std::size_t k = 0; k < v.cols; ++k) {
      const cxd f = v(r, k);
      if (f == cxd(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < ps.dim_sys; ++c)
        out.amp[r * out.dim_sys + c] += f * ps.amp[k * ps.dim_sys + c];
    }
  return out;
}

double ensemble_simulation_distance(const DensityOperator& rho, const Povm& lam, const Povm& theta,
                                    const Ensemble& e) {
  ComplexMatrix avg(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < e.states.size(); ++i) avg = avg + e.pmf[i] * e.states[i].mat();
  if (max_abs_diff(avg, rho.mat()) > 1e-8)
    throw AverageMismatch("ensemble_simulation_distance: ensemble does not average to rho");
  if (lam.size() != theta.size()) throw LabelMismatch("ensemble_simulation_distance: outcome sets");
  double t = 0.0;
  for (std::size_t k = 0; k < e.states.size(); ++k) {
    for (std::size_t y = 0; y < lam.size(); ++y) {
      const double a = trace(matmul(e.states[k].mat(), lam.elements[y].mat)).real();
      const double b = trace(matmul(e.states[k].mat(), theta.elements[y].mat)).real();
      t += e.pmf[k] * std::abs(a - b);
    }
  }
  return t;
}

}  // namespace povmsim
