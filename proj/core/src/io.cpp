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

#include "povmsim/io.hpp"

#include <charconv>

#include "povmsim/errors.hpp"

namespace povmsim {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(path + key, "missing required field");
  return j.at(key);
}

std::vector<std::vector<double>> real_grid(const json& j, const std::string& path,
                                           std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw SchemaError(path, "expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<double>> g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != dim)
      throw SchemaError(path + "/" + std::to_string(r), "expected " + std::to_string(dim) +
                                                            " columns");
    for (const auto& v : row) {
      if (!v.is_number()) throw SchemaError(path + "/" + std::to_string(r), "non-numeric entry");
      g[r].push_back(v.get<double>());
    }
  }
  return g;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json rrow = json::array(), irow = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) {
      rrow.push_back(m(r, c).real());
      irow.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", m.rows}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  const json& jd = field(j, "dim", path);
  if (!jd.is_number_integer() || jd.get<long long>() < 1)
    throw SchemaError(path + "dim", "expected a positive integer");
  const std::size_t dim = jd.get<std::size_t>();
  auto re = real_grid(field(j, "re", path), path + "re", dim);
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = re[r][c];
  if (j.contains("im")) {
    auto im = real_grid(j.at("im"), path + "im", dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) += cxd(0.0, im[r][c]);
  }
  if (!all_finite(m)) throw SchemaError(path, "non-finite matrix entry");
  return m;
}

json povm_to_json(const Povm& p) {
  json labels = json::array(), elements = json::object();
  for (std::size_t i = 0; i < p.size(); ++i) {
    labels.push_back(p.labels[i]);
    elements[p.labels[i]] = matrix_to_json(p.elements[i].mat);
  }
  return json{{"labels", std::move(labels)}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const json& j, const std::string& path) {
  const json& jl = field(j, "labels", path);
  if (!jl.is_array() || jl.empty()) throw SchemaError(path + "labels", "expected a label array");
  const json& je = field(j, "elements", path);
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> elems;
  for (const auto& l : jl) {
    if (!l.is_string()) throw SchemaError(path + "labels", "labels must be strings");
    const std::string name = l.get<std::string>();
    if (!je.contains(name)) throw SchemaError(path + "elements/" + name, "missing element");
    labels.push_back(name);
    elems.push_back(matrix_from_json(je.at(name), path + "elements/" + name + "/"));
  }
  try {
    return make_povm(std::move(labels), std::move(elems));
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

json density_to_json(const DensityOperator& s) { return matrix_to_json(s.mat()); }

DensityOperator density_from_json(const json& j, const std::string& path) {
  ComplexMatrix m = matrix_from_json(j, path);
  try {
    return density(std::move(m));
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

json ensemble_to_json(const Ensemble& e) {
  json labels = json::array(), states = json::object(), pmf = json::array();
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    labels.push_back(e.labels[i]);
    states[e.labels[i]] = density_to_json(e.states[i]);
    pmf.push_back(e.pmf[i]);
  }
  return json{{"labels", std::move(labels)},
              {"states", std::move(states)},
              {"pmf", std::move(pmf)}};
}

Ensemble ensemble_from_json(const json& j, const std::string& path) {
  const json& jl = field(j, "labels", path);
  const json& js = field(j, "states", path);
  const json& jp = field(j, "pmf", path);
  if (!jl.is_array() || jl.empty()) throw SchemaError(path + "labels", "expected a label array");
  if (!jp.is_array() || jp.size() != jl.size())
    throw SchemaError(path + "pmf", "pmf length must match labels");
  std::vector<std::string> labels;
  std::vector<DensityOperator> states;
  std::vector<double> pmf;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string name = jl.at(i).get<std::string>();
    if (!js.contains(name)) throw SchemaError(path + "states/" + name, "missing state");
    labels.push_back(name);
    states.push_back(density_from_json(js.at(name), path + "states/" + name + "/"));
    if (!jp.at(i).is_number()) throw SchemaError(path + "pmf", "non-numeric probability");
    pmf.push_back(jp.at(i).get<double>());
  }
  try {
    return make_ensemble(std::move(labels), std::move(states), std::move(pmf));
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

json channel_to_json(const ClassicalChannel& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.in_labels.size(); ++i) {
    json row = json::array();
    for (std::size_t o = 0; o < c.out_labels.size(); ++o) row.push_back(c.at(i, o));
    rows.push_back(std::move(row));
  }
  return json{{"in_labels", c.in_labels}, {"out_labels", c.out_labels}, {"p", std::move(rows)}};
}

ClassicalChannel channel_from_json(const json& j, const std::string& path) {
  const json& ji = field(j, "in_labels", path);
  const json& jo = field(j, "out_labels", path);
  const json& jp = field(j, "p", path);
  std::vector<std::string> in = ji.get<std::vector<std::string>>();
  std::vector<std::string> out = jo.get<std::vector<std::string>>();
  if (!jp.is_array() || jp.size() != in.size())
    throw SchemaError(path + "p", "expected one row per input label");
  std::vector<double> p;
  for (std::size_t r = 0; r < in.size(); ++r) {
    const json& row = jp.at(r);
    if (!row.is_array() || row.size() != out.size())
      throw SchemaError(path + "p/" + std::to_string(r), "row length must match output labels");
    for (const auto& v : row) p.push_back(v.get<double>());
  }
  try {
    return make_channel(std::move(in), std::move(out), std::move(p));
  } catch (const Error& e) {
    throw SchemaError(path + "p", e.what());
  }
}

json pmf_to_json(const Pmf& p) { return json(p.p); }

Pmf pmf_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a probability array");
  std::vector<double> p;
  for (const auto& v : j) {
    if (!v.is_number()) throw SchemaError(path, "non-numeric probability");
    p.push_back(v.get<double>());
  }
  try {
    return make_pmf(std::move(p));
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

json coset_codebook_to_json(const CosetCode& code, const CosetExponents& exps, int n) {
  json g = json::array();
  for (const auto& row : code.generator) g.push_back(row);
  return json{{"q", code.field.q},
              {"n", n},
              {"exps", {exps.lc, exps.lr, exps.lb}},
              {"G", std::move(g)},
              {"shift", code.shift}};
}

json iid_codebook_to_json(const Codebook2D& cb) {
  json entries = json::array();
  for (const auto& e : cb.entries) entries.push_back(e);
  return json{{"alphabet", cb.alphabet},
              {"n", cb.n},
              {"K", cb.K},
              {"M", cb.M},
              {"entries", std::move(entries)}};
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace povmsim
