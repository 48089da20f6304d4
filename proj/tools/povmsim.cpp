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

// Batch experiment harness. Every command reads a JSON config (flags
// override individual fields), writes one CSV with a fixed column set plus a
// JSON manifest, and derives all randomness from the master seed so reruns
// are byte-identical.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "povmsim/covering.hpp"
#include "povmsim/errors.hpp"
#include "povmsim/io.hpp"
#include "povmsim/protocol.hpp"
#include "povmsim/rng.hpp"

namespace {

using namespace povmsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNumerical = 4;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> n_list;
  std::optional<double> delta;
  std::optional<std::size_t> budget;
  std::optional<std::string> output;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file")->required();
  cmd->add_option("--seed", opt.seed, "master seed (overrides the config)");
  cmd->add_option("--trials", opt.trials, "trial count (overrides the config)");
  cmd->add_option("--n-list", opt.n_list, "comma-separated block lengths (overrides the config)");
  cmd->add_option("--delta", opt.delta, "typicality slack (overrides the config)");
  cmd->add_option("--budget-entries", opt.budget, "per-matrix complex entry cap");
  cmd->add_option("--output", opt.output, "CSV output path (overrides the config)");
}

json load_config(const CommonOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw ConfigError("cannot open config file: " + opt.config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  if (opt.seed) cfg["seed"] = *opt.seed;
  if (opt.trials) cfg["trials"] = *opt.trials;
  if (opt.delta) cfg["delta"] = *opt.delta;
  if (opt.budget) cfg["budget-entries"] = *opt.budget;
  if (opt.output) cfg["output"] = *opt.output;
  if (opt.n_list) {
    json arr = json::array();
    std::stringstream ss(*opt.n_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) arr.push_back(std::stoi(tok));
    cfg["n-list"] = std::move(arr);
  }
  return cfg;
}

template <typename T>
T require(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("config is missing \"") + key + "\"");
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field \"") + key + "\": " + e.what());
  }
}

template <typename T>
T value_or(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field \"") + key + "\": " + e.what());
  }
}

/// Loads a JSON value either inline under `key` or from a sibling file path
/// under `key`-file.
json inline_or_file(const json& cfg, const std::string& key) {
  if (cfg.contains(key)) return cfg.at(key);
  const std::string file_key = key + "-file";
  if (cfg.contains(file_key)) {
    const std::string path = cfg.at(file_key).get<std::string>();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + file_key + " path: " + path);
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
    return j;
  }
  throw ConfigError("config is missing \"" + key + "\" (inline or \"" + file_key + "\")");
}

std::uint64_t row_seed(std::uint64_t master, const std::string& command,
                       const std::string& instance_id, int n, std::size_t trial) {
  // Stable textual hash so adding experiments never perturbs existing rows.
  std::string tag = std::to_string(master) + "|" + command + "|" + instance_id + "|" +
                    std::to_string(n) + "|" + std::to_string(trial);
  return stream_key({fnv1a64(tag)});
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw ConfigError("cannot open output path: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::string fmt(double v) {
  if (!std::isfinite(v)) throw Error("non-finite value in a CSV field");
  return format_double(v);
}
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

void write_manifest(const json& cfg, const std::string& command, double wall_seconds) {
  const std::string path = value_or<std::string>(
      cfg, "manifest", value_or<std::string>(cfg, "output", "out.csv") + ".manifest.json");
  json manifest{{"command", command},
                {"config", cfg},
                {"version", "0.1.0"},
                {"wall-time-seconds", wall_seconds}};
  std::ofstream out(path);
  if (out) out << manifest.dump(2) << '\n';
}

struct TripleSpec {
  DensityOperator rho;
  Povm lambda;
  CompatibleTriple triple;
};

TripleSpec load_triple(const json& cfg) {
  const json inst = inline_or_file(cfg, "instance");
  DensityOperator rho = density_from_json(inline_or_file(inst, "rho"), "/instance/rho");
  Povm lambda = povm_from_json(inline_or_file(inst, "lambda"), "/instance/lambda/");
  Povm mu = inst.contains("mu") || inst.contains("mu-file")
                ? povm_from_json(inline_or_file(inst, "mu"), "/instance/mu/")
                : lambda;
  ClassicalChannel channel =
      inst.contains("channel") || inst.contains("channel-file")
          ? channel_from_json(inline_or_file(inst, "channel"), "/instance/channel/")
          : identity_channel(mu.labels);
  CompatibleTriple triple = derive_beta_gamma(rho, mu, channel);
  return TripleSpec{std::move(rho), std::move(lambda), std::move(triple)};
}

CoveringInstance load_covering_instance(const json& cfg, CoverMode mode) {
  const json inst = inline_or_file(cfg, "instance");
  CoveringInstance ci;
  ci.pmf = pmf_from_json(inline_or_file(inst, "pmf"), "/instance/pmf");
  const json& jl = inst.contains("labels") ? inst.at("labels") : json();
  const json states = inline_or_file(inst, "states");
  std::vector<std::string> labels;
  if (jl.is_array()) {
    labels = jl.get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < ci.pmf.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != ci.pmf.size())
    throw SchemaError("/instance/labels", "label count must match the pmf");
  for (const auto& l : labels) {
    if (!states.contains(l)) throw SchemaError("/instance/states/" + l, "missing state");
    ci.states.push_back(density_from_json(states.at(l), "/instance/states/" + l + "/"));
  }
  ci.mode = mode;
  if (mode == CoverMode::Coset) prime_field(int(ci.pmf.size()));
  return ci;
}

int run_validate(const CommonOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  json cfg = load_config(opt);
  const json inst = inline_or_file(cfg, "instance");
  const Povm p = povm_from_json(inline_or_file(inst, "povm"), "/instance/povm/");
  const PovmValidation rep = validate_povm(p);

  const std::string out = value_or<std::string>(cfg, "output", "validate.csv");
  CsvWriter csv(out, {"instance_id", "max_negative_eigenvalue", "max_identity_deviation", "pass"});
  csv.row({value_or<std::string>(cfg, "instance-id", "instance"),
           fmt(rep.max_negative_eigenvalue), fmt(rep.max_identity_deviation),
           rep.pass ? "true" : "false"});
  std::cout << (rep.pass ? "pass" : "fail") << '\n';
  write_manifest(cfg, "validate", std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - start)
                                      .count());
  return rep.pass ? kExitOk : kExitNumerical;
}

int run_covering(const CommonOptions& opt, CoverMode mode) {
  const auto start = std::chrono::steady_clock::now();
  const std::string command = mode == CoverMode::Iid ? "covering" : "coset-covering";
  json cfg = load_config(opt);
  if (cfg.contains("budget-entries")) set_budget_entries(require<std::size_t>(cfg, "budget-entries"));
  CoveringInstance inst = load_covering_instance(cfg, mode);
  const auto n_list = require<std::vector<int>>(cfg, "n-list");
  const double rate = require<double>(cfg, "R");
  const std::size_t trials = value_or<std::size_t>(cfg, "trials", 20);
  const std::uint64_t seed = require<std::uint64_t>(cfg, "seed");
  const std::string id = value_or<std::string>(cfg, "instance-id", "instance");

  CsvWriter csv(value_or<std::string>(cfg, "output", command + ".csv"),
                {"instance_id", "mode", "n", "R", "chi", "trials", "mean_dist", "std_dist",
                 "bound", "seed"});
  for (int n : n_list) {
    inst.n = n;
    inst.rate = rate;
    const std::uint64_t rs = row_seed(seed, command, id, n, 0);
    const CoveringResult r = covering_experiment(inst, trials, rs);
    csv.row({id, mode == CoverMode::Iid ? "iid" : "coset", fmt(n), fmt(rate), fmt(r.chi),
             fmt(trials), fmt(r.mean), fmt(r.stddev), fmt(r.bound), fmt(rs)});
  }
  write_manifest(cfg, command, std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count());
  return kExitOk;
}

int run_simulate(const CommonOptions& opt, bool structured) {
  const auto start = std::chrono::steady_clock::now();
  const std::string command = structured ? "structured-simulate" : "simulate";
  json cfg = load_config(opt);
  if (cfg.contains("budget-entries")) set_budget_entries(require<std::size_t>(cfg, "budget-entries"));
  TripleSpec spec = load_triple(cfg);
  const auto n_list = require<std::vector<int>>(cfg, "n-list");
  const std::size_t trials = value_or<std::size_t>(cfg, "trials", 1);
  const std::uint64_t seed = require<std::uint64_t>(cfg, "seed");
  const std::string id = value_or<std::string>(cfg, "instance-id", "instance");

  CsvWriter csv(value_or<std::string>(cfg, "output", command + ".csv"),
                {"instance_id", "n", "K", "M", "C", "R", "chi_beta", "chi_gamma", "term1",
                 "term2_raw", "term2", "total", "decode_failure_rate", "seed"});
  for (int n : n_list) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t rs = row_seed(seed, command, id, n, trial);
      SimulationReport rep;
      if (structured) {
        const auto exps = require<std::vector<int>>(cfg, "exps");
        if (exps.size() != 3) throw ConfigError("\"exps\" must be [lc, lr, lb]");
        const double delta = value_or<double>(cfg, "delta", 0.2);
        rep = simulate_structured(spec.rho, spec.lambda, spec.triple, n,
                                  {exps[0], exps[1], exps[2]}, delta, rs);
      } else {
        rep = simulate_end_to_end(spec.rho, spec.lambda, spec.triple, n,
                                  require<double>(cfg, "C"), require<double>(cfg, "R"), rs);
      }
      csv.row({id, fmt(n), fmt(rep.K), fmt(rep.M), fmt(rep.C), fmt(rep.R), fmt(rep.chi_beta),
               fmt(rep.chi_gamma), fmt(rep.term1), fmt(rep.term2_raw), fmt(rep.term2),
               fmt(rep.total), fmt(rep.decode_failure_rate), fmt(rs)});
    }
  }
  write_manifest(cfg, command, std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count());
  return kExitOk;
}

int run_t123(const CommonOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  json cfg = load_config(opt);
  if (cfg.contains("budget-entries")) set_budget_entries(require<std::size_t>(cfg, "budget-entries"));
  CoveringInstance inst = load_covering_instance(cfg, CoverMode::Iid);
  const auto n_list = require<std::vector<int>>(cfg, "n-list");
  const double rate = require<double>(cfg, "R");
  const double delta = value_or<double>(cfg, "delta", 0.2);
  const std::size_t trials = value_or<std::size_t>(cfg, "trials", 10);
  const std::uint64_t seed = require<std::uint64_t>(cfg, "seed");
  const std::string id = value_or<std::string>(cfg, "instance-id", "instance");

  CsvWriter csv(value_or<std::string>(cfg, "output", "t123.csv"),
                {"instance_id", "n", "R", "delta", "trial", "dist", "t1", "t2", "t3", "t2_bound",
                 "seed"});
  for (int n : n_list) {
    inst.n = n;
    inst.rate = rate;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t rs = row_seed(seed, "t123", id, n, trial);
      const auto codewords = draw_codewords(inst, rs);
      const T123 t = t123_decomposition(inst, codewords, delta);
      if (t.dist > t.t1 + t.t2 + t.t3 + 1e-9)
        throw Error("t123: triangle decomposition violated");
      csv.row({id, fmt(n), fmt(rate), fmt(delta), fmt(trial), fmt(t.dist), fmt(t.t1), fmt(t.t2),
               fmt(t.t3), fmt(t.t2_bound), fmt(rs)});
    }
  }
  write_manifest(cfg, "t123", std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-simulation experiment harness"};
  app.require_subcommand(1);

  CommonOptions opt;
  CLI::App* validate = app.add_subcommand("validate", "Check a POVM file");
  CLI::App* covering = app.add_subcommand("covering", "Covering-lemma trials, i.i.d. codebooks");
  CLI::App* coset = app.add_subcommand("coset-covering",
                                       "Covering-lemma trials, coset codebooks");
  CLI::App* simulate = app.add_subcommand("simulate", "End-to-end measurement simulation");
  CLI::App* structured =
      app.add_subcommand("structured-simulate", "Coset-structured measurement simulation");
  CLI::App* t123 = app.add_subcommand("t123", "Three-term covering decomposition per trial");
  for (CLI::App* cmd : {validate, covering, coset, simulate, structured, t123})
    add_common_flags(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(opt);
    if (covering->parsed()) return run_covering(opt, CoverMode::Iid);
    if (coset->parsed()) return run_covering(opt, CoverMode::Coset);
    if (simulate->parsed()) return run_simulate(opt, false);
    if (structured->parsed()) return run_simulate(opt, true);
    if (t123->parsed()) return run_t123(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
