// Copyright 2026 The fairgraph Authors
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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fairgraph/bias.h"
#include "fairgraph/debias.h"
#include "fairgraph/fairness.h"
#include "fairgraph/io.h"
#include "fairgraph/synth.h"
#include "report.h"

namespace fairgraph::tools {
namespace {

namespace fs = std::filesystem;

struct InputOptions {
  std::string network;
  std::string edges;
  std::string attributes;
  std::string sensitive_column;
  std::string label_column;
  std::vector<std::string> drop_columns;
  bool include_sensitive = false;
};

struct PropagationOptions {
  std::optional<double> alpha;
  std::optional<int> horizon;
  std::string betas;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("network", in.network, "Network JSON file");
  cmd->add_option("--edges", in.edges, "Edge list (\"u v\" per line)");
  cmd->add_option("--attributes", in.attributes, "Attribute CSV with header");
  cmd->add_option("--sensitive-column", in.sensitive_column,
                  "CSV column holding the sensitive attribute");
  cmd->add_option("--label-column", in.label_column,
                  "CSV column holding binary labels");
  cmd->add_option("--drop-column", in.drop_columns, "CSV columns to ignore");
  cmd->add_flag("--include-sensitive-as-feature", in.include_sensitive,
                "Keep the sensitive column as an attribute");
}

void add_propagation_options(CLI::App* cmd, PropagationOptions& prop) {
  cmd->add_option("--alpha", prop.alpha, "Self-loop reweighting alpha");
  cmd->add_option("--horizon", prop.horizon, "Propagation horizon H");
  cmd->add_option("--betas", prop.betas,
                  "Comma-separated hop weights beta_1..beta_H");
}

AttributedNetwork load_input(const InputOptions& in) {
  if (!in.network.empty()) {
    if (!in.edges.empty() || !in.attributes.empty()) {
      throw DomainError("give either a network file or --edges/--attributes");
    }
    return load_network_file(in.network);
  }
  if (in.edges.empty() || in.attributes.empty()) {
    throw DomainError(
        "no input: pass a network JSON file or --edges and --attributes");
  }
  if (in.sensitive_column.empty()) {
    throw DomainError("--sensitive-column is required with --attributes");
  }
  AttributeSchema schema;
  schema.sensitive_column = in.sensitive_column;
  if (!in.label_column.empty()) schema.label_column = in.label_column;
  schema.drop_columns = in.drop_columns;
  schema.include_sensitive_as_feature = in.include_sensitive;
  return load_graph(read_text_file(in.edges), read_text_file(in.attributes),
                    schema);
}

std::string input_name(const InputOptions& in) {
  return in.network.empty() ? in.edges + "," + in.attributes : in.network;
}

std::vector<double> parse_betas(const std::string& text) {
  std::vector<double> betas;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw IoError("cannot parse --betas entry '" + item + "'");
    }
    betas.push_back(value);
  }
  if (betas.empty()) throw IoError("--betas is empty");
  return betas;
}

BiasParams resolve_bias_params(const PropagationOptions& prop,
                               double default_alpha, int default_horizon) {
  BiasParams params;
  params.alpha = prop.alpha.value_or(default_alpha);
  if (!prop.betas.empty()) {
    params.betas = parse_betas(prop.betas);
    if (prop.horizon && *prop.horizon != params.horizon()) {
      throw DomainError("--horizon does not match the number of --betas");
    }
  } else {
    params.betas = default_betas(prop.horizon.value_or(default_horizon));
  }
  validate_propagation_params(params.alpha, params.betas);
  return params;
}

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::string matrix_csv(const Matrix& m) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) s << ',';
      s << m(i, j);
    }
    s << '\n';
  }
  return s.str();
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// --- synth ---

struct SynthArgs {
  std::string kind;
  std::optional<int> n;
  std::optional<int> t;
  std::optional<double> noise_sigma;
  std::optional<int> extra_dims;
  bool unlabeled = false;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  synth::SynthConfig cfg;
  cfg.seed = a.seed;
  // The ternary generator needs n divisible by 3.
  cfg.n_nodes = a.n.value_or(a.kind == "ternary" ? 999 : 1000);
  cfg.t = a.t;
  if (a.noise_sigma) cfg.noise_sigma = *a.noise_sigma;
  if (a.extra_dims) cfg.extra_dims = *a.extra_dims;

  std::optional<AttributedNetwork> net;
  bool labeled = true;
  if (a.kind == "ternary") {
    net = synth::gen_ternary(cfg);
  } else {
    net = a.kind == "case1" ? synth::gen_case_biased_attributes(cfg)
                            : synth::gen_case_biased_structure(cfg);
    if (a.unlabeled) {
      labeled = false;
    } else {
      net = synth::attach_labels_and_padding(*net, cfg);
    }
  }
  save_network_file(*net, a.out);

  Json manifest;
  manifest["command"] = "synth";
  manifest["kind"] = a.kind;
  manifest["labeled"] = labeled;
  manifest["config"] = to_json(cfg);
  manifest["num_nodes"] = net->num_nodes();
  manifest["num_edges"] = net->num_edges();
  manifest["num_attributes"] = net->num_attributes();
  manifest["num_groups"] = net->num_groups();
  manifest["network"] = fs::path(a.out).filename().string();
  fs::path manifest_path = fs::path(a.out);
  manifest_path.replace_extension(".manifest.json");
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  out << "wrote " << a.out << " and " << manifest_path.string() << "\n";
  return kExitOk;
}

// --- measure ---

int cmd_measure(const InputOptions& in, const PropagationOptions& prop,
                const std::string& out_path, std::ostream& out) {
  const AttributedNetwork net = load_input(in);
  const BiasParams params = resolve_bias_params(prop, 0.5, 2);
  Json j;
  j["command"] = "measure";
  j["input"] = input_name(in);
  j["num_nodes"] = net.num_nodes();
  j["num_edges"] = net.num_edges();
  j["bias"] = to_json(measure_bias(net, params));
  emit(j, out_path, out);
  return kExitOk;
}

// --- debias ---

struct DebiasArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<int> horizon;
  std::string betas;
  std::optional<double> mu1, mu2, mu3, mu4;
  std::optional<double> clip_c;
  std::optional<int> mask_z;
  std::optional<double> binarize_r;
  std::optional<int> epochs;
  bool eval = false;
};

int cmd_debias(const InputOptions& in, const DebiasArgs& a, std::ostream& out,
               std::ostream& err) {
  Stopwatch watch;
  Json timings;
  debias::DebiasConfig cfg;
  EvalOptions eval_opts;
  std::optional<std::string> config_betas;
  if (!a.config.empty()) {
    const Json j = parse_json(read_text_file(a.config), a.config);
    apply_json(j, cfg);
    if (j.contains("eval")) apply_json(j["eval"], eval_opts);
    if (j.contains("betas") && !j["betas"].is_null()) {
      std::ostringstream s;
      s << std::setprecision(17);
      bool first = true;
      for (const auto& b : j["betas"]) {
        if (!b.is_number()) throw DomainError("betas must be numbers");
        s << (first ? "" : ",") << b.get<double>();
        first = false;
      }
      config_betas = s.str();
    }
  }
  if (a.seed) {
    cfg.seed = *a.seed;
    eval_opts.hyper.seed = *a.seed;
    eval_opts.split_seed = *a.seed;
  }
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.horizon) cfg.horizon = *a.horizon;
  if (a.mu1) cfg.mu1 = *a.mu1;
  if (a.mu2) cfg.mu2 = *a.mu2;
  if (a.mu3) cfg.mu3 = *a.mu3;
  if (a.mu4) cfg.mu4 = *a.mu4;
  if (a.clip_c) cfg.clip_c = *a.clip_c;
  if (a.mask_z) cfg.mask_z = *a.mask_z;
  if (a.binarize_r) cfg.binarize_r = *a.binarize_r;
  if (a.epochs) cfg.epochs = *a.epochs;

  const AttributedNetwork net = load_input(in);
  debias::validate(cfg, net.num_attributes());
  PropagationOptions prop;
  prop.alpha = cfg.alpha;
  prop.horizon = cfg.horizon;
  prop.betas = !a.betas.empty() ? a.betas : config_betas.value_or("");
  const BiasParams params = resolve_bias_params(prop, cfg.alpha, cfg.horizon);
  timings["load"] = watch.lap();

  const BiasReport before = measure_bias(net, params);
  timings["measure_before"] = watch.lap();
  const debias::DebiasResult result = debias::run_debias(net, cfg);
  timings["debias"] = watch.lap();
  const BiasReport after = measure_bias(result.network, params);
  const BiasReport after_continuous =
      measure_bias(result.network, result.a_continuous, params);
  timings["measure_after"] = watch.lap();

  Json config = to_json(cfg);
  config["betas"] = params.betas;
  if (a.eval) config["eval"] = to_json(eval_opts);

  Json report;
  report["command"] = "debias";
  report["input"] = input_name(in);
  report["config"] = config;
  report["bias_before"] = to_json(before);
  report["bias_after"] = to_json(after);
  report["bias_after_continuous"] = to_json(after_continuous);
  report["theta"] = std::vector<double>(
      result.theta.data(), result.theta.data() + result.theta.size());
  report["masked_dims"] = result.masked_dims;
  const Matrix diff = result.a_binary - net.adjacency();
  report["edges_before"] = net.num_edges();
  report["edges_after"] = result.network.num_edges();
  report["edges_added"] = static_cast<long long>((diff.array() > 0.5).count() / 2);
  report["edges_removed"] =
      static_cast<long long>((diff.array() < -0.5).count() / 2);
  report["loss_trace"] = result.loss_trace;

  if (a.eval) {
    if (!net.labels()) throw DomainError("--eval needs node labels");
    const EvalOutcome vanilla = evaluate_gcn(net, eval_opts);
    const EvalOutcome debiased = evaluate_gcn(result.network, eval_opts);
    report["fairness_vanilla"] = to_json(vanilla.report);
    report["fairness_debiased"] = to_json(debiased.report);
    timings["eval"] = watch.lap();
  }

  const fs::path dir(a.out);
  save_network_file(result.network, dir / "network.json");
  write_text_file(dir / "a_tilde_continuous.csv", matrix_csv(result.a_continuous));
  timings["write"] = watch.lap();
  report["timings"] = timings;
  write_text_file(dir / "report.json", report.dump(2) + "\n");
  out << "b_attr " << before.b_attr << " -> " << after.b_attr << ", b_stru "
      << before.b_stru << " -> " << after.b_stru << "\n";
  out << "wrote " << (dir / "network.json").string() << ", "
      << (dir / "a_tilde_continuous.csv").string() << ", "
      << (dir / "report.json").string() << "\n";
  (void)err;
  return kExitOk;
}

// --- eval ---

struct EvalArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
  std::string scaling;
  std::string predictions;
  std::string out;
};

int cmd_eval(const InputOptions& in, const EvalArgs& a, std::ostream& out) {
  EvalOptions opts;
  if (!a.config.empty()) {
    apply_json(parse_json(read_text_file(a.config), a.config), opts);
  }
  if (a.seed) {
    opts.hyper.seed = *a.seed;
    opts.split_seed = *a.seed;
  }
  if (a.epochs) opts.hyper.epochs = *a.epochs;
  if (!a.scaling.empty()) opts.scaling = input_scaling_from_string(a.scaling);
  validate(opts.hyper);

  const AttributedNetwork net = load_input(in);
  if (!net.labels()) throw DomainError("eval needs node labels");
  const EvalOutcome outcome = evaluate_gcn(net, opts);

  if (!a.predictions.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "node_id,score,label,sensitive\n";
    for (int i = 0; i < net.num_nodes(); ++i) {
      csv << i << ',' << outcome.scores(i) << ',' << (*net.labels())[i] << ','
          << net.sensitive()[i] << '\n';
    }
    write_text_file(a.predictions, csv.str());
  }

  Json j;
  j["command"] = "eval";
  j["input"] = input_name(in);
  j["config"] = to_json(opts);
  j["splits"] = to_json(outcome.splits);
  j["final_train_loss"] =
      outcome.loss_history.empty() ? Json(nullptr) : Json(outcome.loss_history.back());
  j["fairness"] = to_json(outcome.report);
  emit(j, a.out, out);
  return kExitOk;
}

// --- spectral ---

int cmd_spectral(const InputOptions& in, const PropagationOptions& prop,
                 const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  const AttributedNetwork net = load_input(in);
  if (net.num_nodes() > kSpectralNodeCap) {
    throw DomainError("spectral analysis is capped at " +
                      std::to_string(kSpectralNodeCap) + " nodes (got " +
                      std::to_string(net.num_nodes()) + ")");
  }
  PropagationOptions no_alpha = prop;
  no_alpha.alpha.reset();
  const BiasParams params = resolve_bias_params(no_alpha, 0.5, 2);
  const SpectralResponse response =
      frequency_response(net.adjacency(), params.betas, prop.alpha);
  if (!response.alpha_matches) {
    err << "warning: alpha=" << response.alpha
        << " differs from 1/lambda_max=" << response.matched_alpha
        << "; the response table describes M_H only at the matched alpha\n";
  }
  Json j;
  j["command"] = "spectral";
  j["input"] = input_name(in);
  j["num_nodes"] = net.num_nodes();
  j["betas"] = params.betas;
  j["spectrum"] = to_json(response);
  emit(j, out_path, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Bias measurement and debiasing for attributed networks",
               "fairgraph"};
  app.require_subcommand(1);

  InputOptions in;
  PropagationOptions prop;
  std::string out_path;
  std::function<int()> action;

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic network");
  synth_cmd->add_option("kind", synth_args.kind, "case1 | case2 | ternary")
      ->required()
      ->check(CLI::IsMember({"case1", "case2", "ternary"}));
  synth_cmd->add_option("--n", synth_args.n, "Node count");
  synth_cmd->add_option("--t", synth_args.t, "Dense community size (case2)");
  synth_cmd->add_option("--noise-sigma", synth_args.noise_sigma,
                        "Label noise standard deviation");
  synth_cmd->add_option("--extra-dims", synth_args.extra_dims,
                        "Unbiased attribute columns");
  synth_cmd->add_flag("--unlabeled", synth_args.unlabeled,
                      "Skip label and padding columns (case1/case2)");
  synth_cmd->add_option("--seed", synth_args.seed, "Random seed");
  synth_cmd->add_option("--out", synth_args.out, "Output network JSON")
      ->required();
  synth_cmd->callback([&] { action = [&] { return cmd_synth(synth_args, out); }; });

  auto* measure_cmd =
      app.add_subcommand("measure", "Attribute and structural bias");
  add_input_options(measure_cmd, in);
  add_propagation_options(measure_cmd, prop);
  measure_cmd->add_option("--out", out_path, "Write the report here");
  measure_cmd->callback(
      [&] { action = [&] { return cmd_measure(in, prop, out_path, out); }; });

  DebiasArgs debias_args;
  auto* debias_cmd = app.add_subcommand("debias", "Debias a network");
  add_input_options(debias_cmd, in);
  debias_cmd->add_option("--config", debias_args.config, "JSON config file");
  debias_cmd->add_option("--out", debias_args.out, "Output directory")
      ->required();
  debias_cmd->add_option("--seed", debias_args.seed, "Random seed");
  debias_cmd->add_option("--alpha", debias_args.alpha, "Self-loop weight");
  debias_cmd->add_option("--horizon", debias_args.horizon, "Propagation hops");
  debias_cmd->add_option("--betas", debias_args.betas,
                         "Hop weights for the bias report");
  debias_cmd->add_option("--mu1", debias_args.mu1, "Attribute fit weight");
  debias_cmd->add_option("--mu2", debias_args.mu2, "Attribute sparsity weight");
  debias_cmd->add_option("--mu3", debias_args.mu3, "Structure fit weight");
  debias_cmd->add_option("--mu4", debias_args.mu4, "Structure sparsity weight");
  debias_cmd->add_option("--clip-c", debias_args.clip_c, "Critic clip bound");
  debias_cmd->add_option("--mask-z", debias_args.mask_z,
                         "Attribute dimensions to mask");
  debias_cmd->add_option("--binarize-r", debias_args.binarize_r,
                         "Edge flip threshold ratio");
  debias_cmd->add_option("--epochs", debias_args.epochs, "Training epochs");
  debias_cmd->add_flag("--eval", debias_args.eval,
                       "Also train GCNs on the input and debiased networks");
  debias_cmd->callback(
      [&] { action = [&] { return cmd_debias(in, debias_args, out, err); }; });

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Train a GCN and report fairness");
  add_input_options(eval_cmd, in);
  eval_cmd->add_option("--config", eval_args.config, "JSON eval config");
  eval_cmd->add_option("--seed", eval_args.seed, "Random seed");
  eval_cmd->add_option("--epochs", eval_args.epochs, "GCN training epochs");
  eval_cmd->add_option("--scaling", eval_args.scaling,
                       "none | minmax | standardize");
  eval_cmd->add_option("--predictions", eval_args.predictions,
                       "Write per-node scores as CSV");
  eval_cmd->add_option("--out", eval_args.out, "Write the report here");
  eval_cmd->callback([&] { action = [&] { return cmd_eval(in, eval_args, out); }; });

  auto* spectral_cmd = app.add_subcommand(
      "spectral", "Frequency response of the propagation matrix");
  add_input_options(spectral_cmd, in);
  add_propagation_options(spectral_cmd, prop);
  spectral_cmd->add_option("--out", out_path, "Write the report here");
  spectral_cmd->callback([&] {
    action = [&] { return cmd_spectral(in, prop, out_path, out, err); };
  });

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("fairgraph");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    return action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace fairgraph::tools
