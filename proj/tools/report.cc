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

#include "report.h"

#include <string>

namespace fairgraph::tools {
namespace {

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json pair_table(const PairTable& table) {
  Json rows = Json::array();
  for (const auto& row : table) {
    Json out = Json::array();
    for (const auto& v : row) out.push_back(v ? Json(*v) : Json(nullptr));
    rows.push_back(std::move(out));
  }
  return rows;
}

Json optional_value(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
T read_value(const Json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse " + std::string(what) + ": " + e.what());
  }
}

Json to_json(const BiasParams& params) {
  Json j;
  j["alpha"] = params.alpha;
  j["horizon"] = params.horizon();
  j["betas"] = params.betas;
  return j;
}

Json to_json(const BiasReport& report) {
  Json j;
  j["b_attr"] = report.b_attr;
  j["b_stru"] = report.b_stru;
  j["num_groups"] = report.num_groups;
  j["per_dim_attr"] = report.per_dim_attr;
  j["per_dim_stru"] = report.per_dim_stru;
  j["params"] = to_json(report.params);
  if (report.num_groups > 2) {
    j["pairwise"] = {{"attr", matrix_rows(report.pairwise.attr)},
                     {"stru", matrix_rows(report.pairwise.stru)}};
  }
  return j;
}

Json to_json(const SpectralResponse& response) {
  Json j;
  j["lambda_max"] = response.lambda_max;
  j["alpha"] = response.alpha;
  j["matched_alpha"] = response.matched_alpha;
  j["alpha_matches"] = response.alpha_matches;
  j["residual"] = response.residual;
  j["eigenvalues"] = response.eigenvalues;
  j["response"] = response.response;
  return j;
}

Json to_json(const synth::SynthConfig& cfg) {
  Json j;
  j["n_nodes"] = cfg.n_nodes;
  j["seed"] = cfg.seed;
  j["t"] = cfg.community_size();
  j["noise_sigma"] = cfg.noise_sigma;
  j["extra_dims"] = cfg.extra_dims;
  return j;
}

Json to_json(const debias::DebiasConfig& cfg) {
  Json j;
  j["epochs"] = cfg.epochs;
  j["lr_early"] = cfg.lr_early;
  j["lr_late"] = cfg.lr_late;
  j["lr_switch_epoch"] = cfg.lr_switch_epoch;
  j["mu1"] = cfg.mu1;
  j["mu2"] = cfg.mu2;
  j["mu3"] = cfg.mu3;
  j["mu4"] = cfg.mu4;
  j["clip_c"] = cfg.clip_c;
  j["mask_z"] = cfg.mask_z ? Json(*cfg.mask_z) : Json(nullptr);
  j["binarize_r"] = cfg.binarize_r;
  j["alpha"] = cfg.alpha;
  j["horizon"] = cfg.horizon;
  j["critic_steps_per_epoch"] = cfg.critic_steps_per_epoch;
  j["critic_lr"] = cfg.critic_lr;
  j["critic_rule"] = debias::to_string(cfg.critic_rule);
  j["theta_rule"] = debias::to_string(cfg.theta_rule);
  j["adjacency_rule"] = debias::to_string(cfg.adjacency_rule);
  j["rmsprop_decay"] = cfg.rmsprop_decay;
  j["rmsprop_eps"] = cfg.rmsprop_eps;
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const GcnHyper& hyper) {
  Json j;
  j["hidden"] = hyper.hidden;
  j["dropout"] = hyper.dropout;
  j["lr"] = hyper.lr;
  j["epochs"] = hyper.epochs;
  j["weight_decay"] = hyper.weight_decay;
  j["seed"] = hyper.seed;
  return j;
}

Json to_json(const EvalOptions& opts) {
  Json j;
  j["split_seed"] = opts.split_seed;
  j["scaling"] = to_string(opts.scaling);
  j["gcn"] = to_json(opts.hyper);
  return j;
}

Json to_json(const FairnessReport& report) {
  Json j;
  j["auc"] = report.auc;
  j["f1"] = report.f1;
  j["delta_sp"] = optional_value(report.gaps.sp);
  j["delta_eo"] = optional_value(report.gaps.eo);
  j["num_groups"] = report.gaps.num_groups;
  j["pairwise_delta_sp"] = pair_table(report.gaps.delta_sp);
  j["pairwise_delta_eo"] = pair_table(report.gaps.delta_eo);
  return j;
}

Json to_json(const Splits& splits) {
  Json j;
  j["train"] = splits.train.size();
  j["val"] = splits.val.size();
  j["test"] = splits.test.size();
  return j;
}

void apply_json(const Json& j, debias::DebiasConfig& cfg) {
  if (!j.is_object()) throw DomainError("debias config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "epochs") {
      cfg.epochs = read_value<int>(value, key);
    } else if (key == "lr_early") {
      cfg.lr_early = read_value<double>(value, key);
    } else if (key == "lr_late") {
      cfg.lr_late = read_value<double>(value, key);
    } else if (key == "lr_switch_epoch") {
      cfg.lr_switch_epoch = read_value<int>(value, key);
    } else if (key == "mu1") {
      cfg.mu1 = read_value<double>(value, key);
    } else if (key == "mu2") {
      cfg.mu2 = read_value<double>(value, key);
    } else if (key == "mu3") {
      cfg.mu3 = read_value<double>(value, key);
    } else if (key == "mu4") {
      cfg.mu4 = read_value<double>(value, key);
    } else if (key == "clip_c") {
      cfg.clip_c = read_value<double>(value, key);
    } else if (key == "mask_z") {
      if (value.is_null()) {
        cfg.mask_z.reset();
      } else {
        cfg.mask_z = read_value<int>(value, key);
      }
    } else if (key == "binarize_r") {
      cfg.binarize_r = read_value<double>(value, key);
    } else if (key == "alpha") {
      cfg.alpha = read_value<double>(value, key);
    } else if (key == "horizon") {
      cfg.horizon = read_value<int>(value, key);
    } else if (key == "critic_steps_per_epoch") {
      cfg.critic_steps_per_epoch = read_value<int>(value, key);
    } else if (key == "critic_lr") {
      cfg.critic_lr = read_value<double>(value, key);
    } else if (key == "critic_rule") {
      cfg.critic_rule =
          debias::step_rule_from_string(read_value<std::string>(value, key));
    } else if (key == "theta_rule") {
      cfg.theta_rule =
          debias::step_rule_from_string(read_value<std::string>(value, key));
    } else if (key == "adjacency_rule") {
      cfg.adjacency_rule =
          debias::step_rule_from_string(read_value<std::string>(value, key));
    } else if (key == "rmsprop_decay") {
      cfg.rmsprop_decay = read_value<double>(value, key);
    } else if (key == "rmsprop_eps") {
      cfg.rmsprop_eps = read_value<double>(value, key);
    } else if (key == "seed") {
      cfg.seed = read_value<std::uint64_t>(value, key);
    } else if (key != "eval" && key != "betas") {
      throw DomainError("unknown debias config key '" + key + "'");
    }
  }
}

void apply_json(const Json& j, EvalOptions& opts) {
  if (!j.is_object()) throw DomainError("eval config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "split_seed") {
      opts.split_seed = read_value<std::uint64_t>(value, key);
    } else if (key == "scaling") {
      opts.scaling = input_scaling_from_string(read_value<std::string>(value, key));
    } else if (key == "gcn") {
      if (!value.is_object()) throw DomainError("'gcn' must be an object");
      for (const auto& [k, v] : value.items()) {
        if (k == "hidden") {
          opts.hyper.hidden = read_value<int>(v, k);
        } else if (k == "dropout") {
          opts.hyper.dropout = read_value<double>(v, k);
        } else if (k == "lr") {
          opts.hyper.lr = read_value<double>(v, k);
        } else if (k == "epochs") {
          opts.hyper.epochs = read_value<int>(v, k);
        } else if (k == "weight_decay") {
          opts.hyper.weight_decay = read_value<double>(v, k);
        } else if (k == "seed") {
          opts.hyper.seed = read_value<std::uint64_t>(v, k);
        } else {
          throw DomainError("unknown gcn config key '" + k + "'");
        }
      }
    } else {
      throw DomainError("unknown eval config key '" + key + "'");
    }
  }
}

}  // namespace fairgraph::tools
