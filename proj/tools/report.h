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

// JSON encodings of configs and reports used by the command-line tool.

#ifndef FAIRGRAPH_TOOLS_REPORT_H_
#define FAIRGRAPH_TOOLS_REPORT_H_

#include <string_view>

#include <nlohmann/json.hpp>

#include "fairgraph/bias.h"
#include "fairgraph/debias.h"
#include "fairgraph/fairness.h"
#include "fairgraph/synth.h"

namespace fairgraph::tools {

using Json = nlohmann::ordered_json;

// Parses JSON text; throws IoError with `what` in the message on failure.
Json parse_json(std::string_view text, std::string_view what);

Json to_json(const BiasParams& params);
Json to_json(const BiasReport& report);
Json to_json(const SpectralResponse& response);
Json to_json(const synth::SynthConfig& cfg);
Json to_json(const debias::DebiasConfig& cfg);
Json to_json(const GcnHyper& hyper);
Json to_json(const EvalOptions& opts);
Json to_json(const FairnessReport& report);
Json to_json(const Splits& splits);

// Reads the keys present in `j` over `cfg`. Unknown keys and values of the
// wrong type raise DomainError.
void apply_json(const Json& j, debias::DebiasConfig& cfg);
void apply_json(const Json& j, EvalOptions& opts);

}  // namespace fairgraph::tools

#endif  // FAIRGRAPH_TOOLS_REPORT_H_
