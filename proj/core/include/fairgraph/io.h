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

#ifndef FAIRGRAPH_IO_H_
#define FAIRGRAPH_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairgraph/network.h"

namespace fairgraph {

// Describes how the columns of an attribute CSV map onto the network.
struct AttributeSchema {
  std::string sensitive_column;
  std::optional<std::string> label_column;
  // Columns ignored entirely (identifiers, free text).
  std::vector<std::string> drop_columns;
  // Keep the sensitive column as an attribute as well.
  bool include_sensitive_as_feature = false;
};

// Builds a network from a whitespace-separated edge list ("u v" per line,
// 0-based ids matching CSV row order) and a comma-separated attribute table
// with a header row. Directed pairs are symmetrized and self-loops dropped.
// The sensitive column is re-encoded to 0..G-1 by sorted distinct value
// (numeric order when every value parses as a number), and likewise the label
// column to {0,1}. Lines starting with '#' in the edge list are ignored.
//
// Throws IoError on unknown node ids, non-numeric attribute cells, missing
// columns, duplicate header names or a label column with more than two
// distinct values.
AttributedNetwork load_graph(std::string_view edge_list,
                             std::string_view attribute_table,
                             const AttributeSchema& schema);

// JSON object with fields n, edges (u < v pairs), attributes (row-major),
// sensitive, labels, splits, plus attribute_names and attributes_normalized.
std::string network_to_json(const AttributedNetwork& net);
AttributedNetwork network_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

AttributedNetwork load_network_file(const std::filesystem::path& path);
void save_network_file(const AttributedNetwork& net,
                       const std::filesystem::path& path);

}  // namespace fairgraph

#endif  // FAIRGRAPH_IO_H_
