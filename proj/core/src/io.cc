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

#include "fairgraph/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace fairgraph {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_csv_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
  for (auto& c : cells) {
    if (c.size() >= 2 && c.front() == '"' && c.back() == '"') {
      c = c.substr(1, c.size() - 2);
    }
  }
  return cells;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Node ids are integers; "12.0" is accepted because several public edge
// lists are written by numpy.savetxt.
std::optional<long long> parse_node_id(std::string_view s) {
  const auto value = parse_double(s);
  if (!value || *value != std::floor(*value) || *value < 0) return std::nullopt;
  return static_cast<long long>(*value);
}

// Maps raw category strings to 0..K-1 by sorted distinct value.
std::vector<int> encode_categories(const std::vector<std::string>& raw,
                                   std::vector<std::string>* levels) {
  bool numeric = true;
  for (const auto& v : raw) {
    if (!parse_double(v)) {
      numeric = false;
      break;
    }
  }
  std::vector<std::string> distinct(raw.begin(), raw.end());
  if (numeric) {
    std::sort(distinct.begin(), distinct.end(),
              [](const std::string& a, const std::string& b) {
                return *parse_double(a) < *parse_double(b);
              });
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [](const std::string& a, const std::string& b) {
                                 return *parse_double(a) == *parse_double(b);
                               }),
                   distinct.end());
  } else {
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
  }
  std::vector<int> codes(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find_if(distinct.begin(), distinct.end(),
                           [&](const std::string& d) {
                             return numeric ? *parse_double(d) ==
                                                  *parse_double(raw[i])
                                            : d == raw[i];
                           });
    codes[i] = static_cast<int>(it - distinct.begin());
  }
  if (levels) *levels = std::move(distinct);
  return codes;
}

void add_edge(Matrix& adjacency, long long u, long long v) {
  if (u == v) return;
  adjacency(u, v) = 1.0;
  adjacency(v, u) = 1.0;
}

}  // namespace

AttributedNetwork load_graph(std::string_view edge_list,
                             std::string_view attribute_table,
                             const AttributeSchema& schema) {
  std::vector<std::string_view> rows;
  for (auto line : split_lines(attribute_table)) {
    if (!trim(line).empty()) rows.push_back(line);
  }
  if (rows.empty()) throw IoError("attribute table is empty");

  const auto header = split_csv_row(rows.front());
  {
    std::set<std::string_view> seen;
    for (auto name : header) {
      if (!seen.insert(name).second) {
        throw IoError("duplicate header name '" + std::string(name) + "'");
      }
    }
  }
  const auto column_of = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return c;
    }
    return std::nullopt;
  };
  const auto sens_col = column_of(schema.sensitive_column);
  if (!sens_col) {
    throw IoError("sensitive column '" + schema.sensitive_column +
                  "' not found in attribute header");
  }
  std::optional<std::size_t> label_col;
  if (schema.label_column) {
    label_col = column_of(*schema.label_column);
    if (!label_col) {
      throw IoError("label column '" + *schema.label_column + "' not found");
    }
  }
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const bool dropped =
        std::find(schema.drop_columns.begin(), schema.drop_columns.end(),
                  header[c]) != schema.drop_columns.end();
    if (dropped || (label_col && c == *label_col)) continue;
    if (c == *sens_col && !schema.include_sensitive_as_feature) continue;
    feature_cols.push_back(c);
    feature_names.emplace_back(header[c]);
  }

  const std::size_t n = rows.size() - 1;
  if (n == 0) throw IoError("attribute table has no data rows");
  if (n > static_cast<std::size_t>(kMaxNodes)) {
    throw DomainError("attribute table has " + std::to_string(n) +
                      " rows; the dense representation is capped at " +
                      std::to_string(kMaxNodes));
  }
  Matrix attributes(n, feature_cols.size());
  std::vector<std::string> sens_raw(n), label_raw;
  if (label_col) label_raw.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto cells = split_csv_row(rows[r + 1]);
    if (cells.size() != header.size()) {
      throw IoError("attribute row " + std::to_string(r + 1) + " has " +
                    std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(header.size()));
    }
    for (std::size_t k = 0; k < feature_cols.size(); ++k) {
      const auto value = parse_double(cells[feature_cols[k]]);
      if (!value) {
        throw IoError("non-numeric attribute cell '" +
                      std::string(cells[feature_cols[k]]) + "' in row " +
                      std::to_string(r + 1) + ", column '" + feature_names[k] +
                      "'");
      }
      attributes(r, k) = *value;
    }
    sens_raw[r] = std::string(cells[*sens_col]);
    if (label_col) label_raw[r] = std::string(cells[*label_col]);
  }

  Matrix adjacency = Matrix::Zero(n, n);
  int line_no = 0;
  for (auto line : split_lines(edge_list)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream tokens{std::string(line)};
    std::string a, b, extra;
    if (!(tokens >> a >> b)) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    " does not contain a node pair");
    }
    const auto u = parse_node_id(a);
    const auto v = parse_node_id(b);
    if (!u || !v || *u >= static_cast<long long>(n) ||
        *v >= static_cast<long long>(n)) {
      throw IoError("unknown node id on edge list line " +
                    std::to_string(line_no) + ": '" + std::string(line) + "'");
    }
    add_edge(adjacency, *u, *v);
  }

  std::vector<int> sensitive = encode_categories(sens_raw, nullptr);
  std::optional<std::vector<int>> labels;
  if (label_col) {
    std::vector<std::string> levels;
    labels = encode_categories(label_raw, &levels);
    if (levels.size() > 2) {
      throw IoError("label column has more than two distinct values");
    }
  }
  AttributedNetwork net(std::move(adjacency), std::move(attributes),
                        std::move(sensitive), std::move(labels));
  return net.with_attribute_names(std::move(feature_names));
}

std::string network_to_json(const AttributedNetwork& net) {
  json out = json::object();
  const int n = net.num_nodes();
  out["n"] = n;
  json edges = json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (net.adjacency()(i, j) != 0.0) edges.push_back({i, j});
    }
  }
  out["edges"] = std::move(edges);
  json attrs = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int m = 0; m < net.num_attributes(); ++m) {
      row.push_back(net.attributes()(i, m));
    }
    attrs.push_back(std::move(row));
  }
  out["attributes"] = std::move(attrs);
  out["sensitive"] = net.sensitive();
  out["labels"] = net.labels() ? json(*net.labels()) : json(nullptr);
  if (net.splits()) {
    out["splits"] = {{"train", net.splits()->train},
                     {"val", net.splits()->val},
                     {"test", net.splits()->test}};
  } else {
    out["splits"] = nullptr;
  }
  if (!net.attribute_names().empty()) {
    out["attribute_names"] = net.attribute_names();
  }
  out["attributes_normalized"] = net.attributes_normalized();
  return out.dump();
}

AttributedNetwork network_from_json(std::string_view text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("invalid network JSON: ") + e.what());
  }
  try {
    const int n = in.at("n").get<int>();
    if (n <= 0) throw IoError("network JSON has a nonpositive node count");
    if (n > kMaxNodes) {
      throw DomainError("network has " + std::to_string(n) +
                        " nodes; the dense representation is capped at " +
                        std::to_string(kMaxNodes));
    }
    Matrix adjacency = Matrix::Zero(n, n);
    for (const auto& e : in.at("edges")) {
      const long long u = e.at(0).get<long long>();
      const long long v = e.at(1).get<long long>();
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw IoError("network JSON references an unknown node id");
      }
      add_edge(adjacency, u, v);
    }
    const auto& rows = in.at("attributes");
    if (static_cast<int>(rows.size()) != n) {
      throw IoError("network JSON attribute row count does not match n");
    }
    const std::size_t width = n > 0 ? rows.at(0).size() : 0;
    Matrix attributes(n, width);
    for (int i = 0; i < n; ++i) {
      if (rows.at(i).size() != width) {
        throw IoError("network JSON attribute rows have unequal widths");
      }
      for (std::size_t m = 0; m < width; ++m) {
        attributes(i, m) = rows.at(i).at(m).get<double>();
      }
    }
    auto sensitive = in.at("sensitive").get<std::vector<int>>();
    std::optional<std::vector<int>> labels;
    if (in.contains("labels") && !in["labels"].is_null()) {
      labels = in["labels"].get<std::vector<int>>();
    }
    std::optional<Splits> splits;
    if (in.contains("splits") && !in["splits"].is_null()) {
      const auto& s = in["splits"];
      splits = Splits{s.at("train").get<std::vector<int>>(),
                      s.at("val").get<std::vector<int>>(),
                      s.at("test").get<std::vector<int>>()};
    }
    const bool normalized = in.value("attributes_normalized", false);
    AttributedNetwork net(std::move(adjacency), std::move(attributes),
                          std::move(sensitive), std::move(labels),
                          std::move(splits));
    if (normalized) net = net.with_attributes(net.attributes(), true);
    if (in.contains("attribute_names")) {
      net = net.with_attribute_names(
          in["attribute_names"].get<std::vector<std::string>>());
    }
    return net;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed network JSON: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

AttributedNetwork load_network_file(const std::filesystem::path& path) {
  return network_from_json(read_text_file(path));
}

void save_network_file(const AttributedNetwork& net,
                       const std::filesystem::path& path) {
  write_text_file(path, network_to_json(net) + "\n");
}

}  // namespace fairgraph
