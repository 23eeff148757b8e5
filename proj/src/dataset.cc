// Copyright 2026 The Authors.
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

#include "agnostic_fair/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "agnostic_fair/errors.h"
#include "json.hpp"
#include "spdlog/spdlog.h"

namespace agnostic_fair {
namespace {

using json = nlohmann::json;

std::string Trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return std::string(s.substr(begin, end - begin));
}

// Splits one CSV record. Double-quoted fields may contain commas; a doubled
// quote inside a quoted field is a literal quote.
std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(Trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(Trim(field));
  return out;
}

bool IsMissing(const std::string& v) { return v.empty() || v == "?"; }

bool ParseDouble(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(*out);
}

ColumnKind ParseKind(const std::string& s) {
  if (s == "categorical") return ColumnKind::kCategorical;
  if (s == "numeric") return ColumnKind::kNumeric;
  if (s == "label") return ColumnKind::kLabel;
  if (s == "sensitive") return ColumnKind::kSensitive;
  if (s == "ignore") return ColumnKind::kIgnore;
  throw SchemaError("unknown column kind '" + s + "'");
}

Schema SchemaFromJsonValue(const json& j) {
  Schema schema;
  for (const auto& c : j.at("columns")) {
    ColumnSpec spec;
    spec.name = c.at("name").get<std::string>();
    spec.kind = ParseKind(c.at("kind").get<std::string>());
    spec.split_key = c.value("split_key", false);
    schema.columns.push_back(std::move(spec));
  }
  schema.label_positive = j.at("label_positive").get<std::string>();
  schema.sensitive_as_feature = j.value("sensitive_as_feature", true);
  schema.Validate();
  return schema;
}

ShiftSplitSpec SplitSpecFromJsonValue(const json& j) {
  ShiftSplitSpec spec;
  spec.split_column = j.at("column").get<std::string>();
  for (const auto& v : j.at("group_a")) spec.group_a.insert(v.get<std::string>());
  spec.train_fraction_group_a = j.value("train_fraction_group_a", 0.8);
  spec.train_fraction_group_b = j.value("train_fraction_group_b", 0.2);
  std::string assignment = j.value("client_assignment", std::string("by_group"));
  if (assignment == "by_group") {
    spec.client_assignment = ClientAssignment::kByGroup;
  } else if (assignment == "even") {
    spec.client_assignment = ClientAssignment::kEven;
  } else {
    throw ConfigError("unknown client_assignment '" + assignment + "'");
  }
  spec.num_clients = j.value("num_clients", 2);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.Validate();
  return spec;
}

json SplitSpecToJson(const ShiftSplitSpec& spec) {
  return json{
      {"column", spec.split_column},
      {"group_a", spec.group_a},
      {"train_fraction_group_a", spec.train_fraction_group_a},
      {"train_fraction_group_b", spec.train_fraction_group_b},
      {"client_assignment", spec.client_assignment == ClientAssignment::kByGroup
                                ? "by_group"
                                : "even"},
      {"num_clients", spec.num_clients},
      {"seed", spec.seed}};
}

}  // namespace

void Schema::Validate() const {
  std::size_t labels = 0, sensitive = 0, split_keys = 0;
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (!names.insert(c.name).second) {
      throw SchemaError("duplicate column '" + c.name + "'");
    }
    labels += c.kind == ColumnKind::kLabel;
    sensitive += c.kind == ColumnKind::kSensitive;
    split_keys += c.split_key;
  }
  if (labels != 1) throw SchemaError("schema needs exactly one label column");
  if (sensitive != 1) {
    throw SchemaError("schema needs exactly one sensitive column");
  }
  if (split_keys > 1) throw SchemaError("at most one split_key column allowed");
}

std::size_t Schema::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw SchemaError("no column named '" + name + "'");
}

std::size_t Schema::LabelIndex() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].kind == ColumnKind::kLabel) return i;
  }
  throw SchemaError("schema has no label column");
}

std::size_t Schema::SensitiveIndex() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].kind == ColumnKind::kSensitive) return i;
  }
  throw SchemaError("schema has no sensitive column");
}

std::optional<std::size_t> Schema::SplitKeyIndex() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].split_key) return i;
  }
  return std::nullopt;
}

std::vector<std::string> RawTable::ColumnValues(const std::string& name) const {
  std::size_t idx = schema.IndexOf(name);
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

RawTable LoadCsv(const std::filesystem::path& path, const Schema& schema) {
  schema.Validate();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = SplitCsvLine(line);

  // file column of each schema column
  std::vector<std::size_t> source(schema.columns.size());
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    auto it = std::find(header.begin(), header.end(), schema.columns[i].name);
    if (it == header.end()) {
      throw SchemaError("column '" + schema.columns[i].name +
                        "' missing from header of " + path.string());
    }
    source[i] = static_cast<std::size_t>(it - header.begin());
  }

  RawTable table;
  table.schema = schema;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw DataError("expected " + std::to_string(header.size()) +
                          " fields, found " + std::to_string(fields.size()),
                      line_no);
    }
    std::vector<std::string> row(schema.columns.size());
    bool incomplete = false;
    for (std::size_t i = 0; i < schema.columns.size(); ++i) {
      const ColumnSpec& col = schema.columns[i];
      std::string& v = row[i];
      v = fields[source[i]];
      if (col.kind == ColumnKind::kIgnore) continue;
      if (IsMissing(v)) {
        incomplete = true;
        continue;
      }
      double unused;
      if (col.kind == ColumnKind::kNumeric && !ParseDouble(v, &unused)) {
        throw DataError("column '" + col.name + "': '" + v + "' is not numeric",
                        line_no);
      }
    }
    if (incomplete) {
      ++table.dropped_incomplete;
      continue;
    }
    table.rows.push_back(std::move(row));
  }
  spdlog::debug("loaded {} rows from {} ({} incomplete dropped)",
                table.rows.size(), path.string(), table.dropped_incomplete);
  return table;
}

EncodedDataset EncodedDataset::Subset(std::span<const std::size_t> rows) const {
  EncodedDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  out.sensitive.resize(static_cast<Eigen::Index>(rows.size()));
  out.feature_names = feature_names;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = static_cast<Eigen::Index>(rows[i]);
    auto o = static_cast<Eigen::Index>(i);
    out.features.row(o) = features.row(r);
    out.labels(o) = labels(r);
    out.sensitive(o) = sensitive(r);
    if (!split_values.empty()) out.split_values.push_back(split_values[rows[i]]);
  }
  return out;
}

Encoder Encoder::Fit(const RawTable& raw) {
  std::vector<std::size_t> all(raw.size());
  std::iota(all.begin(), all.end(), 0);
  return Fit(raw, all);
}

Encoder Encoder::Fit(const RawTable& raw, std::span<const std::size_t> rows) {
  if (rows.empty()) throw ConfigError("cannot fit an encoder on zero rows");
  const Schema& schema = raw.schema;
  Encoder enc;
  enc.schema_ = schema;
  std::size_t offset = 0;
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const ColumnSpec& col = schema.columns[c];
    if (col.kind == ColumnKind::kNumeric) {
      Block b{c, col.kind, offset, {}, {}};
      b.stats.min = std::numeric_limits<double>::infinity();
      b.stats.max = -std::numeric_limits<double>::infinity();
      for (std::size_t r : rows) {
        double v = std::strtod(raw.rows[r][c].c_str(), nullptr);
        b.stats.min = std::min(b.stats.min, v);
        b.stats.max = std::max(b.stats.max, v);
      }
      if (b.stats.max == b.stats.min) {
        spdlog::warn("numeric column '{}' is constant; encoded as 0.0",
                     col.name);
      }
      enc.feature_names_.push_back(col.name);
      enc.blocks_.push_back(std::move(b));
      offset += 1;
    } else if (col.kind == ColumnKind::kCategorical) {
      std::set<std::string> levels;
      for (std::size_t r : rows) levels.insert(raw.rows[r][c]);
      Block b{c, col.kind, offset, {}, {levels.begin(), levels.end()}};
      for (const auto& l : b.levels) enc.feature_names_.push_back(col.name + "=" + l);
      offset += b.levels.size();
      enc.blocks_.push_back(std::move(b));
    } else if (col.kind == ColumnKind::kSensitive) {
      std::map<std::string, std::size_t> counts;
      for (std::size_t r : rows) ++counts[raw.rows[r][c]];
      if (counts.size() > 2) {
        throw SchemaError("sensitive column '" + col.name +
                          "' has more than two values");
      }
      // Majority -> 1, minority -> 0; on a tie the larger value is 1.
      auto low = counts.begin();
      if (counts.size() == 1) {
        enc.sensitive_values_[1] = low->first;
        spdlog::warn("sensitive column '{}' has a single value", col.name);
      } else {
        auto high = std::next(low);
        bool high_is_majority = high->second >= low->second;
        enc.sensitive_values_[1] = high_is_majority ? high->first : low->first;
        enc.sensitive_values_[0] = high_is_majority ? low->first : high->first;
      }
      if (schema.sensitive_as_feature) {
        enc.sensitive_feature_ = offset;
        enc.feature_names_.push_back(col.name);
        offset += 1;
      }
    }
  }
  enc.feature_names_.push_back("bias");
  return enc;
}

EncodedDataset Encoder::Transform(const RawTable& raw) const {
  std::vector<std::size_t> all(raw.size());
  std::iota(all.begin(), all.end(), 0);
  return Transform(raw, all);
}

EncodedDataset Encoder::Transform(const RawTable& raw,
                                  std::span<const std::size_t> rows) const {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto dim = static_cast<Eigen::Index>(feature_names_.size());
  const std::size_t label_idx = schema_.LabelIndex();
  const std::size_t sens_idx = schema_.SensitiveIndex();
  const std::optional<std::size_t> split_idx = schema_.SplitKeyIndex();

  EncodedDataset out;
  out.features = Eigen::MatrixXd::Zero(n, dim);
  out.labels.resize(n);
  out.sensitive.resize(n);
  out.feature_names = feature_names_;
  std::size_t unseen = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = raw.rows[rows[static_cast<std::size_t>(i)]];
    for (const Block& b : blocks_) {
      const std::string& v = row[b.column];
      auto col = static_cast<Eigen::Index>(b.offset);
      if (b.kind == ColumnKind::kNumeric) {
        double x = std::strtod(v.c_str(), nullptr);
        double range = b.stats.max - b.stats.min;
        double scaled = range > 0.0 ? (x - b.stats.min) / range : 0.0;
        out.features(i, col) = std::clamp(scaled, 0.0, 1.0);
      } else {
        auto it = std::lower_bound(b.levels.begin(), b.levels.end(), v);
        if (it != b.levels.end() && *it == v) {
          out.features(i, col + (it - b.levels.begin())) = 1.0;
        } else {
          ++unseen;
        }
      }
    }
    out.labels(i) = row[label_idx] == schema_.label_positive ? 1.0 : 0.0;
    const std::string& s = row[sens_idx];
    if (s == sensitive_values_[1]) {
      out.sensitive(i) = 1.0;
    } else if (s == sensitive_values_[0]) {
      out.sensitive(i) = 0.0;
    } else {
      throw DataError("unseen sensitive value '" + s + "'", rows[static_cast<std::size_t>(i)] + 2);
    }
    if (sensitive_feature_) {
      out.features(i, static_cast<Eigen::Index>(*sensitive_feature_)) =
          out.sensitive(i);
    }
    out.features(i, dim - 1) = 1.0;
    if (split_idx) out.split_values.push_back(row[*split_idx]);
  }
  if (unseen > 0) {
    spdlog::warn("{} categorical values unseen at fit time; encoded as zeros",
                 unseen);
  }
  return out;
}

std::optional<std::string> Encoder::DecodeCategory(
    const Eigen::Ref<const Eigen::RowVectorXd>& row,
    const std::string& column) const {
  std::size_t idx = schema_.IndexOf(column);
  for (const Block& b : blocks_) {
    if (b.column != idx) continue;
    if (b.kind != ColumnKind::kCategorical) {
      throw SchemaError("'" + column + "' is not categorical");
    }
    for (std::size_t l = 0; l < b.levels.size(); ++l) {
      if (row(static_cast<Eigen::Index>(b.offset + l)) == 1.0) return b.levels[l];
    }
    return std::nullopt;
  }
  throw SchemaError("'" + column + "' is not encoded");
}

EncodedDataset Encode(const RawTable& raw) {
  return Encoder::Fit(raw).Transform(raw);
}

void ShiftSplitSpec::Validate() const {
  auto in_unit = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!in_unit(train_fraction_group_a) || !in_unit(train_fraction_group_b)) {
    throw ConfigError("train fractions must lie in [0,1]");
  }
  if (num_clients < 1) throw ConfigError("num_clients must be >= 1");
  if (client_assignment == ClientAssignment::kByGroup && num_clients != 2) {
    throw ConfigError("by_group assignment uses exactly 2 clients");
  }
}

SplitPlan PlanShiftSplit(std::span<const std::string> split_values,
                         const ShiftSplitSpec& spec) {
  spec.Validate();
  std::vector<std::size_t> group_a, group_b;
  for (std::size_t i = 0; i < split_values.size(); ++i) {
    (spec.group_a.contains(split_values[i]) ? group_a : group_b).push_back(i);
  }
  std::mt19937_64 rng(spec.seed);
  std::shuffle(group_a.begin(), group_a.end(), rng);
  std::shuffle(group_b.begin(), group_b.end(), rng);
  auto take = [](std::size_t count, double fraction) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(count)));
  };
  std::vector<std::size_t> train_a(group_a.begin(),
                                   group_a.begin() + static_cast<std::ptrdiff_t>(take(group_a.size(), spec.train_fraction_group_a)));
  std::vector<std::size_t> train_b(group_b.begin(),
                                   group_b.begin() + static_cast<std::ptrdiff_t>(take(group_b.size(), spec.train_fraction_group_b)));
  std::sort(train_a.begin(), train_a.end());
  std::sort(train_b.begin(), train_b.end());

  SplitPlan plan;
  plan.train = train_a;
  plan.train.insert(plan.train.end(), train_b.begin(), train_b.end());
  std::sort(plan.train.begin(), plan.train.end());
  std::vector<bool> in_train(split_values.size(), false);
  for (std::size_t r : plan.train) in_train[r] = true;
  for (std::size_t i = 0; i < split_values.size(); ++i) {
    if (!in_train[i]) plan.test.push_back(i);
  }

  if (spec.client_assignment == ClientAssignment::kByGroup) {
    plan.shards = {train_a, train_b};
    plan.client_test_views.resize(2);
    for (std::size_t t = 0; t < plan.test.size(); ++t) {
      bool a = spec.group_a.contains(split_values[plan.test[t]]);
      plan.client_test_views[a ? 0 : 1].push_back(t);
    }
  } else {
    std::vector<std::size_t> order = plan.train;
    std::shuffle(order.begin(), order.end(), rng);
    const auto p = static_cast<std::size_t>(spec.num_clients);
    const std::size_t base = order.size() / p;
    const std::size_t extra = order.size() % p;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < p; ++k) {
      std::size_t len = base + (k < extra ? 1 : 0);
      std::vector<std::size_t> shard(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                     order.begin() + static_cast<std::ptrdiff_t>(pos + len));
      std::sort(shard.begin(), shard.end());
      plan.shards.push_back(std::move(shard));
      pos += len;
    }
  }
  for (std::size_t k = 0; k < plan.shards.size(); ++k) {
    if (plan.shards[k].empty()) {
      throw ConfigError("split leaves client " + std::to_string(k) +
                        " with an empty shard");
    }
  }
  return plan;
}

std::vector<ClientShard> MakeShards(
    const EncodedDataset& data,
    const std::vector<std::vector<std::size_t>>& shard_rows) {
  std::vector<ClientShard> shards;
  for (std::size_t k = 0; k < shard_rows.size(); ++k) {
    EncodedDataset sub = data.Subset(shard_rows[k]);
    ClientShard s;
    s.client_id = static_cast<int>(k);
    s.features = std::move(sub.features);
    s.labels = std::move(sub.labels);
    s.sensitive = std::move(sub.sensitive);
    shards.push_back(std::move(s));
  }
  return shards;
}

namespace {

PreparedData Assemble(EncodedDataset train, EncodedDataset test, SplitPlan plan) {
  // Shard rows are expressed relative to the source; re-index into `train`.
  std::unordered_map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < plan.train.size(); ++i) position[plan.train[i]] = i;
  std::vector<std::vector<std::size_t>> local(plan.shards.size());
  for (std::size_t k = 0; k < plan.shards.size(); ++k) {
    for (std::size_t r : plan.shards[k]) local[k].push_back(position.at(r));
  }
  PreparedData out;
  out.shards = MakeShards(train, local);
  out.train = std::move(train);
  out.test = std::move(test);
  out.client_test_views = plan.client_test_views;
  out.plan = std::move(plan);
  return out;
}

}  // namespace

PreparedData ShiftSplit(const EncodedDataset& data, const ShiftSplitSpec& spec) {
  if (data.split_values.size() != data.size()) {
    throw ConfigError("dataset carries no split column values");
  }
  SplitPlan plan = PlanShiftSplit(data.split_values, spec);
  EncodedDataset train = data.Subset(plan.train);
  EncodedDataset test = data.Subset(plan.test);
  return Assemble(std::move(train), std::move(test), std::move(plan));
}

PreparedData PrepareShiftSplit(const RawTable& raw, const ShiftSplitSpec& spec,
                               Encoder* encoder_out) {
  std::size_t idx = raw.schema.IndexOf(spec.split_column);
  std::vector<std::string> values;
  values.reserve(raw.size());
  for (const auto& r : raw.rows) values.push_back(r[idx]);
  SplitPlan plan = PlanShiftSplit(values, spec);
  Encoder enc = Encoder::Fit(raw, plan.train);
  EncodedDataset train = enc.Transform(raw, plan.train);
  EncodedDataset test = enc.Transform(raw, plan.test);
  // Keep split values even when the split column is not flagged split_key.
  train.split_values.clear();
  test.split_values.clear();
  for (std::size_t r : plan.train) train.split_values.push_back(values[r]);
  for (std::size_t r : plan.test) test.split_values.push_back(values[r]);
  if (encoder_out != nullptr) *encoder_out = enc;
  return Assemble(std::move(train), std::move(test), std::move(plan));
}

Schema SchemaFromJson(const std::string& json_text) {
  return SchemaFromJsonValue(json::parse(json_text));
}

ShiftSplitSpec SplitSpecFromJson(const std::string& json_text) {
  return SplitSpecFromJsonValue(json::parse(json_text));
}

DatasetConfig LoadDatasetConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  DatasetConfig cfg;
  try {
    std::filesystem::path csv = j.at("data").get<std::string>();
    cfg.csv_path = csv.is_absolute() ? csv : path.parent_path() / csv;
    cfg.schema = SchemaFromJsonValue(j);
    if (j.contains("split")) cfg.split = SplitSpecFromJsonValue(j.at("split"));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return cfg;
}

void WriteEncodedCsv(const std::filesystem::path& path,
                     const Eigen::MatrixXd& features,
                     const Eigen::VectorXd& labels,
                     const Eigen::VectorXd& sensitive,
                     const std::vector<std::string>& feature_names) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& name : feature_names) out << name << ',';
  out << "label,sensitive\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) out << features(i, j) << ',';
    out << labels(i) << ',' << sensitive(i) << '\n';
  }
}

void WritePrepared(const std::filesystem::path& dir, const PreparedData& data,
                   const ShiftSplitSpec& spec) {
  std::filesystem::create_directories(dir);
  WriteEncodedCsv(dir / "train.csv", data.train.features, data.train.labels,
                  data.train.sensitive, data.train.feature_names);
  WriteEncodedCsv(dir / "test.csv", data.test.features, data.test.labels,
                  data.test.sensitive, data.test.feature_names);
  json shards = json::array();
  for (const auto& s : data.shards) {
    std::string name = "shard_" + std::to_string(s.client_id) + ".csv";
    WriteEncodedCsv(dir / name, s.features, s.labels, s.sensitive,
                    data.train.feature_names);
    shards.push_back({{"client_id", s.client_id},
                      {"file", name},
                      {"rows", s.size()},
                      {"sensitive_sum", s.sensitive.sum()}});
  }
  json manifest{{"split", SplitSpecToJson(spec)},
                {"train_rows", data.train.size()},
                {"test_rows", data.test.size()},
                {"features", data.train.feature_names},
                {"num_shards", data.shards.size()},
                {"shards", shards}};
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace agnostic_fair
