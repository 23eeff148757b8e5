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

#ifndef AGNOSTIC_FAIR_DATASET_H_
#define AGNOSTIC_FAIR_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace agnostic_fair {

enum class ColumnKind { kCategorical, kNumeric, kLabel, kSensitive, kIgnore };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kIgnore;
  // The column whose values define the shift-split groups.
  bool split_key = false;
};

struct Schema {
  std::vector<ColumnSpec> columns;
  // Label value mapped to 1; every other value maps to 0.
  std::string label_positive;
  // Keep the binary sensitive column inside the feature matrix.
  bool sensitive_as_feature = true;

  // Throws SchemaError unless there is exactly one label and one sensitive
  // column and at most one split key.
  void Validate() const;
  std::size_t IndexOf(const std::string& name) const;
  std::size_t LabelIndex() const;
  std::size_t SensitiveIndex() const;
  std::optional<std::size_t> SplitKeyIndex() const;
};

// Rows are stored in schema column order, as the raw strings from the file.
struct RawTable {
  Schema schema;
  std::vector<std::vector<std::string>> rows;
  // Records dropped because some declared column was empty or "?".
  std::size_t dropped_incomplete = 0;

  std::size_t size() const { return rows.size(); }
  std::vector<std::string> ColumnValues(const std::string& name) const;
};

// Reads a comma-separated file whose first line is a header. Columns absent
// from the schema are skipped. Incomplete records are dropped.
RawTable LoadCsv(const std::filesystem::path& path, const Schema& schema);

struct EncodedDataset {
  // n x (d+1); the last column is the constant bias 1.0.
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;     // {0,1}
  Eigen::VectorXd sensitive;  // {0,1}; minority group is 0
  std::vector<std::string> feature_names;
  // Raw value of the split-key column per row (empty when no split key).
  std::vector<std::string> split_values;

  std::size_t size() const { return static_cast<std::size_t>(labels.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
  EncodedDataset Subset(std::span<const std::size_t> rows) const;
};

// Min-max scaling for numeric columns, one-hot blocks for categorical
// columns, majority/minority mapping for the sensitive column. Statistics
// come from the rows passed to Fit; Transform clips numerics to [0,1] and
// encodes unseen categories as an all-zero block.
class Encoder {
 public:
  static Encoder Fit(const RawTable& raw, std::span<const std::size_t> rows);
  static Encoder Fit(const RawTable& raw);

  EncodedDataset Transform(const RawTable& raw,
                           std::span<const std::size_t> rows) const;
  EncodedDataset Transform(const RawTable& raw) const;

  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  // Recovers the category of `column` from an encoded feature row. Returns
  // nullopt for an all-zero block.
  std::optional<std::string> DecodeCategory(
      const Eigen::Ref<const Eigen::RowVectorXd>& row,
      const std::string& column) const;
  // Raw sensitive value mapped to 1 (majority) and 0 (minority).
  const std::string& sensitive_value(int code) const {
    return sensitive_values_[code];
  }

 private:
  struct NumericStats {
    double min = 0.0;
    double max = 0.0;
  };
  struct Block {
    std::size_t column = 0;  // schema index
    ColumnKind kind = ColumnKind::kIgnore;
    std::size_t offset = 0;  // first feature column
    NumericStats stats;
    std::vector<std::string> levels;  // categorical only, sorted
  };

  Schema schema_;
  std::vector<Block> blocks_;
  std::vector<std::string> feature_names_;
  std::string sensitive_values_[2];
  std::optional<std::size_t> sensitive_feature_;
};

// Fits on all rows and encodes them.
EncodedDataset Encode(const RawTable& raw);

enum class ClientAssignment { kByGroup, kEven };

struct ShiftSplitSpec {
  std::string split_column;
  std::set<std::string> group_a;
  double train_fraction_group_a = 0.8;
  double train_fraction_group_b = 0.2;
  ClientAssignment client_assignment = ClientAssignment::kByGroup;
  int num_clients = 2;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct ClientShard {
  int client_id = 0;
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
  Eigen::VectorXd sensitive;

  std::size_t size() const { return static_cast<std::size_t>(labels.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
};

// Row indices produced by a shift split, relative to the source table.
struct SplitPlan {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  // Per client, indices into the source table.
  std::vector<std::vector<std::size_t>> shards;
  // Per client, indices into `test` of the rows drawn from that client's
  // group. Filled only for by-group assignment.
  std::vector<std::vector<std::size_t>> client_test_views;
};

SplitPlan PlanShiftSplit(std::span<const std::string> split_values,
                         const ShiftSplitSpec& spec);

struct PreparedData {
  EncodedDataset train;
  EncodedDataset test;
  std::vector<ClientShard> shards;
  std::vector<std::vector<std::size_t>> client_test_views;
  SplitPlan plan;
};

// Splits an already encoded dataset; no re-normalization.
PreparedData ShiftSplit(const EncodedDataset& data, const ShiftSplitSpec& spec);

// Splits a raw table, fitting the encoder on the training rows only.
PreparedData PrepareShiftSplit(const RawTable& raw, const ShiftSplitSpec& spec,
                               Encoder* encoder_out = nullptr);

std::vector<ClientShard> MakeShards(
    const EncodedDataset& data,
    const std::vector<std::vector<std::size_t>>& shard_rows);

// Dataset file: CSV path, schema and split, as one JSON document.
struct DatasetConfig {
  std::filesystem::path csv_path;
  Schema schema;
  std::optional<ShiftSplitSpec> split;
};

DatasetConfig LoadDatasetConfig(const std::filesystem::path& path);
Schema SchemaFromJson(const std::string& json_text);
ShiftSplitSpec SplitSpecFromJson(const std::string& json_text);

void WriteEncodedCsv(const std::filesystem::path& path,
                     const Eigen::MatrixXd& features,
                     const Eigen::VectorXd& labels,
                     const Eigen::VectorXd& sensitive,
                     const std::vector<std::string>& feature_names);

// Writes train.csv, test.csv, shard_<k>.csv and manifest.json into `dir`.
void WritePrepared(const std::filesystem::path& dir, const PreparedData& data,
                   const ShiftSplitSpec& spec);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_DATASET_H_
