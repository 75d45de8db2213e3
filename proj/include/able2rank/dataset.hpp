#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace able2rank {

/// Feature vector of a single object. Raw values after loading, [0,1] after
/// able2rank preprocessing.
using ObjectVector = std::vector<double>;

enum class FeatureType { numeric, binary, ordinal };

/// Declared type of one column.
///
/// For binary columns `levels` holds the two raw labels (mapped to 0 and 1).
/// For ordinal columns `levels` lists the labels worst-to-best and `values`
/// holds the numeric code of each level.
struct FeatureKind {
  FeatureType type = FeatureType::numeric;
  std::vector<std::string> levels;
  std::vector<double> values;

  static FeatureKind numeric();
  static FeatureKind binary(std::string value0, std::string value1);
  /// Equally spaced codes: level i of L maps to i/(L-1); one level maps to 0.
  static FeatureKind ordinal(std::vector<std::string> levels);
  static FeatureKind ordinal(std::vector<std::string> levels, std::vector<double> values);
};

struct FeatureColumn {
  std::string name;
  FeatureKind kind;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureColumn> columns);

  [[nodiscard]] std::size_t dimension() const noexcept { return columns_.size(); }
  [[nodiscard]] const std::vector<FeatureColumn>& columns() const noexcept { return columns_; }
  [[nodiscard]] const FeatureColumn& operator[](std::size_t k) const { return columns_.at(k); }

  friend bool operator==(const FeatureSchema& lhs, const FeatureSchema& rhs);

 private:
  std::vector<FeatureColumn> columns_;
};

bool operator==(const FeatureKind& lhs, const FeatureKind& rhs);
bool operator==(const FeatureColumn& lhs, const FeatureColumn& rhs);

/// A query set together with its ground-truth total order. Row order is the
/// ranking: objects[0] is the best object.
struct RankingInstance {
  std::string name;
  FeatureSchema schema;
  std::vector<ObjectVector> objects;

  [[nodiscard]] std::size_t size() const noexcept { return objects.size(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return schema.dimension(); }
};

/// Ordered training preferences: `first` is preferred to `second`.
struct PreferenceStore {
  std::vector<std::pair<ObjectVector, ObjectVector>> pairs;

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
  [[nodiscard]] bool empty() const noexcept { return pairs.empty(); }
};

FeatureSchema parse_schema(std::string_view text);
FeatureSchema load_schema(const std::filesystem::path& path);

/// Parses CSV text with a header row. Columns not named in the schema are
/// ignored; feature order follows the schema.
RankingInstance parse_dataset(std::string_view csv_text, const FeatureSchema& schema,
                              std::string name = {});
RankingInstance load_dataset(const std::filesystem::path& data_path,
                             const std::filesystem::path& schema_path);
RankingInstance load_dataset(const std::filesystem::path& data_path, const FeatureSchema& schema);

/// All pairs (object_i, object_j) with i < j, in lexicographic (i, j) order.
PreferenceStore extract_pairs(const RankingInstance& instance);
/// Union over several training rankings, instance by instance.
PreferenceStore extract_pairs(std::span<const RankingInstance> instances);

/// Sub-ranking induced by a subset of rows; `rows` must be strictly increasing.
RankingInstance select_rows(const RankingInstance& instance, std::span<const std::size_t> rows);

/// Rows of several compatible instances concatenated into one matrix.
std::vector<ObjectVector> pooled_objects(std::span<const RankingInstance> instances);

}  // namespace able2rank
