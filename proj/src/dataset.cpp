#include "able2rank/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "able2rank/error.hpp"

namespace able2rank {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Splits one CSV record. Double quotes protect commas; "" is an escaped quote.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw io_error("failed reading '" + path.string() + "'");
  return buffer.str();
}

std::string strip_bom(std::string text) {
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
  return text;
}

bool labels_match(std::string_view cell, std::string_view label) {
  if (cell == label) return true;
  const auto a = parse_number(cell);
  const auto b = parse_number(label);
  return a && b && *a == *b;
}

std::string where(std::size_t line, std::string_view column) {
  return "line " + std::to_string(line) + ", column '" + std::string(column) + "'";
}

}  // namespace

FeatureKind FeatureKind::numeric() { return {}; }

FeatureKind FeatureKind::binary(std::string value0, std::string value1) {
  if (value0 == value1) throw validation_error("binary feature needs two distinct values");
  FeatureKind kind;
  kind.type = FeatureType::binary;
  kind.levels = {std::move(value0), std::move(value1)};
  kind.values = {0.0, 1.0};
  return kind;
}

FeatureKind FeatureKind::ordinal(std::vector<std::string> levels) {
  const auto count = levels.size();
  std::vector<double> values(count, 0.0);
  for (std::size_t i = 0; count > 1 && i < count; ++i) {
    values[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return ordinal(std::move(levels), std::move(values));
}

FeatureKind FeatureKind::ordinal(std::vector<std::string> levels, std::vector<double> values) {
  if (levels.empty()) throw validation_error("ordinal feature needs at least one level");
  if (levels.size() != values.size()) throw validation_error("ordinal levels and codes differ in length");
  std::unordered_set<std::string> seen;
  for (const auto& level : levels) {
    if (!seen.insert(level).second) throw validation_error("duplicate ordinal level '" + level + "'");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw validation_error("ordinal codes must lie in [0,1]");
  }
  FeatureKind kind;
  kind.type = FeatureType::ordinal;
  kind.levels = std::move(levels);
  kind.values = std::move(values);
  return kind;
}

bool operator==(const FeatureKind& lhs, const FeatureKind& rhs) {
  return lhs.type == rhs.type && lhs.levels == rhs.levels && lhs.values == rhs.values;
}

bool operator==(const FeatureColumn& lhs, const FeatureColumn& rhs) {
  return lhs.name == rhs.name && lhs.kind == rhs.kind;
}

FeatureSchema::FeatureSchema(std::vector<FeatureColumn> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string> names;
  for (const auto& column : columns_) {
    if (column.name.empty()) throw validation_error("schema column with empty name");
    if (!names.insert(column.name).second) {
      throw validation_error("duplicate schema column '" + column.name + "'");
    }
  }
}

bool operator==(const FeatureSchema& lhs, const FeatureSchema& rhs) { return lhs.columns_ == rhs.columns_; }

FeatureSchema parse_schema(std::string_view text) {
  std::vector<FeatureColumn> columns;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_record(line);
    const auto line_no = std::to_string(ln + 1);
    if (fields.size() < 2 || fields[0].empty()) {
      throw parse_error("schema line " + line_no + ": expected 'name,kind[,levels...]'");
    }
    const std::string& kind = fields[1];
    FeatureColumn column{fields[0], {}};
    try {
      if (kind == "numeric") {
        if (fields.size() != 2) throw parse_error("numeric column takes no levels");
        column.kind = FeatureKind::numeric();
      } else if (kind == "binary") {
        if (fields.size() != 4) throw parse_error("binary column needs exactly two values");
        column.kind = FeatureKind::binary(fields[2], fields[3]);
      } else if (kind == "ordinal") {
        if (fields.size() < 3) throw parse_error("ordinal column needs at least one level");
        std::vector<std::string> levels;
        std::vector<double> codes;
        std::size_t overrides = 0;
        for (std::size_t f = 2; f < fields.size(); ++f) {
          const auto eq = fields[f].rfind('=');
          if (eq == std::string::npos) {
            levels.push_back(fields[f]);
            continue;
          }
          const auto code = parse_number(std::string_view(fields[f]).substr(eq + 1));
          if (!code) throw parse_error("bad ordinal code in '" + fields[f] + "'");
          levels.push_back(std::string(trim(std::string_view(fields[f]).substr(0, eq))));
          codes.push_back(*code);
          ++overrides;
        }
        if (overrides == 0) {
          column.kind = FeatureKind::ordinal(std::move(levels));
        } else if (overrides == levels.size()) {
          column.kind = FeatureKind::ordinal(std::move(levels), std::move(codes));
        } else {
          throw parse_error("either all or none of the ordinal levels carry '=code'");
        }
      } else {
        throw parse_error("unknown kind '" + kind + "'");
      }
    } catch (const error& e) {
      throw parse_error("schema line " + line_no + " ('" + column.name + "'): " + e.what());
    }
    columns.push_back(std::move(column));
  }
  if (columns.empty()) throw parse_error("schema declares no columns");
  try {
    return FeatureSchema(std::move(columns));
  } catch (const validation_error& e) {
    throw parse_error(std::string("schema: ") + e.what());
  }
}

FeatureSchema load_schema(const std::filesystem::path& path) {
  try {
    return parse_schema(strip_bom(read_file(path)));
  } catch (const parse_error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

RankingInstance parse_dataset(std::string_view csv_text, const FeatureSchema& schema, std::string name) {
  const auto lines = split_lines(csv_text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw parse_error("empty file: no header row");

  const auto header = split_record(lines[header_line]);
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t c = 0; c < header.size(); ++c) position.emplace(header[c], c);

  std::vector<std::size_t> source(schema.dimension());
  for (std::size_t k = 0; k < schema.dimension(); ++k) {
    const auto it = position.find(schema[k].name);
    if (it == position.end()) {
      throw parse_error("line " + std::to_string(header_line + 1) + ": missing column '" +
                        schema[k].name + "'");
    }
    source[k] = it->second;
  }

  RankingInstance instance;
  instance.name = std::move(name);
  instance.schema = schema;
  for (std::size_t ln = header_line + 1; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto line_no = ln + 1;
    const auto cells = split_record(lines[ln]);
    if (cells.size() != header.size()) {
      throw parse_error("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(cells.size()));
    }
    ObjectVector row(schema.dimension());
    for (std::size_t k = 0; k < schema.dimension(); ++k) {
      const auto& column = schema[k];
      const std::string& cell = cells[source[k]];
      if (cell.empty()) throw parse_error(where(line_no, column.name) + ": missing value");
      switch (column.kind.type) {
        case FeatureType::numeric: {
          const auto value = parse_number(cell);
          if (!value) throw parse_error(where(line_no, column.name) + ": cannot parse '" + cell + "' as a number");
          row[k] = *value;
          break;
        }
        case FeatureType::binary:
        case FeatureType::ordinal: {
          const auto& levels = column.kind.levels;
          auto it = std::find(levels.begin(), levels.end(), cell);
          if (it == levels.end()) {
            it = std::find_if(levels.begin(), levels.end(), [&](const auto& l) { return labels_match(cell, l); });
          }
          if (it == levels.end()) {
            throw parse_error(where(line_no, column.name) + ": unknown " +
                              (column.kind.type == FeatureType::binary ? "binary value" : "ordinal level") +
                              " '" + cell + "'");
          }
          row[k] = column.kind.values[static_cast<std::size_t>(std::distance(levels.begin(), it))];
          break;
        }
      }
    }
    instance.objects.push_back(std::move(row));
  }
  if (instance.objects.empty()) throw parse_error("no data rows after the header");
  return instance;
}

RankingInstance load_dataset(const std::filesystem::path& data_path, const FeatureSchema& schema) {
  try {
    return parse_dataset(strip_bom(read_file(data_path)), schema, data_path.stem().string());
  } catch (const parse_error& e) {
    throw parse_error(data_path.string() + ": " + e.what());
  }
}

RankingInstance load_dataset(const std::filesystem::path& data_path, const std::filesystem::path& schema_path) {
  return load_dataset(data_path, load_schema(schema_path));
}

PreferenceStore extract_pairs(const RankingInstance& instance) {
  return extract_pairs(std::span<const RankingInstance>(&instance, 1));
}

PreferenceStore extract_pairs(std::span<const RankingInstance> instances) {
  PreferenceStore store;
  std::size_t total = 0;
  for (const auto& inst : instances) total += inst.size() * (inst.size() - 1) / 2;
  store.pairs.reserve(total);
  for (const auto& inst : instances) {
    const auto n = inst.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) store.pairs.emplace_back(inst.objects[i], inst.objects[j]);
    }
  }
  return store;
}

RankingInstance select_rows(const RankingInstance& instance, std::span<const std::size_t> rows) {
  RankingInstance out;
  out.name = instance.name;
  out.schema = instance.schema;
  out.objects.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= instance.size() || (r > 0 && rows[r] <= rows[r - 1])) {
      throw validation_error("select_rows: row indices must be increasing and in range");
    }
    out.objects.push_back(instance.objects[rows[r]]);
  }
  return out;
}

std::vector<ObjectVector> pooled_objects(std::span<const RankingInstance> instances) {
  std::vector<ObjectVector> out;
  for (const auto& inst : instances) out.insert(out.end(), inst.objects.begin(), inst.objects.end());
  return out;
}

}  // namespace able2rank
