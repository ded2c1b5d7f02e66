#include "mvbu/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace mvbu {

using nlohmann::ordered_json;

namespace {

void append_breakdown_header(std::vector<std::string>& header, Eigen::Index n) {
  for (Eigen::Index i = 0; i < n; ++i) header.push_back("q" + std::to_string(i));
  for (const char* name : {"utility", "accuracy", "complexity", "total"}) header.emplace_back(name);
}

void append_breakdown(std::vector<Cell>& row, const UpdateResult<double>& r) {
  for (Eigen::Index i = 0; i < r.posterior.size(); ++i) row.emplace_back(r.posterior(i));
  const auto& b = r.breakdown;
  for (double x : {b.affective_utility, b.accuracy, b.complexity, b.total}) row.emplace_back(x);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json json_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double x = std::get<double>(cell);
  if (!std::isfinite(x)) return format_real(x);
  // Round through the 12-digit text so CSV and JSON carry the same value.
  return std::strtod(format_real(x).c_str(), nullptr);
}

ordered_json with_object(ordered_json metadata) {
  return metadata.is_null() ? ordered_json::object() : std::move(metadata);
}

}  // namespace

void OutputTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw IoError("table row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                    " cells, header has " + std::to_string(header.size()));
    }
  }
}

OutputTable make_table(const experiments::SweepResult& sweep, ordered_json metadata) {
  OutputTable t;
  t.header = sweep.columns;
  t.metadata = with_object(std::move(metadata));
  t.rows.reserve(static_cast<std::size_t>(sweep.records.rows()));
  for (Eigen::Index r = 0; r < sweep.records.rows(); ++r) {
    std::vector<Cell> row;
    row.reserve(static_cast<std::size_t>(sweep.records.cols()));
    for (Eigen::Index c = 0; c < sweep.records.cols(); ++c) row.emplace_back(sweep.records(r, c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

OutputTable make_table(const UpdateResult<double>& update, ordered_json metadata) {
  OutputTable t;
  append_breakdown_header(t.header, update.posterior.size());
  t.metadata = with_object(std::move(metadata));
  t.metadata["method"] = to_string(update.method);
  t.metadata["iterations"] = update.iterations;
  t.metadata["converged"] = update.converged;
  std::vector<Cell> row;
  append_breakdown(row, update);
  t.rows.push_back(std::move(row));
  return t;
}

OutputTable make_table(const experiments::SelectionOutcome& outcome, ordered_json metadata) {
  OutputTable t;
  t.header = {"label", "chosen"};
  if (!outcome.per_option.empty()) {
    append_breakdown_header(t.header, outcome.per_option.front().update.posterior.size());
  }
  t.metadata = with_object(std::move(metadata));
  t.metadata["chosen_index"] = outcome.chosen_index;
  for (std::size_t i = 0; i < outcome.per_option.size(); ++i) {
    const auto& opt = outcome.per_option[i];
    std::vector<Cell> row{opt.label, i == outcome.chosen_index ? 1.0 : 0.0};
    append_breakdown(row, opt.update);
    t.rows.push_back(std::move(row));
  }
  return t;
}

OutputTable make_threshold_table(const std::vector<double>& sign_changes, ordered_json metadata) {
  OutputTable t;
  t.header = {"lambda_star"};
  t.metadata = with_object(std::move(metadata));
  t.metadata["sign_changes"] = sign_changes.size();
  for (double x : sign_changes) t.rows.push_back({x});
  return t;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const OutputTable& table) {
  table.validate();
  std::string out;
  for (const auto& [key, value] : table.metadata.items()) {
    out += "# " + key + ": " + value.dump() + "\n";
  }
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out += (i ? "," : "") + csv_escape(table.header[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out += csv_escape(*s);
      } else {
        out += format_real(std::get<double>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

std::string to_json_text(const OutputTable& table) {
  table.validate();
  ordered_json doc;
  doc["metadata"] = table.metadata;
  doc["columns"] = table.header;
  ordered_json records = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json rec = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.header[i]] = json_cell(row[i]);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc.dump(1) + "\n";
}

std::string serialize(const OutputTable& table, OutputFormat format) {
  return format == OutputFormat::json ? to_json_text(table) : to_csv(table);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      fs::remove(tmp, ec);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

void emit_table(const OutputTable& table, OutputFormat format, const std::filesystem::path& path) {
  write_file_atomic(path, serialize(table, format));
}

std::vector<double> CsvDocument::numeric_column(std::string_view name) const {
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) col = i;
  }
  if (col == header.size()) throw IoError("CSV has no column '" + std::string(name) + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const auto& cell = row.at(col);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) {
      throw IoError("non-numeric cell '" + cell + "' in column '" + std::string(name) + "'");
    }
    out.push_back(x);
  }
  return out;
}

CsvDocument parse_csv(std::string_view text) {
  CsvDocument doc;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    if (!have_header && text[pos] == '#') {
      const auto end = std::min(text.find('\n', pos), text.size());
      auto line = text.substr(pos + 1, end - pos - 1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      doc.comments.emplace_back(line);
      pos = end + 1;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (;;) {
      if (pos >= text.size()) {
        if (quoted) throw ParseError(pos, "unterminated quoted field");
        fields.push_back(std::move(field));
        break;
      }
      const char ch = text[pos++];
      if (quoted) {
        if (ch == '"') {
          if (pos < text.size() && text[pos] == '"') {
            field += '"';
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          field += ch;
        }
      } else if (ch == '"' && field.empty()) {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (ch == '\n') {
        fields.push_back(std::move(field));
        break;
      } else if (ch != '\r') {
        field += ch;
      }
    }
    if (!have_header) {
      doc.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != doc.header.size()) {
        throw ParseError(pos, "row " + std::to_string(doc.rows.size()) + " has " +
                                  std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(doc.header.size()));
      }
      doc.rows.push_back(std::move(fields));
    }
  }
  return doc;
}

}  // namespace mvbu
