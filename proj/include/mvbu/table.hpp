#ifndef MVBU_TABLE_HPP
#define MVBU_TABLE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mvbu/config.hpp"
#include "mvbu/experiments.hpp"
#include "mvbu/solver.hpp"

namespace mvbu {

using Cell = std::variant<double, std::string>;

/// Rectangular result table. Metadata is written ahead of the rows: as
/// "# key: <json>" comment lines in CSV, as a "metadata" object in JSON.
struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  /// Throws IoError when a row width differs from the header.
  void validate() const;
};

OutputTable make_table(const experiments::SweepResult& sweep, nlohmann::ordered_json metadata = {});
/// Columns q0..q{n-1}, utility, accuracy, complexity, total.
OutputTable make_table(const UpdateResult<double>& update, nlohmann::ordered_json metadata = {});
/// One row per option: label, chosen, q0..q{n-1}, utility, accuracy, complexity, total.
OutputTable make_table(const experiments::SelectionOutcome& outcome,
                       nlohmann::ordered_json metadata = {});
/// One row per sign change of the selection difference.
OutputTable make_threshold_table(const std::vector<double>& sign_changes,
                                 nlohmann::ordered_json metadata = {});

/// 12 significant digits; non-finite values print as inf, -inf, nan.
std::string format_real(double x);

std::string to_csv(const OutputTable& table);
std::string to_json_text(const OutputTable& table);
std::string serialize(const OutputTable& table, OutputFormat format);

/// Writes via a sibling temporary file and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

void emit_table(const OutputTable& table, OutputFormat format, const std::filesystem::path& path);

struct CsvDocument {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column as reals; throws IoError on a non-numeric cell.
  std::vector<double> numeric_column(std::string_view name) const;
};

/// Reads the CSV dialect produced by to_csv. Throws ParseError.
CsvDocument parse_csv(std::string_view text);

}  // namespace mvbu

#endif  // MVBU_TABLE_HPP
