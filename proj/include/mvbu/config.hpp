#ifndef MVBU_CONFIG_HPP
#define MVBU_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mvbu/experiments.hpp"
#include "mvbu/solver.hpp"

namespace mvbu {

enum class Scenario { update, sweep, select, threshold, heatmap, polarize };
enum class SolverChoice { automatic, closed_form, limit, numeric, brute_force };
enum class OutputFormat { csv, json };
enum class HeatmapKind { objective, selection };
enum class MenuPreset { tradeoff, dominant };

std::string_view to_string(Scenario s);
std::string_view to_string(SolverChoice s);
std::string_view to_string(OutputFormat f);
std::string_view to_string(HeatmapKind k);
std::string_view to_string(MenuPreset p);

std::optional<Scenario> parse_scenario(std::string_view name);
std::optional<OutputFormat> parse_format(std::string_view name);

/// Either an explicit list or `points` values between `min` and `max`.
struct GridSpec {
  enum class Spacing { linear, log };

  std::vector<double> explicit_values;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::linear;

  static GridSpec list(std::vector<double> values);
  static GridSpec range(double min, double max, std::size_t points,
                        Spacing spacing = Spacing::linear);

  bool is_list() const { return points == 0; }
  std::vector<double> values() const;
  nlohmann::ordered_json to_json() const;
};

/// Fully resolved run description. Only the fields used by `scenario` are
/// meaningful; to_json() echoes exactly those.
struct RunConfig {
  Scenario scenario = Scenario::update;

  std::vector<double> prior;
  std::vector<double> lik;
  std::vector<double> c;
  double alpha = 1.0;
  double lambda = 1.0;

  SolverChoice solver = SolverChoice::automatic;
  NumericSolverConfig numeric;
  double grid_step = 1e-4;

  GridSpec lambda_grid;
  GridSpec alpha_grid;
  GridSpec evidence_grid;

  double evidence = 0.7;
  HeatmapKind heatmap = HeatmapKind::objective;
  MenuPreset preset = MenuPreset::tradeoff;
  std::vector<experiments::EvidenceOption> menu;
  experiments::ThresholdSearch search;

  std::vector<double> c_agent1;
  std::vector<double> c_agent2;

  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::filesystem::path> plot_path;

  /// Resolved parameters without output destinations, so two runs of one
  /// experiment echo the same text wherever they write.
  nlohmann::ordered_json to_json() const;
};

/// Resolves and validates a parsed document. Throws ValidationError.
RunConfig resolve_config(const nlohmann::json& doc);

/// Parses JSON text; ParseError carries the byte offset of the failure.
RunConfig load_config_text(std::string_view text);

/// Accepts a config file or a previously written result file (CSV or JSON)
/// whose metadata embeds the config. Throws IoError if unreadable.
RunConfig load_config_file(const std::filesystem::path& path);

/// The unresolved document behind load_config_file.
nlohmann::json read_config_document(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Extracts the embedded config document from result-file text, if any.
std::optional<nlohmann::json> embedded_config(std::string_view text);

nlohmann::json parse_json(std::string_view text);

}  // namespace mvbu

#endif  // MVBU_CONFIG_HPP
