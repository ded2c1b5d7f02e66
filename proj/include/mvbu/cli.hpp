#ifndef MVBU_CLI_HPP
#define MVBU_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvbu/config.hpp"
#include "mvbu/experiments.hpp"
#include "mvbu/plot.hpp"
#include "mvbu/table.hpp"

namespace mvbu {

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitSolverError = 2 };

struct RunOutput {
  OutputTable table;
  std::optional<experiments::SweepResult> sweep;  // set for plottable scenarios
  PlotOptions plot;
};

/// Runs one resolved configuration. Solver failures propagate as exceptions.
RunOutput run_config(const RunConfig& config);

struct FigureJob {
  std::string name;  // output file stem
  RunConfig config;
  std::string title;
};

inline constexpr std::string_view kFigures[] = {"fig3", "fig4", "fig5", "fig6", "fig7"};

/// Default configurations behind one figure. Throws ValidationError for an
/// unknown figure name.
std::vector<FigureJob> figure_jobs(std::string_view figure);

/// Writes <name>.csv (or .json) and <name>.svg per job into `dir`; returns
/// the written paths in order.
std::vector<std::filesystem::path> reproduce_figure(std::string_view figure,
                                                    const std::filesystem::path& dir,
                                                    OutputFormat format = OutputFormat::csv);

/// Entry point. Data goes to `out`, diagnostics to `err`. Returns an ExitCode.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvbu

#endif  // MVBU_CLI_HPP
