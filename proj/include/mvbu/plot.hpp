#ifndef MVBU_PLOT_HPP
#define MVBU_PLOT_HPP

#include <filesystem>
#include <string>

#include "mvbu/experiments.hpp"

namespace mvbu {

enum class PlotKind { line, heatmap };

struct PlotOptions {
  PlotKind kind = PlotKind::line;
  bool log_x = false;
  std::string title;
};

// SVG rendering of sweep results. Axes with a single value are ignored.
//
// line:    one swept axis (x), optionally preceded by one series axis. Each
//          hints.series column gives one <polyline class="curve"> per series
//          value; each hints.reference column one more, with the extra class
//          "reference".
// heatmap: exactly two swept axes (first is x). One <g class="heatmap"> panel
//          per hints.heatmaps column. When hints.boundary is set, each panel
//          also gets the zero contour of that column as
//          <polyline class="boundary">.
//
// Both throw AxisMismatch when the swept axes or hinted columns do not fit.
std::string render_svg(const experiments::SweepResult& sweep, const PlotOptions& options);

/// render_svg, written atomically. Throws AxisMismatch or IoError.
void emit_plot(const experiments::SweepResult& sweep, const PlotOptions& options,
               const std::filesystem::path& path);

}  // namespace mvbu

#endif  // MVBU_PLOT_HPP
