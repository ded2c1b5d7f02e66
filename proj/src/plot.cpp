#include "mvbu/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "mvbu/table.hpp"

namespace mvbu {

namespace {

using experiments::SweepResult;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf",
                                                  "#bcbd22", "#7f7f7f"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

std::string label_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Layout {
  std::vector<std::size_t> swept;    // indices into sweep.axes with > 1 value
  std::vector<std::size_t> strides;  // row stride of each axis
};

Layout layout_of(const SweepResult& sweep) {
  if (sweep.axes.empty() || sweep.grid_size() == 0 || sweep.records.rows() == 0) {
    throw AxisMismatch("cannot plot an empty sweep");
  }
  if (static_cast<std::size_t>(sweep.records.rows()) != sweep.grid_size()) {
    throw AxisMismatch("record count does not match the axis grid");
  }
  Layout l;
  l.strides.assign(sweep.axes.size(), 1);
  for (std::size_t k = sweep.axes.size() - 1; k > 0; --k) {
    l.strides[k - 1] = l.strides[k] * sweep.axes[k].values.size();
  }
  for (std::size_t k = 0; k < sweep.axes.size(); ++k) {
    if (sweep.axes[k].values.size() > 1) l.swept.push_back(k);
  }
  return l;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    if (!std::isfinite(x)) return;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  void finalize() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double unit(double x) const { return (x - lo) / (hi - lo); }
};

std::string header(double width, double height, const std::string& title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out += "<text class=\"title\" x=\"" + fmt(width / 2) +
           "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" + xml_escape(title) + "</text>\n";
  }
  return out;
}

std::string render_line(const SweepResult& sweep, const Layout& l, const PlotOptions& opt) {
  if (l.swept.empty() || l.swept.size() > 2) {
    throw AxisMismatch("line plot needs one swept axis plus an optional series axis, got " +
                       std::to_string(l.swept.size()) + " swept axes");
  }
  if (sweep.hints.series.empty() && sweep.hints.reference.empty()) {
    throw AxisMismatch("sweep has no columns to draw as curves");
  }
  const std::size_t x_axis = l.swept.back();
  const std::optional<std::size_t> series_axis =
      l.swept.size() == 2 ? std::optional<std::size_t>(l.swept.front()) : std::nullopt;
  const auto& xs = sweep.axes[x_axis].values;
  const std::size_t n_series = series_axis ? sweep.axes[*series_axis].values.size() : 1;

  if (opt.log_x && !std::all_of(xs.begin(), xs.end(), [](double x) { return x > 0.0; })) {
    throw AxisMismatch("log x axis needs positive values on '" + sweep.axes[x_axis].name + "'");
  }
  auto xmap = [&](double x) { return opt.log_x ? std::log10(x) : x; };

  struct Curve {
    std::string column;
    std::string label;
    bool reference;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Curve> curves;
  auto trace = [&](const std::string& column, std::size_t series_index, bool reference) {
    const auto col = sweep.column(column);
    Curve c{column, column, reference, {}};
    if (series_axis && !reference) {
      c.label += " (" + sweep.axes[*series_axis].name + "=" +
                 label_number(sweep.axes[*series_axis].values[series_index]) + ")";
    }
    const std::size_t base = series_axis ? series_index * l.strides[*series_axis] : 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double y = sweep.records(static_cast<Eigen::Index>(base + i * l.strides[x_axis]), col);
      if (std::isfinite(y)) c.points.emplace_back(xmap(xs[i]), y);
    }
    curves.push_back(std::move(c));
  };
  for (std::size_t s = 0; s < n_series; ++s) {
    for (const auto& column : sweep.hints.series) trace(column, s, false);
  }
  for (const auto& column : sweep.hints.reference) trace(column, 0, true);

  Range xr, yr;
  for (double x : xs) xr.add(xmap(x));
  for (const auto& c : curves) {
    for (const auto& p : c.points) yr.add(p.second);
  }
  xr.finalize();
  yr.finalize();

  const double width = 720, height = 460;
  const double left = 70, right = 200, top = 36, bottom = 56;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + pw * xr.unit(x); };
  auto py = [&](double y) { return top + ph * (1.0 - yr.unit(y)); };

  std::string out = header(width, height, opt.title);
  out += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\"/>\n</g>\n";
  out += "<g class=\"ticks\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    const double shown_x = opt.log_x ? std::pow(10.0, fx) : fx;
    out += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(top + ph + 16) +
           "\" text-anchor=\"middle\">" + label_number(shown_x) + "</text>\n";
    out += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(py(fy) + 4) + "\" text-anchor=\"end\">" +
           label_number(fy) + "</text>\n";
  }
  out += "</g>\n";
  out += "<text class=\"xlabel\" x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(height - 14) +
         "\" text-anchor=\"middle\">" + xml_escape(sweep.axes[x_axis].name) +
         (opt.log_x ? " (log scale)" : "") + "</text>\n";
  const std::string ylabel = sweep.hints.series.size() == 1 ? sweep.hints.series.front() : "value";
  out += "<text class=\"ylabel\" x=\"16\" y=\"" + fmt(top + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fmt(top + ph / 2) + ")\">" +
         xml_escape(ylabel) + "</text>\n";

  std::size_t color = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* stroke = c.reference ? "black" : kPalette[color++ % kPalette.size()];
    out += "<polyline class=\"curve";
    out += c.reference ? " reference\"" : "\"";
    out += " data-column=\"" + xml_escape(c.column) + "\" fill=\"none\" stroke=\"" + stroke +
           "\" stroke-width=\"1.5\"";
    if (c.reference) out += " stroke-dasharray=\"5 3\"";
    out += " points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      if (k) out += ' ';
      out += fmt(px(c.points[k].first)) + "," + fmt(py(c.points[k].second));
    }
    out += "\"/>\n";
    const double ly = top + 12 + 14.0 * static_cast<double>(i);
    out += "<g class=\"legend\"><line x1=\"" + fmt(left + pw + 10) + "\" y1=\"" + fmt(ly - 4) +
           "\" x2=\"" + fmt(left + pw + 30) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + stroke +
           "\"/><text x=\"" + fmt(left + pw + 34) + "\" y=\"" + fmt(ly) + "\">" +
           xml_escape(c.label) + "</text></g>\n";
  }
  out += "</svg>\n";
  return out;
}

// Piecewise-linear approximation of a perceptually ordered colormap.
std::string colormap(double t) {
  static constexpr std::array<std::array<double, 3>, 5> kStops = {{{68, 1, 84},
                                                                   {59, 82, 139},
                                                                   {33, 145, 140},
                                                                   {94, 201, 98},
                                                                   {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (kStops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), kStops.size() - 2);
  const double f = t - static_cast<double>(i);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(kStops[i][0] + f * (kStops[i + 1][0] - kStops[i][0]))),
                static_cast<int>(std::lround(kStops[i][1] + f * (kStops[i + 1][1] - kStops[i][1]))),
                static_cast<int>(std::lround(kStops[i][2] + f * (kStops[i + 1][2] - kStops[i][2]))));
  return buf;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

std::string render_heatmap(const SweepResult& sweep, const Layout& l, const PlotOptions& opt) {
  if (l.swept.size() != 2) {
    throw AxisMismatch("heatmap needs exactly two swept axes, got " +
                       std::to_string(l.swept.size()));
  }
  if (sweep.hints.heatmaps.empty()) throw AxisMismatch("sweep has no heatmap columns");
  const std::size_t xa = l.swept[0], ya = l.swept[1];
  const auto& xs = sweep.axes[xa].values;
  const auto& ys = sweep.axes[ya].values;
  const std::size_t nx = xs.size(), ny = ys.size();
  auto at = [&](Eigen::Index col, std::size_t i, std::size_t j) {
    return sweep.records(static_cast<Eigen::Index>(i * l.strides[xa] + j * l.strides[ya]), col);
  };

  // Zero contour in index coordinates: per y row, the first sign change along x.
  std::vector<std::pair<double, double>> boundary;
  if (sweep.hints.boundary) {
    const auto col = sweep.column(*sweep.hints.boundary);
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        const double a = at(col, i, j), b = at(col, i + 1, j);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if (sign_of(a) != 0 && sign_of(b) != 0 && sign_of(a) != sign_of(b)) {
          boundary.emplace_back(static_cast<double>(i) + a / (a - b) + 0.5,
                                static_cast<double>(j) + 0.5);
          break;
        }
      }
    }
  }

  const std::size_t panels = sweep.hints.heatmaps.size();
  const std::size_t cols = std::min<std::size_t>(panels, 2);
  const std::size_t rows = (panels + cols - 1) / cols;
  const double pw = 360, ph = 300, left = 60, right = 80, top = 40, bottom = 50;
  const double cw = left + pw + right, chh = top + ph + bottom;
  const double width = cw * static_cast<double>(cols);
  const double height = chh * static_cast<double>(rows) + (opt.title.empty() ? 0 : 10);

  std::string out = header(width, height, opt.title);
  for (std::size_t p = 0; p < panels; ++p) {
    const auto& name = sweep.hints.heatmaps[p];
    const auto col = sweep.column(name);
    const double ox = cw * static_cast<double>(p % cols) + left;
    const double oy = chh * static_cast<double>(p / cols) + top + (opt.title.empty() ? 0 : 10);
    const double dx = pw / static_cast<double>(nx), dy = ph / static_cast<double>(ny);
    Range vr;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) vr.add(at(col, i, j));
    }
    vr.finalize();

    out += "<g class=\"heatmap\" data-column=\"" + xml_escape(name) + "\">\n";
    out += "<text x=\"" + fmt(ox + pw / 2) + "\" y=\"" + fmt(oy - 8) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(name) + "</text>\n";
    out += "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const double v = at(col, i, j);
        // Row j = 0 sits at the bottom.
        out += "<rect x=\"" + fmt(ox + dx * static_cast<double>(i)) + "\" y=\"" +
               fmt(oy + ph - dy * static_cast<double>(j + 1)) + "\" width=\"" + fmt(dx + 0.3) +
               "\" height=\"" + fmt(dy + 0.3) + "\" fill=\"" +
               (std::isfinite(v) ? colormap(vr.unit(v)) : std::string("#bbbbbb")) + "\"/>\n";
      }
    }
    out += "</g>\n";
    out += "<rect x=\"" + fmt(ox) + "\" y=\"" + fmt(oy) + "\" width=\"" + fmt(pw) + "\" height=\"" +
           fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const std::size_t i = (nx - 1) * static_cast<std::size_t>(k) / 4;
      const std::size_t j = (ny - 1) * static_cast<std::size_t>(k) / 4;
      out += "<text x=\"" + fmt(ox + dx * (static_cast<double>(i) + 0.5)) + "\" y=\"" +
             fmt(oy + ph + 14) + "\" text-anchor=\"middle\">" + label_number(xs[i]) + "</text>\n";
      out += "<text x=\"" + fmt(ox - 4) + "\" y=\"" +
             fmt(oy + ph - dy * (static_cast<double>(j) + 0.5) + 4) + "\" text-anchor=\"end\">" +
             label_number(ys[j]) + "</text>\n";
    }
    out += "<text class=\"xlabel\" x=\"" + fmt(ox + pw / 2) + "\" y=\"" + fmt(oy + ph + 34) +
           "\" text-anchor=\"middle\">" + xml_escape(sweep.axes[xa].name) + "</text>\n";
    out += "<text class=\"ylabel\" x=\"" + fmt(ox - 40) + "\" y=\"" + fmt(oy + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fmt(ox - 40) + " " +
           fmt(oy + ph / 2) + ")\">" + xml_escape(sweep.axes[ya].name) + "</text>\n";
    // Colour bar with its end values.
    out += "<g class=\"colorbar\">\n";
    for (int k = 0; k < 20; ++k) {
      out += "<rect x=\"" + fmt(ox + pw + 12) + "\" y=\"" + fmt(oy + ph - ph * (k + 1) / 20.0) +
             "\" width=\"14\" height=\"" + fmt(ph / 20.0 + 0.3) + "\" fill=\"" +
             colormap((k + 0.5) / 20.0) + "\"/>\n";
    }
    out += "<text x=\"" + fmt(ox + pw + 30) + "\" y=\"" + fmt(oy + ph) + "\">" +
           label_number(vr.lo) + "</text>\n";
    out += "<text x=\"" + fmt(ox + pw + 30) + "\" y=\"" + fmt(oy + 10) + "\">" +
           label_number(vr.hi) + "</text>\n</g>\n";
    if (!boundary.empty()) {
      out += "<polyline class=\"boundary\" fill=\"none\" stroke=\"white\" stroke-width=\"2\" "
             "points=\"";
      for (std::size_t k = 0; k < boundary.size(); ++k) {
        if (k) out += ' ';
        out += fmt(ox + dx * boundary[k].first) + "," + fmt(oy + ph - dy * boundary[k].second);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_svg(const SweepResult& sweep, const PlotOptions& options) {
  const auto l = layout_of(sweep);
  return options.kind == PlotKind::line ? render_line(sweep, l, options)
                                        : render_heatmap(sweep, l, options);
}

void emit_plot(const SweepResult& sweep, const PlotOptions& options,
               const std::filesystem::path& path) {
  write_file_atomic(path, render_svg(sweep, options));
}

}  // namespace mvbu
