#include "mvbbo/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mvbbo {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 56.0;

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
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

std::string round3(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << v;
  return out.str();
}

std::string tick_label(double value, bool log_scale) {
  std::ostringstream out;
  if (log_scale) {
    out << "1e" << static_cast<int>(std::lround(value));
  } else {
    out.precision(4);
    out << value;
  }
  return out.str();
}

}  // namespace

std::string render_plot_svg(const std::vector<StatsRow>& stats,
                            const PlotOptions& options) {
  if (stats.empty()) {
    throw std::invalid_argument("render_plot_svg: no data");
  }

  // Collect value range. On a log axis, non-positive values are clamped to the
  // smallest positive value present (or 1e-16 if there is none).
  double floor_positive = std::numeric_limits<double>::infinity();
  for (const auto& row : stats) {
    for (double v : {row.median, row.q25, row.q75}) {
      if (v > 0.0) floor_positive = std::min(floor_positive, v);
    }
  }
  if (!std::isfinite(floor_positive)) floor_positive = 1e-16;

  auto transform_y = [&](double v) {
    if (options.log_y) return std::log10(std::max(v, floor_positive));
    return v;
  };

  double x_min = static_cast<double>(stats.front().evaluations);
  double x_max = static_cast<double>(stats.back().evaluations);
  if (x_max <= x_min) x_max = x_min + 1.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& row : stats) {
    y_min = std::min({y_min, transform_y(row.q25), transform_y(row.median)});
    y_max = std::max({y_max, transform_y(row.q75), transform_y(row.median)});
  }
  if (y_max <= y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double evaluations) {
    return kMarginLeft + plot_w * (evaluations - x_min) / (x_max - x_min);
  };
  auto py = [&](double value) {
    return kMarginTop + plot_h * (y_max - transform_y(value)) / (y_max - y_min);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // IQR band.
  svg << "<polygon fill=\"#4878cf\" fill-opacity=\"0.25\" stroke=\"none\" "
         "points=\"";
  for (const auto& row : stats) {
    svg << round3(px(static_cast<double>(row.evaluations))) << ','
        << round3(py(row.q75)) << ' ';
  }
  for (auto it = stats.rbegin(); it != stats.rend(); ++it) {
    svg << round3(px(static_cast<double>(it->evaluations))) << ','
        << round3(py(it->q25)) << ' ';
  }
  svg << "\"/>\n";

  // Median polyline (a single checkpoint degenerates to a marker).
  if (stats.size() == 1) {
    svg << "<circle cx=\"" << round3(px(static_cast<double>(stats[0].evaluations)))
        << "\" cy=\"" << round3(py(stats[0].median))
        << "\" r=\"3\" fill=\"#4878cf\"/>\n";
  } else {
    svg << "<polyline fill=\"none\" stroke=\"#4878cf\" stroke-width=\"1.5\" "
           "points=\"";
    for (const auto& row : stats) {
      svg << round3(px(static_cast<double>(row.evaluations))) << ','
          << round3(py(row.median)) << ' ';
    }
    svg << "\"/>\n";
  }

  // Axes.
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
      << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
      << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double x = px(fx);
    svg << "<line x1=\"" << round3(x) << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << round3(x) << "\" y2=\"" << kMarginTop + plot_h + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << round3(x) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << static_cast<long long>(std::llround(fx)) << "</text>\n";

    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double y = kMarginTop + plot_h * (y_max - fy) / (y_max - y_min);
    svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << round3(y)
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << round3(y)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << round3(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">"
        << escape_xml(tick_label(fy, options.log_y)) << "</text>\n";
  }

  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
      << kHeight - 14 << "\" font-size=\"13\" text-anchor=\"middle\">"
      << escape_xml(options.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kMarginTop + plot_h / 2 << ")\">" << escape_xml(options.y_label)
      << "</text>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << kWidth / 2
        << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">"
        << escape_xml(options.title) << "</text>\n";
  }
  svg << "<rect x=\"" << kMarginLeft + plot_w - 170 << "\" y=\""
      << kMarginTop + 8 << "\" width=\"14\" height=\"14\" fill=\"#4878cf\" "
         "fill-opacity=\"0.5\"/>\n";
  svg << "<text x=\"" << kMarginLeft + plot_w - 150 << "\" y=\""
      << kMarginTop + 19 << "\" font-size=\"12\">" << escape_xml(options.legend)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::vector<StatsRow>& stats, const std::string& path,
               const PlotOptions& options) {
  const std::string document = render_plot_svg(stats, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << document;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mvbbo
