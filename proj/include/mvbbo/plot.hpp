#ifndef MVBBO_PLOT_HPP
#define MVBBO_PLOT_HPP

#include <string>
#include <vector>

#include "mvbbo/harness.hpp"

namespace mvbbo {

struct PlotOptions {
  std::string title = "";
  std::string x_label = "evaluations";
  std::string y_label = "best fitness";
  std::string legend = "median (IQR)";
  bool log_y = true;  ///< fitness plots are log-scaled; hypervolume is linear
};

/// Renders the median polyline with a translucent inter-quartile band as a
/// self-contained SVG document.
std::string render_plot_svg(const std::vector<StatsRow>& stats,
                            const PlotOptions& options);

void emit_plot(const std::vector<StatsRow>& stats, const std::string& path,
               const PlotOptions& options = {});

}  // namespace mvbbo

#endif  // MVBBO_PLOT_HPP
