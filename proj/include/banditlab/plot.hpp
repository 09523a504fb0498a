#pragma once

#include <string>
#include <vector>

#include "banditlab/experiment.hpp"

// Self-contained SVG line plots of aggregated series: solid mean lines,
// dotted mean-plus-one-std companions, log-scaled round axis. No external
// assets, deterministic output bytes.

namespace banditlab {

enum class RegretMode { pseudo, expected };

RegretMode parse_regret_mode(const std::string& name);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> upper;  // dotted companion; empty to omit
};

struct PlotOptions {
  std::string title;
  std::string x_label = "round t";
  std::string y_label;
  bool log_x = true;
  int width = 960;
  int height = 600;
};

// Series whose values are entirely NaN are dropped; interior NaNs split the
// polyline. A single surviving point renders as a marker.
std::string render_line_plot_svg(const std::vector<PlotSeries>& series,
                                 const PlotOptions& options);

// Panel builders; selection filters algorithms by label, empty = all,
// unknown labels are errors.
std::string render_regret_panel(const AggregateSummary& summary, RegretMode mode,
                                const std::vector<std::string>& selection);
std::string render_variance_panel(const AggregateSummary& summary,
                                  const std::vector<std::string>& selection);

// Writes regret.svg and norm_variance.svg under dir, creating it if needed.
void write_plots(const AggregateSummary& summary, const std::string& dir, RegretMode mode,
                 const std::vector<std::string>& selection);

}  // namespace banditlab
