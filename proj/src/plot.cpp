#include "banditlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace banditlab {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::string fmt_tick(double v) {
  char buf[48];
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3)) {
    std::snprintf(buf, sizeof(buf), "%.0e", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%g", v);
  }
  return std::string(buf);
}

std::string escape_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double pix_lo = 0.0;
  double pix_hi = 1.0;
  bool log = false;

  double place(double v) const {
    double u = log ? std::log10(v) : v;
    double a = log ? std::log10(lo) : lo;
    double b = log ? std::log10(hi) : hi;
    if (b <= a) return 0.5 * (pix_lo + pix_hi);
    return pix_lo + (u - a) / (b - a) * (pix_hi - pix_lo);
  }
};

// Largest 1/2/5 * 10^k step that yields at most `max_ticks` intervals.
double nice_step(double span, int max_ticks) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / max_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) return mag * m;
  }
  return mag * 10.0;
}

}  // namespace

RegretMode parse_regret_mode(const std::string& name) {
  if (name == "pseudo") return RegretMode::pseudo;
  if (name == "expected") return RegretMode::expected;
  throw std::invalid_argument("regret mode must be 'pseudo' or 'expected', got '" + name + "'");
}

std::string render_line_plot_svg(const std::vector<PlotSeries>& series,
                                 const PlotOptions& options) {
  const double width = options.width;
  const double height = options.height;
  const double ml = 78.0;
  const double mr = 24.0;
  const double mt = 46.0;
  const double mb = 58.0;

  struct Drawable {
    const PlotSeries* s;
    int color;
  };
  std::vector<Drawable> drawables;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  int color = 0;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.mean.size()) {
      throw std::invalid_argument("plot series '" + s.name + "': x and mean sizes differ");
    }
    if (!s.upper.empty() && s.upper.size() != s.x.size()) {
      throw std::invalid_argument("plot series '" + s.name + "': upper size differs");
    }
    bool any = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.mean[i])) continue;
      if (options.log_x && !(s.x[i] > 0.0)) {
        throw std::invalid_argument("plot series '" + s.name + "': log axis needs positive x");
      }
      any = true;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.mean[i]);
      ymax = std::max(ymax, s.mean[i]);
      if (!s.upper.empty() && !std::isnan(s.upper[i])) {
        ymin = std::min(ymin, s.upper[i]);
        ymax = std::max(ymax, s.upper[i]);
      }
    }
    if (any) drawables.push_back({&s, color});
    color = (color + 1) % kPaletteSize;
  }
  if (drawables.empty()) {
    xmin = options.log_x ? 1.0 : 0.0;
    xmax = options.log_x ? 10.0 : 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax <= xmin) xmax = options.log_x ? xmin * 10.0 : xmin + 1.0;
  if (ymin > 0.0) ymin = 0.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymax += 0.05 * (ymax - ymin);

  Axis xa{xmin, xmax, ml, width - mr, options.log_x};
  Axis ya{ymin, ymax, height - mb, mt, false};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + fmt(width / 2) + "\" y=\"26\" text-anchor=\"middle\" font-size=\"17\">" +
         escape_text(options.title) + "</text>\n";

  // Gridlines and ticks.
  if (options.log_x) {
    const int d0 = static_cast<int>(std::ceil(std::log10(xmin) - 1e-9));
    const int d1 = static_cast<int>(std::floor(std::log10(xmax) + 1e-9));
    for (int d = d0; d <= d1; ++d) {
      const double v = std::pow(10.0, d);
      const double px = xa.place(v);
      svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(px) + "\" y2=\"" +
             fmt(height - mb) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(height - mb + 18) +
             "\" text-anchor=\"middle\" font-size=\"12\">" + fmt_tick(v) + "</text>\n";
    }
  } else {
    const double step = nice_step(xmax - xmin, 8);
    for (double v = std::ceil(xmin / step) * step; v <= xmax + 1e-9 * step; v += step) {
      const double px = xa.place(v);
      svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(px) + "\" y2=\"" +
             fmt(height - mb) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(height - mb + 18) +
             "\" text-anchor=\"middle\" font-size=\"12\">" + fmt_tick(v) + "</text>\n";
    }
  }
  {
    const double step = nice_step(ymax - ymin, 6);
    for (double v = std::ceil(ymin / step) * step; v <= ymax + 1e-9 * step; v += step) {
      const double py = ya.place(v);
      svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(width - mr) +
             "\" y2=\"" + fmt(py) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py + 4) +
             "\" text-anchor=\"end\" font-size=\"12\">" + fmt_tick(v) + "</text>\n";
    }
  }
  // Frame.
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(width - ml - mr) +
         "\" height=\"" + fmt(height - mt - mb) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  // Axis labels.
  svg += "<text x=\"" + fmt((ml + width - mr) / 2) + "\" y=\"" + fmt(height - 14) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + escape_text(options.x_label) +
         "</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt((mt + height - mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 " +
         fmt((mt + height - mb) / 2) + ")\">" + escape_text(options.y_label) + "</text>\n";

  // One polyline per NaN-free stretch; lone points become markers.
  const auto draw_line = [&](const std::vector<double>& x, const std::vector<double>& y,
                             const char* col, bool dotted) {
    std::vector<std::pair<double, double>> run;
    const auto flush = [&]() {
      if (run.size() >= 2) {
        std::string pts;
        for (const auto& [px, py] : run) {
          pts += fmt(px) + "," + fmt(py) + " ";
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + col +
               "\" stroke-width=\"" + (dotted ? "1.2" : "1.8") + "\"" +
               (dotted ? " stroke-dasharray=\"5 4\"" : "") + "/>\n";
      } else if (run.size() == 1) {
        svg += "<circle cx=\"" + fmt(run[0].first) + "\" cy=\"" + fmt(run[0].second) +
               "\" r=\"3\" fill=\"" + col + "\"/>\n";
      }
      run.clear();
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::isnan(y[i])) {
        flush();
        continue;
      }
      run.emplace_back(xa.place(x[i]), ya.place(y[i]));
    }
    flush();
  };
  for (const Drawable& d : drawables) {
    draw_line(d.s->x, d.s->mean, kPalette[d.color], false);
    if (!d.s->upper.empty()) draw_line(d.s->x, d.s->upper, kPalette[d.color], true);
  }

  // Legend.
  if (!drawables.empty()) {
    const double lx = width - mr - 190.0;
    double ly = mt + 14.0;
    for (const Drawable& d : drawables) {
      svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(lx + 26) +
             "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + kPalette[d.color] +
             "\" stroke-width=\"2.2\"/>\n";
      svg += "<text x=\"" + fmt(lx + 34) + "\" y=\"" + fmt(ly) + "\" font-size=\"13\">" +
             escape_text(d.s->name) + "</text>\n";
      ly += 19.0;
    }
  }
  svg += "</svg>\n";
  return svg;
}

namespace {

std::vector<const AggregateSeries*> select_series(const AggregateSummary& summary,
                                                  const std::vector<std::string>& selection) {
  std::vector<const AggregateSeries*> out;
  if (selection.empty()) {
    for (const AggregateSeries& s : summary.series) out.push_back(&s);
    return out;
  }
  for (const std::string& name : selection) {
    const AggregateSeries* found = nullptr;
    for (const AggregateSeries& s : summary.series) {
      if (s.algorithm == name) {
        found = &s;
        break;
      }
    }
    if (found == nullptr) throw std::invalid_argument("unknown series '" + name + "'");
    out.push_back(found);
  }
  return out;
}

std::vector<double> to_double(const std::vector<std::int64_t>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
  return out;
}

std::vector<double> plus(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

std::string render_regret_panel(const AggregateSummary& summary, RegretMode mode,
                                const std::vector<std::string>& selection) {
  std::vector<PlotSeries> series;
  for (const AggregateSeries* s : select_series(summary, selection)) {
    PlotSeries p;
    p.name = s->algorithm;
    p.x = to_double(s->checkpoints);
    if (mode == RegretMode::pseudo) {
      p.mean = s->pseudo_regret_mean;
      p.upper = plus(s->pseudo_regret_mean, s->pseudo_regret_std);
    } else {
      p.mean = s->expected_regret_mean;
      p.upper = plus(s->expected_regret_mean, s->expected_regret_std);
    }
    series.push_back(std::move(p));
  }
  PlotOptions options;
  options.title = mode == RegretMode::pseudo ? "Cumulative regret (realized gaps)"
                                             : "Cumulative regret (expected per policy)";
  options.y_label = "cumulative regret";
  return render_line_plot_svg(series, options);
}

std::string render_variance_panel(const AggregateSummary& summary,
                                  const std::vector<std::string>& selection) {
  std::vector<PlotSeries> series;
  for (const AggregateSeries* s : select_series(summary, selection)) {
    PlotSeries p;
    p.name = s->algorithm;
    p.x = to_double(s->checkpoints);
    p.mean = s->norm_variance_mean;
    p.upper = plus(s->norm_variance_mean, s->norm_variance_std);
    series.push_back(std::move(p));
  }
  PlotOptions options;
  options.title = "Cumulative variance over 2Kt";
  options.y_label = "normalized variance";
  return render_line_plot_svg(series, options);
}

void write_plots(const AggregateSummary& summary, const std::string& dir, RegretMode mode,
                 const std::vector<std::string>& selection) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed for '" + path + "'");
  };
  write("regret.svg", render_regret_panel(summary, mode, selection));
  write("norm_variance.svg", render_variance_panel(summary, selection));
}

}  // namespace banditlab
