#include "uaeval/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "uaeval/error.hpp"

namespace uaeval::io {

namespace {

struct Series {
  std::vector<std::pair<double, double>> points;
  std::vector<std::pair<double, double>> lower;
  std::vector<std::pair<double, double>> upper;
};

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

const char* colour(std::size_t i) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return kPalette[i % std::size(kPalette)];
}

}  // namespace

std::string metric_label(std::string_view metric) {
  static const std::map<std::string_view, std::string_view> kLabels = {
      {"mae", "MAE"},       {"rmse", "RMSE"},       {"u_a", "U_A"},       {"d", "d"},
      {"f_mae", "f_MAE"},   {"f_rmse", "f_RMSE"},   {"f_ua", "f_U_A"}};
  const auto it = kLabels.find(metric);
  return std::string(it == kLabels.end() ? metric : it->second);
}

void render_svg(const CurvesTable& curves, std::ostream& out, const SvgOptions& options) {
  if (curves.rows.empty()) throw InputError("cannot plot an empty curves table");

  auto transform_y = [&](double v) -> std::optional<double> {
    if (!options.log_y) return v;
    if (v <= 0.0) return std::nullopt;
    return std::log10(v);
  };

  // Metrics in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, Series> series;
  for (const CurveRow& r : curves.rows) {
    if (!series.contains(r.metric)) order.push_back(r.metric);
    Series& s = series[r.metric];
    const double x = static_cast<double>(r.n);
    if (auto y = transform_y(r.value)) s.points.emplace_back(x, *y);
    if (r.lo && r.hi) {
      const auto lo = transform_y(*r.lo);
      const auto hi = transform_y(*r.hi);
      if (lo && hi) {
        s.lower.emplace_back(x, *lo);
        s.upper.emplace_back(x, *hi);
      }
    }
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& [name, s] : series) {
    for (const auto* pts : {&s.points, &s.lower, &s.upper}) {
      for (const auto& [x, y] : *pts) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!std::isfinite(x_min)) throw InputError("no plottable points (log scale needs positive values)");
  if (x_min == x_max) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_min == y_max) {
    const double pad = y_min == 0.0 ? 1.0 : std::fabs(y_min) * 0.1;
    y_min -= pad;
    y_max += pad;
  }

  const double left = 70, right = 150, top = 50, bottom = 50;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };
  auto point = [&](double x, double y) { return fmt("%.2f", px(x)) + "," + fmt("%.2f", py(y)); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    out << "<text x=\"" << options.width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape_xml(options.title) << "</text>\n";
  }

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = x_min + (x_max - x_min) * t / kTicks;
    const double fy = y_min + (y_max - y_min) * t / kTicks;
    const double label_y = options.log_y ? std::pow(10.0, fy) : fy;
    out << "<text x=\"" << fmt("%.2f", px(fx)) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << fmt("%g", fx) << "</text>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << fmt("%.2f", py(fy) + 4) << "\" text-anchor=\"end\">"
        << fmt("%.4g", label_y) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << options.height - 12
      << "\" text-anchor=\"middle\">sample size n</text>\n</g>\n";

  for (std::size_t i = 0; i < order.size(); ++i) {
    const Series& s = series[order[i]];
    if (s.lower.empty()) continue;
    out << "<polygon fill=\"" << colour(i) << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    for (const auto& [x, y] : s.upper) out << point(x, y) << ' ';
    for (auto it = s.lower.rbegin(); it != s.lower.rend(); ++it) out << point(it->first, it->second) << ' ';
    out << "\"/>\n";
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Series& s = series[order[i]];
    out << "<polyline data-metric=\"" << escape_xml(order[i]) << "\" fill=\"none\" stroke=\"" << colour(i)
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k)
      out << (k ? " " : "") << point(s.points[k].first, s.points[k].second);
    out << "\"/>\n";
  }

  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double y = top + 10 + 20.0 * static_cast<double>(i);
    const double x = left + plot_w + 15;
    out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y << "\" stroke=\""
        << colour(i) << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << x + 26 << "\" y=\"" << y + 4 << "\">" << escape_xml(metric_label(order[i]))
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace uaeval::io
