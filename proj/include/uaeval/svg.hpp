#pragma once

#include <iosfwd>
#include <string>

#include "uaeval/csv.hpp"

namespace uaeval::io {

struct SvgOptions {
  std::string title;
  bool log_y = false;
  int width = 800;
  int height = 500;
};

/// Standalone SVG line chart: one <polyline> per metric, a shaded <polygon>
/// for metrics that carry lo/hi spread, and a legend. With log_y,
/// nonpositive values are left out of the plot.
void render_svg(const CurvesTable& curves, std::ostream& out, const SvgOptions& options = {});

/// Legend label for a metric column, e.g. "u_a" -> "U_A".
std::string metric_label(std::string_view metric);

}  // namespace uaeval::io
