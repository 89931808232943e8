#pragma once

#include <iosfwd>
#include <string_view>

#include "uaeval/metrics.hpp"

namespace uaeval::io {

enum class SummaryFormat { text, csv, json };

SummaryFormat parse_summary_format(std::string_view name);

/// Writes the summary with columns n, mae, e_max, e_min, e_median, rmse, u_a,
/// bias. Text output is a right-aligned table rounded to `significant`
/// figures; csv and json carry full precision.
void write_summary(const MetricsSummary& s, SummaryFormat format, std::ostream& out, int significant = 3);

/// Inverse of the json form of write_summary.
MetricsSummary parse_summary_json(std::string_view text);

}  // namespace uaeval::io
