#include "uaeval/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "uaeval/csv.hpp"
#include "uaeval/error.hpp"

namespace uaeval::io {

namespace {

constexpr std::array<const char*, 8> kColumns = {"n", "mae", "e_max", "e_min", "e_median", "rmse", "u_a", "bias"};

std::array<double, 7> real_fields(const MetricsSummary& s) {
  return {s.mae, s.e_max, s.e_min, s.e_median, s.rmse, s.u_a, s.bias};
}

std::string significant_figures(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.*g", digits, x);
  return buf;
}

}  // namespace

SummaryFormat parse_summary_format(std::string_view name) {
  if (name == "text") return SummaryFormat::text;
  if (name == "csv") return SummaryFormat::csv;
  if (name == "json") return SummaryFormat::json;
  throw InputError("unknown summary format '" + std::string(name) + "' (expected text, csv or json)");
}

void write_summary(const MetricsSummary& s, SummaryFormat format, std::ostream& out, int significant) {
  const auto reals = real_fields(s);
  switch (format) {
    case SummaryFormat::csv: {
      for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
      out << '\n' << s.n;
      for (double v : reals) out << ',' << format_double(v);
      out << '\n';
      break;
    }
    case SummaryFormat::json: {
      nlohmann::ordered_json doc;
      doc[kColumns[0]] = s.n;
      for (std::size_t i = 0; i < reals.size(); ++i) doc[kColumns[i + 1]] = reals[i];
      out << doc.dump(2) << '\n';
      break;
    }
    case SummaryFormat::text: {
      if (significant < 1 || significant > 17) throw InputError("significant figures must be in 1..17");
      std::array<std::string, 8> cells;
      cells[0] = std::to_string(s.n);
      for (std::size_t i = 0; i < reals.size(); ++i) cells[i + 1] = significant_figures(reals[i], significant);
      std::string header_line;
      std::string value_line;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::size_t width = std::max(cells[i].size(), std::string_view(kColumns[i]).size()) + (i ? 2 : 0);
        header_line += std::string(width - std::string_view(kColumns[i]).size(), ' ') + kColumns[i];
        value_line += std::string(width - cells[i].size(), ' ') + cells[i];
      }
      out << header_line << '\n' << value_line << '\n';
      break;
    }
  }
}

MetricsSummary parse_summary_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    MetricsSummary s;
    s.n = doc.at("n").get<std::size_t>();
    s.mae = doc.at("mae").get<double>();
    s.e_max = doc.at("e_max").get<double>();
    s.e_min = doc.at("e_min").get<double>();
    s.e_median = doc.at("e_median").get<double>();
    s.rmse = doc.at("rmse").get<double>();
    s.u_a = doc.at("u_a").get<double>();
    s.bias = doc.at("bias").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid summary JSON: ") + e.what(), 0);
  }
}

}  // namespace uaeval::io
