#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uaeval/distgen.hpp"
#include "uaeval/metrics.hpp"
#include "uaeval/sweep.hpp"
#include "uaeval/theory.hpp"

// File formats. All text is UTF-8 with '.' as decimal separator; readers
// accept LF or CRLF and an optional BOM, writers emit LF. Numbers are written
// in the shortest form that reads back to the same double.
//
//   pairs:      header "predicted,observed" or "id,predicted,observed"
//   errors:     header "error"
//   histogram:  header "bin_lo,bin_hi,count"
//   curves:     "# key=value" metadata lines, then "metric,n,value,lo,hi,sd".
//               Long format, rows sorted by (metric, n); lo/hi/sd are empty
//               for deterministic curves.
//
// Readers skip '#' lines before the header and blank lines anywhere.
namespace uaeval::io {

struct PairsTable {
  std::vector<std::string> ids;  // empty when the file has no id column
  std::vector<double> predicted;
  std::vector<double> observed;

  std::size_t size() const noexcept { return predicted.size(); }
  ErrorVector errors() const { return errors_from_pairs(predicted, observed); }
};

PairsTable parse_pairs_csv(std::string_view text);
ErrorVector parse_errors_csv(std::string_view text);

PairsTable load_pairs_csv(const std::filesystem::path& path);
ErrorVector load_errors_csv(const std::filesystem::path& path);

enum class ErrorSource { detect, pairs, errors };

/// Loads an error vector from either file kind; `detect` picks by header.
ErrorVector load_error_data(const std::filesystem::path& path, ErrorSource source = ErrorSource::detect);

void write_errors_csv(std::span<const double> e, std::ostream& out);
void write_histogram_csv(const Histogram& h, std::ostream& out);

struct CurveRow {
  std::string metric;
  std::size_t n = 0;
  double value = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> sd;

  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

struct CurvesTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<CurveRow> rows;

  friend bool operator==(const CurvesTable&, const CurvesTable&) = default;
};

CurvesTable to_table(const SweepResult& r);
CurvesTable to_table(const RangeCurve& r);
CurvesTable to_table(const EnvelopeCurves& r);

enum class CurvesFormat { csv, json };

CurvesFormat parse_curves_format(std::string_view name);

/// Sorts rows by (metric, n) and writes; throws InputError on duplicate n
/// within a metric.
void write_curves(CurvesTable table, CurvesFormat format, std::ostream& out);

/// Reads either format (JSON when the first non-blank character is '{').
CurvesTable parse_curves(std::string_view text);
CurvesTable load_curves(const std::filesystem::path& path);

// Shared helpers.
std::string format_double(double x);
std::string read_file(const std::filesystem::path& path);
/// Replaces the file's contents; throws IoError when it cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace uaeval::io
