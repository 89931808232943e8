#include "uaeval/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "uaeval/error.hpp"

namespace uaeval::io {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<Line> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.push_back({number, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

double parse_number(std::string_view cell, std::size_t line) {
  std::string_view digits = cell;
  if (digits.starts_with('+')) digits.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || res.ec == std::errc::invalid_argument || res.ptr != digits.data() + digits.size())
    throw FormatError("'" + std::string(cell) + "' is not a number", line);
  if (res.ec == std::errc::result_out_of_range || !std::isfinite(value))
    throw FormatError("'" + std::string(cell) + "' is not a finite number", line);
  return value;
}

std::size_t parse_count(std::string_view cell, std::size_t line) {
  std::size_t value = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
    throw FormatError("'" + std::string(cell) + "' is not a nonnegative integer", line);
  return value;
}

std::string join(const std::vector<std::string_view>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  return out;
}

// Splits a table into its header and data lines. Comments and blank lines
// before the header are skipped, as are blank data lines.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  Line header{0, {}};
  std::vector<Line> rows;
};

Table split_table(std::string_view text) {
  Table t;
  bool have_header = false;
  for (const Line& line : split_lines(text)) {
    const auto content = trim(line.text);
    if (!have_header) {
      if (content.empty()) continue;
      if (content.starts_with('#')) {
        auto body = trim(content.substr(1));
        const auto eq = body.find('=');
        if (eq != std::string_view::npos)
          t.meta.emplace_back(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
        continue;
      }
      t.header = line;
      have_header = true;
      continue;
    }
    if (content.empty()) continue;
    if (content.starts_with('#')) throw FormatError("comment lines are only allowed before the header", line.number);
    t.rows.push_back(line);
  }
  if (!have_header) throw FormatError("missing header row", 0);
  return t;
}

std::vector<std::string_view> row_cells(const Line& line, std::size_t expected) {
  auto cells = split_cells(line.text);
  if (cells.size() != expected)
    throw FormatError("expected " + std::to_string(expected) + " columns, found " + std::to_string(cells.size()),
                      line.number);
  return cells;
}

void require_rows(const Table& t) {
  if (t.rows.empty()) throw InputError("file has a header but no data rows");
}

void sort_rows(std::vector<CurveRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
    return std::tie(a.metric, a.n) < std::tie(b.metric, b.n);
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].metric == rows[i - 1].metric && rows[i].n == rows[i - 1].n)
      throw InputError("duplicate n = " + std::to_string(rows[i].n) + " in curve '" + rows[i].metric + "'");
  }
}

void append_curve(CurvesTable& t, std::string_view metric, const std::vector<std::size_t>& sizes,
                  const std::vector<double>& values) {
  for (std::size_t i = 0; i < sizes.size(); ++i) t.rows.push_back({std::string(metric), sizes[i], values[i], {}, {}, {}});
}

void append_curve(CurvesTable& t, std::string_view metric, const std::vector<std::size_t>& sizes,
                  const MetricCurve& c) {
  for (std::size_t i = 0; i < sizes.size(); ++i)
    t.rows.push_back({std::string(metric), sizes[i], c.value[i], c.min[i], c.max[i], c.sd[i]});
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<double> optional_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::vector<std::pair<std::string, std::string>> base_meta() {
  return {{"tool", "uaeval"}, {"version", UAEVAL_VERSION}};
}

CurvesTable parse_curves_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), 0);
  }
  CurvesTable t;
  try {
    if (doc.contains("meta")) {
      for (const auto& [key, value] : doc.at("meta").items())
        t.meta.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    for (const auto& row : doc.at("rows")) {
      CurveRow r;
      r.metric = row.at("metric").get<std::string>();
      r.n = row.at("n").get<std::size_t>();
      r.value = row.at("value").get<double>();
      r.lo = optional_from_json(row, "lo");
      r.hi = optional_from_json(row, "hi");
      r.sd = optional_from_json(row, "sd");
      t.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("unexpected curves JSON layout: ") + e.what(), 0);
  }
  return t;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return text;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

PairsTable parse_pairs_csv(std::string_view text) {
  const Table t = split_table(text);
  const auto header = split_cells(t.header.text);
  bool with_id = false;
  if (join(header) == "id,predicted,observed") {
    with_id = true;
  } else if (join(header) != "predicted,observed") {
    throw FormatError("expected header 'predicted,observed' or 'id,predicted,observed', found '" +
                          std::string(t.header.text) + "'",
                      t.header.number);
  }
  require_rows(t);
  PairsTable out;
  for (const Line& line : t.rows) {
    const auto cells = row_cells(line, header.size());
    const std::size_t off = with_id ? 1 : 0;
    if (with_id) out.ids.emplace_back(cells[0]);
    out.predicted.push_back(parse_number(cells[off], line.number));
    out.observed.push_back(parse_number(cells[off + 1], line.number));
  }
  return out;
}

ErrorVector parse_errors_csv(std::string_view text) {
  const Table t = split_table(text);
  if (trim(t.header.text) != "error")
    throw FormatError("expected header 'error', found '" + std::string(t.header.text) + "'", t.header.number);
  require_rows(t);
  std::vector<double> values;
  values.reserve(t.rows.size());
  for (const Line& line : t.rows) values.push_back(parse_number(row_cells(line, 1)[0], line.number));
  return ErrorVector(std::move(values));
}

PairsTable load_pairs_csv(const std::filesystem::path& path) { return parse_pairs_csv(read_file(path)); }

ErrorVector load_errors_csv(const std::filesystem::path& path) { return parse_errors_csv(read_file(path)); }

ErrorVector load_error_data(const std::filesystem::path& path, ErrorSource source) {
  const std::string text = read_file(path);
  if (source == ErrorSource::detect) {
    const Table t = split_table(text);
    source = trim(t.header.text) == "error" ? ErrorSource::errors : ErrorSource::pairs;
  }
  if (source == ErrorSource::errors) return parse_errors_csv(text);
  return parse_pairs_csv(text).errors();
}

void write_errors_csv(std::span<const double> e, std::ostream& out) {
  out << "error\n";
  for (double x : e) out << format_double(x) << '\n';
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
}

CurvesTable to_table(const SweepResult& r) {
  CurvesTable t;
  t.meta = base_meta();
  const SweepConfig& c = r.config;
  t.meta.insert(t.meta.end(), {{"kind", "sweep"},
                               {"generator", r.generator},
                               {"seed", std::to_string(c.seed)},
                               {"dataset_size", std::to_string(r.dataset_size)},
                               {"n_min", std::to_string(c.n_min)},
                               {"n_max", std::to_string(c.n_max.value_or(r.dataset_size))},
                               {"n_step", std::to_string(c.n_step)},
                               {"reps", std::to_string(c.reps)},
                               {"aggregation", std::string(to_string(c.aggregation))},
                               {"replacement", std::string(to_string(c.replacement))}});
  append_curve(t, "mae", r.sizes, r.mae);
  append_curve(t, "rmse", r.sizes, r.rmse);
  append_curve(t, "u_a", r.sizes, r.u_a);
  return t;
}

CurvesTable to_table(const RangeCurve& r) {
  CurvesTable t;
  t.meta = base_meta();
  t.meta.emplace_back("kind", "range");
  append_curve(t, "d", r.sizes, r.d);
  return t;
}

CurvesTable to_table(const EnvelopeCurves& r) {
  CurvesTable t;
  t.meta = base_meta();
  t.meta.emplace_back("kind", "envelope");
  t.meta.emplace_back("mae", format_double(r.mae));
  append_curve(t, "f_mae", r.sizes, r.f_mae);
  append_curve(t, "f_rmse", r.sizes, r.f_rmse);
  append_curve(t, "f_ua", r.sizes, r.f_ua);
  return t;
}

CurvesFormat parse_curves_format(std::string_view name) {
  if (name == "csv") return CurvesFormat::csv;
  if (name == "json") return CurvesFormat::json;
  throw InputError("unknown curves format '" + std::string(name) + "' (expected csv or json)");
}

void write_curves(CurvesTable table, CurvesFormat format, std::ostream& out) {
  sort_rows(table.rows);
  if (format == CurvesFormat::csv) {
    for (const auto& [key, value] : table.meta) out << "# " << key << '=' << value << '\n';
    out << "metric,n,value,lo,hi,sd\n";
    for (const CurveRow& r : table.rows) {
      out << r.metric << ',' << r.n << ',' << format_double(r.value) << ',' << optional_cell(r.lo) << ','
          << optional_cell(r.hi) << ',' << optional_cell(r.sd) << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const CurveRow& r : table.rows) {
    doc["rows"].push_back({{"metric", r.metric},
                           {"n", r.n},
                           {"value", r.value},
                           {"lo", optional_json(r.lo)},
                           {"hi", optional_json(r.hi)},
                           {"sd", optional_json(r.sd)}});
  }
  out << doc.dump(2) << '\n';
}

CurvesTable parse_curves(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') return parse_curves_json(text);

  const Table t = split_table(text);
  if (join(split_cells(t.header.text)) != "metric,n,value,lo,hi,sd")
    throw FormatError("expected header 'metric,n,value,lo,hi,sd', found '" + std::string(t.header.text) + "'",
                      t.header.number);
  require_rows(t);
  CurvesTable out;
  out.meta = t.meta;
  for (const Line& line : t.rows) {
    const auto cells = row_cells(line, 6);
    if (cells[0].empty()) throw FormatError("empty metric name", line.number);
    CurveRow r;
    r.metric = std::string(cells[0]);
    r.n = parse_count(cells[1], line.number);
    r.value = parse_number(cells[2], line.number);
    auto optional_number = [&](std::string_view cell) -> std::optional<double> {
      if (cell.empty()) return std::nullopt;
      return parse_number(cell, line.number);
    };
    r.lo = optional_number(cells[3]);
    r.hi = optional_number(cells[4]);
    r.sd = optional_number(cells[5]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

CurvesTable load_curves(const std::filesystem::path& path) { return parse_curves(read_file(path)); }

}  // namespace uaeval::io
