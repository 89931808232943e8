#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "uaeval/csv.hpp"
#include "uaeval/error.hpp"
#include "uaeval/report.hpp"
#include "uaeval/svg.hpp"

using namespace uaeval;
using namespace uaeval::io;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::string curves_csv(const CurvesTable& t) {
  std::ostringstream out;
  write_curves(t, CurvesFormat::csv, out);
  return out.str();
}

}  // namespace

TEST_CASE("pairs CSV") {
  const PairsTable one = parse_pairs_csv("predicted,observed\n1.0,1.0\n");
  CHECK(one.size() == 1);
  CHECK(one.predicted[0] == 1.0);
  CHECK(one.observed[0] == 1.0);
  CHECK(one.ids.empty());

  const PairsTable ids = parse_pairs_csv("id,predicted,observed\ns1,0.3,0.1\ns2,0.0,0.2\n");
  CHECK(ids.ids == std::vector<std::string>{"s1", "s2"});
  const ErrorVector e = ids.errors();
  CHECK(e[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(e[1] == -0.2);

  // CRLF, BOM, blank trailing lines, surrounding spaces, leading '+'.
  const PairsTable crlf = parse_pairs_csv("\xEF\xBB\xBFpredicted,observed\r\n 1.5 ,+2\r\n\r\n");
  CHECK(crlf.predicted[0] == 1.5);
  CHECK(crlf.observed[0] == 2.0);
}

TEST_CASE("pairs CSV errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_pairs_csv(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("predicted,observed\n1,2\nNaN,1\n") == 3);
  CHECK(line_of("predicted,observed\n1,inf\n") == 2);
  CHECK(line_of("predicted,observed\n1,abc\n") == 2);
  CHECK(line_of("predicted,observed\n1,2,3\n") == 2);
  CHECK(line_of("pred,obs\n1,2\n") == 1);
  CHECK(line_of("predicted,observed\n1,1e999\n") == 2);
  CHECK_THROWS_AS(parse_pairs_csv("predicted,observed\n"), InputError);
  CHECK_THROWS_AS(parse_pairs_csv(""), FormatError);
}

TEST_CASE("errors CSV") {
  CHECK(parse_errors_csv("error\n1\n-2\n2\n-3\n") == ErrorVector{1, -2, 2, -3});
  CHECK_THROWS_AS(parse_errors_csv("error\n"), InputError);
  CHECK_THROWS_AS(parse_errors_csv("errors\n1\n"), FormatError);
  CHECK_THROWS_AS(parse_errors_csv("error\n1\n# late comment\n"), FormatError);
}

TEST_CASE("property: errors CSV round-trips bit-exactly") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::uint64_t> bits;
  std::vector<double> v;
  while (v.size() < 5000) {
    const double x = std::bit_cast<double>(bits(gen));
    if (std::isfinite(x)) v.push_back(x);
  }
  v.insert(v.end(), {0.0, -0.0, 5e-324, 1.7976931348623157e308, 0.1, 1.0 / 3.0});
  std::ostringstream out;
  write_errors_csv(v, out);
  const ErrorVector back = parse_errors_csv(out.str());
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::bit_cast<std::uint64_t>(back[i]) == std::bit_cast<std::uint64_t>(v[i]));
}

TEST_CASE("load_error_data picks the file kind from the header") {
  const auto dir = std::filesystem::temp_directory_path() / "uaeval_io_test";
  std::filesystem::create_directories(dir);
  write_file(dir / "e.csv", "error\n1\n-2\n");
  write_file(dir / "p.csv", "predicted,observed\n1,0\n0,2\n");
  CHECK(load_error_data(dir / "e.csv") == ErrorVector{1, -2});
  CHECK(load_error_data(dir / "p.csv") == ErrorVector{1, -2});
  CHECK_THROWS_AS(load_error_data(dir / "p.csv", ErrorSource::errors), FormatError);
  CHECK_THROWS_AS(load_error_data(dir / "missing.csv"), IoError);
  CHECK_THROWS_AS(write_file(dir / "no_such_dir" / "x.csv", "x"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("write_summary") {
  const MetricsSummary s = summary(std::vector{1.0, -2.0, 2.0, -3.0});
  std::ostringstream csv;
  write_summary(s, SummaryFormat::csv, csv);
  CHECK(csv.str() ==
        "n,mae,e_max,e_min,e_median,rmse,u_a,bias\n"
        "4,2,3,1,2,2.1213203435596424,1.0606601717798212,-0.5\n");

  std::ostringstream json;
  write_summary(s, SummaryFormat::json, json);
  CHECK(parse_summary_json(json.str()) == s);

  std::ostringstream text;
  write_summary(summary(std::vector<double>(500, 0.313)), SummaryFormat::text, text);
  CHECK(text.str().find("0.0140") != std::string::npos);
  CHECK(text.str().find("0.313") != std::string::npos);
  CHECK(text.str().find("500") != std::string::npos);
  // Two lines, each column right-aligned to the same width.
  const auto nl = text.str().find('\n');
  CHECK(text.str().size() == 2 * (nl + 1));

  std::ostringstream five;
  write_summary(s, SummaryFormat::text, five, 5);
  CHECK(five.str().find("2.1213") != std::string::npos);
  CHECK_THROWS_AS(parse_summary_format("xml"), InputError);
}

TEST_CASE("curves CSV layout") {
  const std::string csv = curves_csv(to_table(envelope(1.0, 2)));
  const auto header = csv.find("metric,n,value,lo,hi,sd\n");
  REQUIRE(header != std::string::npos);
  CHECK(csv.substr(header) ==
        "metric,n,value,lo,hi,sd\n"
        "f_mae,1,1,,,\n"
        "f_mae,2,1,,,\n"
        "f_rmse,1,1,,,\n"
        "f_rmse,2,1.4142135623730951,,,\n"
        "f_ua,1,1,,,\n"
        "f_ua,2,0.7071067811865475,,,\n");
  // Metadata lines precede the header and carry no timestamps.
  for (std::size_t pos = 0; pos < header; pos = csv.find('\n', pos) + 1) CHECK(csv[pos] == '#');
  CHECK(csv.find("# version=") != std::string::npos);

  const std::string range = curves_csv(to_table(range_curve(std::vector{3.0, 2.0, 1.0})));
  CHECK(range.substr(range.find("metric,")) == "metric,n,value,lo,hi,sd\nd,1,2,,,\nd,2,1,,,\nd,3,0,,,\n");
}

TEST_CASE("curves rows are sorted and unique") {
  CurvesTable t;
  t.rows = {{"rmse", 2, 1.0, {}, {}, {}}, {"mae", 9, 2.0, {}, {}, {}}, {"mae", 3, 3.0, {}, {}, {}}};
  const std::string csv = curves_csv(t);
  CHECK(csv == "metric,n,value,lo,hi,sd\nmae,3,3,,,\nmae,9,2,,,\nrmse,2,1,,,\n");
  t.rows.push_back({"mae", 3, 4.0, {}, {}, {}});
  std::ostringstream sink;
  CHECK_THROWS_AS(write_curves(t, CurvesFormat::csv, sink), InputError);
}

TEST_CASE("property: curves round-trip through CSV and JSON") {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> val(0.0, 100.0);
  for (int trial = 0; trial < 20; ++trial) {
    CurvesTable t;
    t.meta = {{"kind", "test"}, {"seed", std::to_string(trial)}};
    for (const char* metric : {"mae", "rmse", "u_a"}) {
      for (std::size_t n = 1; n <= 15; ++n) {
        CurveRow r{metric, n, val(gen), {}, {}, {}};
        if (trial % 2) {
          r.lo = val(gen);
          r.hi = val(gen);
          r.sd = std::fabs(val(gen));
        }
        t.rows.push_back(r);
      }
    }
    for (CurvesFormat f : {CurvesFormat::csv, CurvesFormat::json}) {
      std::ostringstream out;
      write_curves(t, f, out);
      CHECK(parse_curves(out.str()) == t);
    }
  }
}

TEST_CASE("curves parser rejects malformed input") {
  CHECK_THROWS_AS(parse_curves("metric,n,value\nmae,1,1\n"), FormatError);
  CHECK_THROWS_AS(parse_curves("metric,n,value,lo,hi,sd\nmae,x,1,,,\n"), FormatError);
  CHECK_THROWS_AS(parse_curves("metric,n,value,lo,hi,sd\nmae,1,nan,,,\n"), FormatError);
  CHECK_THROWS_AS(parse_curves("{\"rows\": 3}"), FormatError);
  CHECK_THROWS_AS(parse_curves("{ not json"), FormatError);
}

TEST_CASE("render_svg structure") {
  CurvesTable two;
  two.rows = {{"f_mae", 1, 1.0, {}, {}, {}}, {"f_mae", 2, 1.0, {}, {}, {}}};
  std::ostringstream a;
  render_svg(two, a, {.title = "MAE <flat> & co"});
  const std::string svg = a.str();
  CHECK(svg.starts_with("<?xml"));
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_of(svg, "<polyline") == 1);
  CHECK(svg.find(">f_MAE<") != std::string::npos);
  CHECK(svg.find("MAE &lt;flat&gt; &amp; co") != std::string::npos);

  SweepResult r;
  r.sizes = {1, 2, 3};
  for (MetricCurve* c : {&r.mae, &r.rmse, &r.u_a}) *c = {{1, 1, 1}, {0.5, 0.5, 0.5}, {2, 2, 2}, {0.1, 0.1, 0.1}};
  std::ostringstream b;
  render_svg(to_table(r), b);
  const std::string sweep_svg = b.str();
  CHECK(count_of(sweep_svg, "<polyline") == 3);
  CHECK(count_of(sweep_svg, "<polygon") == 3);
  for (const char* label : {">MAE<", ">RMSE<", ">U_A<"}) CHECK(sweep_svg.find(label) != std::string::npos);

  CurvesTable with_zero;
  with_zero.rows = {{"d", 1, 2.0, {}, {}, {}}, {"d", 2, 1.0, {}, {}, {}}, {"d", 3, 0.0, {}, {}, {}}};
  std::ostringstream c;
  render_svg(with_zero, c, {.log_y = true});
  CHECK(count_of(c.str(), "<polyline") == 1);

  std::ostringstream sink;
  CHECK_THROWS_AS(render_svg(CurvesTable{}, sink), InputError);
}
