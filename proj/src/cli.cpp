#include "uaeval/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "uaeval/csv.hpp"
#include "uaeval/distgen.hpp"
#include "uaeval/error.hpp"
#include "uaeval/report.hpp"
#include "uaeval/svg.hpp"
#include "uaeval/sweep.hpp"
#include "uaeval/theory.hpp"

namespace uaeval::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::size_t kDefaultCount = 10000;
constexpr std::size_t kDefaultPlotNMax = 200;

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') return fs::path(dir) / p;
  }
  return p;
}

// Writes to the named file, or to `out` when no path (or "-") was given.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  io::write_file(resolve_output(path), content);
}

io::ErrorSource source_from_flags(bool pairs, bool errors) {
  if (pairs) return io::ErrorSource::pairs;
  if (errors) return io::ErrorSource::errors;
  return io::ErrorSource::detect;
}

io::CurvesFormat curves_format(const std::string& flag, const std::string& out_path) {
  if (!flag.empty()) return io::parse_curves_format(flag);
  return fs::path(out_path).extension() == ".json" ? io::CurvesFormat::json : io::CurvesFormat::csv;
}

struct EvaluateArgs {
  std::string file;
  bool pairs = false;
  bool errors = false;
  std::string format = "text";
  int precision = 3;
  std::string out;
};

struct SweepArgs {
  std::string file;
  std::string dist;
  std::vector<double> params;
  std::size_t count = kDefaultCount;
  std::size_t reps = 400;
  std::size_t n_min = 1;
  std::optional<std::size_t> n_max;
  std::size_t n_step = 1;
  std::string agg = "mean";
  std::string replacement = "without";
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
  std::string format;
};

struct SimulateArgs {
  std::string dist;
  std::vector<double> params;
  std::size_t count = kDefaultCount;
  std::uint64_t seed = 0;
  std::string transform = "identity";
  std::string out;
  std::size_t hist_bins = 0;
  std::string hist_out;
};

struct RangeArgs {
  std::string file;
  bool pairs = false;
  bool errors = false;
  std::string out;
  std::string format;
};

struct EnvelopeArgs {
  double mae = 0.0;
  std::size_t n_max = 0;
  std::string out;
  std::string format;
};

struct PlotArgs {
  std::string file;
  std::string out;
  std::string title;
  bool log_y = false;
};

void do_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const ErrorVector e = io::load_error_data(a.file, source_from_flags(a.pairs, a.errors));
  std::ostringstream buf;
  io::write_summary(summary(e), io::parse_summary_format(a.format), buf, a.precision);
  emit(a.out, buf.str(), out);
}

void do_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.file.empty() == a.dist.empty()) throw InputError("sweep needs exactly one of <file> or --dist");
  std::optional<ErrorVector> data;
  std::string source;
  if (!a.file.empty()) {
    data.emplace(io::load_error_data(a.file));
    source = "file:" + fs::path(a.file).filename().string();
  } else {
    const DistSpec spec = DistSpec::from_params(parse_family(a.dist), a.params);
    data.emplace(gen_errors(spec, a.count, a.seed));
    source = spec.describe() + " count=" + std::to_string(a.count);
  }

  SweepConfig cfg;
  cfg.n_min = a.n_min;
  cfg.n_step = a.n_step;
  cfg.reps = a.reps;
  cfg.aggregation = parse_aggregation(a.agg);
  cfg.replacement = parse_replacement(a.replacement);
  cfg.seed = a.seed;
  cfg.n_max = a.n_max.value_or(cfg.replacement == Replacement::without ? std::min(kDefaultPlotNMax, data->size())
                                                                        : kDefaultPlotNMax);

  io::CurvesTable table = io::to_table(run_sweep(*data, cfg, a.workers));
  table.meta.emplace_back("source", source);
  std::ostringstream buf;
  io::write_curves(std::move(table), curves_format(a.format, a.out), buf);
  emit(a.out, buf.str(), out);
}

void do_simulate(const SimulateArgs& a, std::ostream& out) {
  const DistSpec spec = DistSpec::from_params(parse_family(a.dist), a.params);
  const ErrorVector e = transform_errors(gen_errors(spec, a.count, a.seed), parse_transform(a.transform));
  std::ostringstream buf;
  io::write_errors_csv(e, buf);
  emit(a.out, buf.str(), out);
  if (a.hist_bins > 0) {
    std::string hist_path = a.hist_out;
    if (hist_path.empty()) {
      if (a.out.empty() || a.out == "-") throw InputError("--hist needs --hist-out when writing errors to stdout");
      hist_path = fs::path(a.out).replace_extension(".hist.csv").string();
    }
    std::ostringstream hbuf;
    io::write_histogram_csv(histogram(e, a.hist_bins), hbuf);
    emit(hist_path, hbuf.str(), out);
  }
}

void do_range(const RangeArgs& a, std::ostream& out) {
  const ErrorVector e = io::load_error_data(a.file, source_from_flags(a.pairs, a.errors));
  std::ostringstream buf;
  io::write_curves(io::to_table(range_curve(e)), curves_format(a.format, a.out), buf);
  emit(a.out, buf.str(), out);
}

void do_envelope(const EnvelopeArgs& a, std::ostream& out) {
  std::ostringstream buf;
  io::write_curves(io::to_table(envelope(a.mae, a.n_max)), curves_format(a.format, a.out), buf);
  emit(a.out, buf.str(), out);
}

void do_plot(const PlotArgs& a, std::ostream& out) {
  const io::CurvesTable table = io::load_curves(a.file);
  std::ostringstream buf;
  io::render_svg(table, buf, {.title = a.title, .log_y = a.log_y});
  emit(a.out, buf.str(), out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample-size-aware model evaluation: MAE, RMSE and type-A uncertainty", "uaeval"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", UAEVAL_VERSION);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Summary statistics of an error or pairs file");
  evaluate->add_option("file", ev.file, "CSV with header 'error' or '[id,]predicted,observed'")->required();
  auto* ev_pairs = evaluate->add_flag("--pairs", ev.pairs, "Treat the file as predicted/observed pairs");
  evaluate->add_flag("--errors", ev.errors, "Treat the file as precomputed errors")->excludes(ev_pairs);
  evaluate->add_option("--format", ev.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  evaluate->add_option("--precision", ev.precision, "Significant figures in text output")->check(CLI::Range(1, 17));
  evaluate->add_option("--out", ev.out, "Output path (default stdout)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Bootstrap sample-size sweep of MAE, RMSE and U_A");
  sweep->add_option("file", sw.file, "Error or pairs CSV");
  sweep->add_option("--dist", sw.dist, "Simulate errors: normal, exponential, lognormal or uniform");
  sweep->add_option("--params", sw.params, "Distribution parameters")
      ->default_str("")
      ->delimiter(',')->expected(1, 2);
  sweep->add_option("--count", sw.count, "Number of simulated errors")->check(CLI::PositiveNumber);
  sweep->add_option("--reps", sw.reps, "Subsets drawn per size");
  sweep->add_option("--n-min", sw.n_min, "Smallest subset size");
  sweep->add_option("--n-max", sw.n_max, "Largest subset size (default min(200, N))");
  sweep->add_option("--n-step", sw.n_step, "Size increment");
  sweep->add_option("--agg", sw.agg, "mean or median")->check(CLI::IsMember({"mean", "median"}));
  sweep->add_option("--replacement", sw.replacement, "without or with")->check(CLI::IsMember({"without", "with"}));
  sweep->add_option("--seed", sw.seed, "Master seed");
  sweep->add_option("--workers", sw.workers, "Worker threads (0 = all cores); does not change results");
  sweep->add_option("--out", sw.out, "Output path (default stdout)");
  sweep->add_option("--format", sw.format, "csv or json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a simulated error set");
  simulate->add_option("--dist", sim.dist, "normal, exponential, lognormal or uniform")->required();
  simulate->add_option("--params", sim.params, "Distribution parameters")
      ->default_str("")
      ->delimiter(',')->expected(1, 2);
  simulate->add_option("--count", sim.count, "Number of errors")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Seed");
  simulate->add_option("--transform", sim.transform, "identity, absolute or squared")
      ->check(CLI::IsMember({"identity", "absolute", "squared"}));
  simulate->add_option("--out", sim.out, "Errors CSV path (default stdout)");
  simulate->add_option("--hist", sim.hist_bins, "Also write a histogram with this many bins")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--hist-out", sim.hist_out, "Histogram path (default <out>.hist.csv)");

  RangeArgs rg;
  auto* range = app.add_subcommand("range", "MAE spread range d_i versus subset size");
  range->add_option("file", rg.file, "Error or pairs CSV")->required();
  auto* rg_pairs = range->add_flag("--pairs", rg.pairs, "Treat the file as predicted/observed pairs");
  range->add_flag("--errors", rg.errors, "Treat the file as precomputed errors")->excludes(rg_pairs);
  range->add_option("--out", rg.out, "Output path (default stdout)");
  range->add_option("--format", rg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  EnvelopeArgs env;
  auto* envelope_cmd = app.add_subcommand("envelope", "RMSE and U_A zones around a constant MAE");
  envelope_cmd->add_option("--mae", env.mae, "MAE (> 0)")->required();
  envelope_cmd->add_option("--n-max", env.n_max, "Largest n")->required();
  envelope_cmd->add_option("--out", env.out, "Output path (default stdout)");
  envelope_cmd->add_option("--format", env.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Render a curves file as SVG");
  plot->add_option("curves", pl.file, "Curves CSV or JSON")->required();
  plot->add_option("--out", pl.out, "SVG path (default stdout)");
  plot->add_option("--title", pl.title, "Chart title");
  plot->add_flag("--log-y", pl.log_y, "Logarithmic y axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (evaluate->parsed()) do_evaluate(ev, out);
    else if (sweep->parsed()) do_sweep(sw, out);
    else if (simulate->parsed()) do_simulate(sim, out);
    else if (range->parsed()) do_range(rg, out);
    else if (envelope_cmd->parsed()) do_envelope(env, out);
    else if (plot->parsed()) do_plot(pl, out);
    return kSuccess;
  } catch (const IoError& e) {
    err << "uaeval: " << e.what() << '\n';
    return kIoError;
  } catch (const InvariantError& e) {
    err << "uaeval: internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "uaeval: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "uaeval: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("uaeval");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace uaeval::cli
