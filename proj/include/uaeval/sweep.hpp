#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uaeval/metrics.hpp"
#include "uaeval/random.hpp"

namespace uaeval {

enum class Aggregation { mean, median };
enum class Replacement { without, with };

std::string_view to_string(Aggregation a) noexcept;
std::string_view to_string(Replacement r) noexcept;
Aggregation parse_aggregation(std::string_view name);
Replacement parse_replacement(std::string_view name);

/// Parameters of a bootstrap sample-size sweep. The sizes visited are
/// n_min, n_min + n_step, ... up to and including n_max when it lies on
/// that grid.
struct SweepConfig {
  std::size_t n_min = 1;
  std::optional<std::size_t> n_max;  // defaults to the dataset size
  std::size_t n_step = 1;
  std::size_t reps = 400;
  Aggregation aggregation = Aggregation::mean;
  Replacement replacement = Replacement::without;
  std::uint64_t seed = 0;
};

/// Aggregated values of one metric along the size axis, with the spread of
/// the per-subset values at each size.
struct MetricCurve {
  std::vector<double> value;
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> sd;  // sample standard deviation; 0 when reps == 1
};

struct SweepResult {
  SweepConfig config;  // n_max resolved
  std::size_t dataset_size = 0;
  std::string generator{random::kGeneratorName};
  std::vector<std::size_t> sizes;
  MetricCurve mae;
  MetricCurve rmse;
  MetricCurve u_a;
};

/// Mean or median of a nonempty sequence. The mean is computed from an
/// exact sum and kept within [min, max] of the inputs.
double aggregate(std::span<const double> values, Aggregation mode);

/// Draws `size` errors from `e` using `stream`. Without replacement the
/// indices are distinct (partial Fisher-Yates); with replacement they are
/// independent uniform draws.
ErrorVector subsample(const ErrorVector& e, std::size_t size, random::PhiloxStream& stream,
                      Replacement replacement = Replacement::without);

/// Runs the sweep. Repetition r at size n draws from the Philox stream
/// (seed, n, r), so the result depends only on (e, cfg) and not on
/// `workers` (0 means one per hardware thread).
///
/// Every subset is checked against MAE <= RMSE <= sqrt(n) MAE; a violation
/// throws InvariantError.
SweepResult run_sweep(const ErrorVector& e, const SweepConfig& cfg, unsigned workers = 0);

}  // namespace uaeval
