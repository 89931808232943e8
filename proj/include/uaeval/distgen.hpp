#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uaeval/metrics.hpp"

namespace uaeval {

enum class Family { normal, exponential, lognormal, uniform };

std::string_view to_string(Family f) noexcept;
/// Throws InputError for unknown names.
Family parse_family(std::string_view name);

/// A simulated error distribution. Parameters by family:
///   normal:      first = mean,      second = stddev (> 0)
///   exponential: first = rate (> 0)
///   lognormal:   first = log-mean,  second = log-stddev (> 0)
///   uniform:     first = lower,     second = upper (> lower)
class DistSpec {
 public:
  static DistSpec normal(double mean = 0.0, double stddev = 1.0);
  static DistSpec exponential(double rate = 1.0);
  static DistSpec lognormal(double log_mean = 0.0, double log_stddev = 1.0);
  static DistSpec uniform(double lower = 0.0, double upper = 1.0);

  /// Builds a spec from a family and its parameter list; an empty list
  /// selects the family defaults (N(0,1), rate 1, logN(0,1), U(0,1)).
  static DistSpec from_params(Family family, std::span<const double> params);

  Family family() const noexcept { return family_; }
  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }
  std::vector<double> params() const;

  /// e.g. "normal(0,1)"
  std::string describe() const;

  friend bool operator==(const DistSpec&, const DistSpec&) = default;

 private:
  DistSpec(Family family, double first, double second);

  Family family_;
  double first_;
  double second_;
};

/// `count` independent draws, a pure function of (spec, count, seed).
///
/// Uses the Philox stream (seed, 0, 0). Exponential draws use the inverse
/// CDF; normal and lognormal draws use the Box-Muller transform on
/// consecutive uniform pairs.
ErrorVector gen_errors(const DistSpec& spec, std::size_t count, std::uint64_t seed);

struct Histogram {
  std::vector<double> edges;          // counts.size() + 1, strictly ascending
  std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; bins are half-open except the last,
/// which is closed. A constant input yields one bin [c - 0.5, c + 0.5].
Histogram histogram(std::span<const double> values, std::size_t bins);

enum class Transform { identity, absolute, squared };

Transform parse_transform(std::string_view name);

ErrorVector transform_errors(const ErrorVector& e, Transform kind);

}  // namespace uaeval
