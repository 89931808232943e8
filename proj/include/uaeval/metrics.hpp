#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uaeval {

/// Signed model-minus-observation errors, one per sample.
///
/// Always nonempty and finite; the constructor throws InputError otherwise.
class ErrorVector {
 public:
  explicit ErrorVector(std::vector<double> values);
  ErrorVector(std::initializer_list<double> values) : ErrorVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  std::span<const double> values() const noexcept { return values_; }
  operator std::span<const double>() const noexcept { return values_; }  // NOLINT

  friend bool operator==(const ErrorVector&, const ErrorVector&) = default;

 private:
  std::vector<double> values_;
};

/// One row of the population summary table. e_max, e_min and e_median are
/// taken over absolute errors; bias is the mean signed error.
struct MetricsSummary {
  std::size_t n = 0;
  double mae = 0.0;
  double e_max = 0.0;
  double e_min = 0.0;
  double e_median = 0.0;
  double rmse = 0.0;
  double u_a = 0.0;
  double bias = 0.0;

  friend bool operator==(const MetricsSummary&, const MetricsSummary&) = default;
};

/// The three per-subset quantities tracked by the sample-size sweep.
struct CoreMetrics {
  double mae = 0.0;
  double rmse = 0.0;
  double u_a = 0.0;
};

/// predicted[i] - observed[i], order preserved.
ErrorVector errors_from_pairs(std::span<const double> predicted, std::span<const double> observed);

// All estimators below accept any span of finite values and throw
// InputError when it is empty or holds NaN/inf. Sums are exact and rounded
// once, so results do not depend on the order of the errors.

double mae(std::span<const double> e);
double rmse(std::span<const double> e);

/// RMSE / sqrt(n): the sample-size-aware uncertainty. Defined for n = 1.
double u_a(std::span<const double> e);

/// sqrt(sum e^2 / (n (n - 1))), the GUM type-A form. Throws DomainError
/// for n = 1 (and InputError for n = 0).
double u_a_gum(std::span<const double> e);

double bias(std::span<const double> e);

/// mae, rmse and u_a in one pass; bit-identical to the individual functions.
CoreMetrics core_metrics(std::span<const double> e);

MetricsSummary summary(std::span<const double> e);

/// Median with the even-length convention "mean of the two middle values".
double median(std::span<const double> values);

}  // namespace uaeval
