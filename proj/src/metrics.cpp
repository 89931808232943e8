#include "uaeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uaeval/error.hpp"
#include "uaeval/exact_sum.hpp"

namespace uaeval {

namespace {

void require_nonempty(std::span<const double> e) {
  if (e.empty()) throw InputError("error vector is empty");
}

// Exact sums over the errors after scaling by a power of two, so that the
// largest magnitude lies in [1, 2). Scaling by 2^-k is exact, keeps sums of
// squares far from overflow, and preserves sqrt(fl(x*x)) == |x| at n = 1.
struct ScaledSums {
  std::size_t n = 0;
  int exponent = 0;
  double sum_abs = 0.0;
  double sum_sq = 0.0;
  double sum_signed = 0.0;
  bool all_zero = true;
};

ScaledSums scaled_sums(std::span<const double> e, bool want_signed) {
  require_nonempty(e);
  double max_abs = 0.0;
  for (double x : e) {
    if (!std::isfinite(x)) throw InputError("error vector contains a non-finite value");
    max_abs = std::max(max_abs, std::fabs(x));
  }
  ScaledSums s;
  s.n = e.size();
  if (max_abs == 0.0) return s;
  s.all_zero = false;
  s.exponent = std::ilogb(max_abs);

  detail::ExactSum abs_sum;
  detail::ExactSum sq_sum;
  detail::ExactSum signed_sum;
  for (double raw : e) {
    const double x = std::ldexp(raw, -s.exponent);
    abs_sum.add(std::fabs(x));
    const double sq = x * x;
    sq_sum.add(sq);
    sq_sum.add(std::fma(x, x, -sq));
    if (want_signed) signed_sum.add(x);
  }
  s.sum_abs = abs_sum.value();
  s.sum_sq = sq_sum.value();
  if (want_signed) s.sum_signed = signed_sum.value();
  return s;
}

double count(std::size_t n) { return static_cast<double>(n); }

CoreMetrics core_from(const ScaledSums& s) {
  if (s.all_zero) return {};
  const double n = count(s.n);
  CoreMetrics m;
  m.mae = std::ldexp(s.sum_abs / n, s.exponent);
  m.rmse = std::ldexp(std::sqrt(s.sum_sq / n), s.exponent);
  m.u_a = m.rmse / std::sqrt(n);
  return m;
}

}  // namespace

ErrorVector::ErrorVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("error vector is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw InputError("error vector element " + std::to_string(i) + " is not finite");
  }
}

ErrorVector errors_from_pairs(std::span<const double> predicted, std::span<const double> observed) {
  if (predicted.empty() || observed.empty()) throw InputError("predicted/observed sequences are empty");
  if (predicted.size() != observed.size())
    throw InputError("predicted has " + std::to_string(predicted.size()) + " values but observed has " +
                     std::to_string(observed.size()));
  std::vector<double> e(predicted.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!std::isfinite(predicted[i]) || !std::isfinite(observed[i]))
      throw InputError("pair " + std::to_string(i) + " is not finite");
    e[i] = predicted[i] - observed[i];
  }
  return ErrorVector(std::move(e));
}

CoreMetrics core_metrics(std::span<const double> e) { return core_from(scaled_sums(e, false)); }

double mae(std::span<const double> e) { return core_metrics(e).mae; }

double rmse(std::span<const double> e) { return core_metrics(e).rmse; }

double u_a(std::span<const double> e) { return core_metrics(e).u_a; }

double u_a_gum(std::span<const double> e) {
  require_nonempty(e);
  if (e.size() < 2) throw DomainError("type-A uncertainty in the n(n-1) form needs at least 2 errors");
  const ScaledSums s = scaled_sums(e, false);
  if (s.all_zero) return 0.0;
  const double n = count(s.n);
  return std::ldexp(std::sqrt(s.sum_sq / (n * (n - 1.0))), s.exponent);
}

double bias(std::span<const double> e) {
  const ScaledSums s = scaled_sums(e, true);
  if (s.all_zero) return 0.0;
  return std::ldexp(s.sum_signed / count(s.n), s.exponent);
}

double median(std::span<const double> values) {
  if (values.empty()) throw InputError("median of an empty sequence");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return std::midpoint(lower, upper);
}

MetricsSummary summary(std::span<const double> e) {
  const ScaledSums s = scaled_sums(e, true);
  const CoreMetrics core = core_from(s);

  std::vector<double> abs_errors(e.size());
  std::transform(e.begin(), e.end(), abs_errors.begin(), [](double x) { return std::fabs(x); });
  const auto [lo, hi] = std::minmax_element(abs_errors.begin(), abs_errors.end());

  MetricsSummary out;
  out.n = s.n;
  out.mae = core.mae;
  out.rmse = core.rmse;
  out.u_a = core.u_a;
  out.e_max = *hi;
  out.e_min = *lo;
  out.e_median = median(abs_errors);
  out.bias = s.all_zero ? 0.0 : std::ldexp(s.sum_signed / count(s.n), s.exponent);
  return out;
}

}  // namespace uaeval
