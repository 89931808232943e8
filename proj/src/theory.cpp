#include "uaeval/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "uaeval/error.hpp"
#include "uaeval/exact_sum.hpp"

namespace uaeval {

namespace {

using detail::ExactSum;

// Sign of (S - q * k) where S is held exactly in `sum`.
int residual_sign(const ExactSum& sum, double q, double k) {
  ExactSum r;
  r.add(sum.partials());
  const double p = q * k;
  r.add(-p);
  r.add(-std::fma(q, k, -p));
  const double v = r.value();
  return (v > 0.0) - (v < 0.0);
}

// S / k rounded to nearest-even, S exact, k a positive integer below 2^53.
// Works for S >= 0, which is all range_curve needs.
double divide_rounded(const ExactSum& sum, std::size_t count) {
  const double k = static_cast<double>(count);
  double q = sum.value() / k;
  constexpr double inf = std::numeric_limits<double>::infinity();

  int s = residual_sign(sum, q, k);
  if (s == 0) return q;
  double lo, hi;
  if (s > 0) {
    lo = q;
    hi = std::nextafter(q, inf);
    while (residual_sign(sum, hi, k) > 0) {
      lo = hi;
      hi = std::nextafter(hi, inf);
    }
  } else {
    hi = q;
    lo = std::nextafter(q, -inf);
    while (residual_sign(sum, lo, k) < 0) {
      hi = lo;
      lo = std::nextafter(lo, -inf);
    }
  }
  if (residual_sign(sum, lo, k) == 0) return lo;
  if (residual_sign(sum, hi, k) == 0) return hi;

  // Nearer of lo/hi: sign of 2S - (lo + hi) k.
  ExactSum twice;
  twice.add(sum.partials());
  twice.add(sum.partials());
  for (double c : {lo, hi}) {
    const double p = c * k;
    twice.add(-p);
    twice.add(-std::fma(c, k, -p));
  }
  const double side = twice.value();
  if (side > 0.0) return hi;
  if (side < 0.0) return lo;
  int exp_lo = 0;
  const double mant = std::frexp(lo, &exp_lo);
  const auto bits = static_cast<long long>(std::ldexp(mant, 53));
  return (bits % 2 == 0) ? lo : hi;
}

bool leq_one_ulp(double lhs, double rhs) {
  return lhs <= rhs || lhs <= std::nextafter(rhs, std::numeric_limits<double>::infinity());
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

RangeCurve range_curve(std::span<const double> e) {
  if (e.empty()) throw InputError("range curve of an empty vector");
  std::vector<double> ascending(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!std::isfinite(e[i])) throw InputError("range curve input contains a non-finite value");
    ascending[i] = std::fabs(e[i]);
  }
  std::sort(ascending.begin(), ascending.end());

  RangeCurve out;
  const std::size_t n = ascending.size();
  out.sizes.resize(n);
  out.d.assign(n, 0.0);
  const double max_abs = ascending.back();
  if (max_abs == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.sizes[i] = i + 1;
    return out;
  }
  // Power-of-two scaling keeps the running sums in range without rounding.
  const int exponent = std::ilogb(max_abs);
  for (double& x : ascending) x = std::ldexp(x, -exponent);

  ExactSum spread;
  for (std::size_t i = 0; i < n; ++i) {
    spread.add(ascending[n - 1 - i]);
    spread.add(-ascending[i]);
    out.sizes[i] = i + 1;
    out.d[i] = std::ldexp(divide_rounded(spread, i + 1), exponent);
  }
  return out;
}

double delta_d(std::span<const double> e, std::size_t i) {
  if (i < 1 || i + 1 > e.size())
    throw InputError("delta_d index " + std::to_string(i) + " outside 1.." +
                     std::to_string(e.empty() ? 0 : e.size() - 1));
  const RangeCurve curve = range_curve(e);
  return curve.d[i] - curve.d[i - 1];
}

EnvelopeCurves envelope(double mae, std::size_t n_max) {
  if (!std::isfinite(mae) || !(mae > 0.0)) throw InputError("envelope needs a positive, finite MAE");
  if (n_max < 1) throw InputError("envelope needs n_max >= 1");
  EnvelopeCurves out;
  out.mae = mae;
  out.sizes.resize(n_max);
  out.f_mae.assign(n_max, mae);
  out.f_rmse.resize(n_max);
  out.f_ua.resize(n_max);
  for (std::size_t i = 0; i < n_max; ++i) {
    const double root_n = std::sqrt(static_cast<double>(i + 1));
    out.sizes[i] = i + 1;
    out.f_rmse[i] = root_n * mae;
    out.f_ua[i] = mae / root_n;
  }
  return out;
}

BoundsReport bounds_check(std::span<const double> e) {
  const CoreMetrics m = core_metrics(e);
  BoundsReport r;
  r.n = e.size();
  r.mae = m.mae;
  r.rmse = m.rmse;
  r.u_a = m.u_a;
  const double root_n = std::sqrt(static_cast<double>(r.n));
  r.sqrt_n_mae = root_n * m.mae;
  r.mae_over_sqrt_n = m.mae / root_n;
  r.mae_le_rmse = leq_one_ulp(r.mae, r.rmse);
  r.rmse_le_sqrt_n_mae = leq_one_ulp(r.rmse, r.sqrt_n_mae);
  r.mae_over_sqrt_n_le_u_a = leq_one_ulp(r.mae_over_sqrt_n, r.u_a);
  r.u_a_le_mae = leq_one_ulp(r.u_a, r.mae);
  return r;
}

AnalyticMoments analytic_moments(const DistSpec& spec) {
  AnalyticMoments m;
  const double p1 = spec.first();
  const double p2 = spec.second();
  switch (spec.family()) {
    case Family::normal: {
      const double mu = p1;
      const double sigma = p2;
      m.mean_abs = sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-mu * mu / (2.0 * sigma * sigma)) +
                   mu * std::erf(mu / (sigma * std::numbers::sqrt2));
      m.rms = std::hypot(mu, sigma);
      // P(|X| <= t) = Phi((t - mu)/sigma) - Phi((-t - mu)/sigma), increasing in t.
      auto excess = [&](double t) {
        return normal_cdf((t - mu) / sigma) - normal_cdf((-t - mu) / sigma) - 0.5;
      };
      std::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          excess, 0.0, std::fabs(mu) + 10.0 * sigma, -0.5, excess(std::fabs(mu) + 10.0 * sigma),
          boost::math::tools::eps_tolerance<double>(52), iterations);
      m.median_abs = 0.5 * (bracket.first + bracket.second);
      break;
    }
    case Family::exponential:
      m.mean_abs = 1.0 / p1;
      m.rms = std::numbers::sqrt2 / p1;
      m.median_abs = std::numbers::ln2 / p1;
      break;
    case Family::lognormal:
      m.mean_abs = std::exp(p1 + 0.5 * p2 * p2);
      m.rms = std::exp(p1 + p2 * p2);
      m.median_abs = std::exp(p1);
      break;
    case Family::uniform: {
      const double a = p1;
      const double b = p2;
      m.rms = std::sqrt((a * a + a * b + b * b) / 3.0);
      if (a >= 0.0 || b <= 0.0) {
        m.mean_abs = std::fabs(a + b) / 2.0;
        m.median_abs = m.mean_abs;
      } else {
        m.mean_abs = (a * a + b * b) / (2.0 * (b - a));
        // |X| has density 2/(b-a) on [0, min(-a, b)], then 1/(b-a).
        const double width = b - a;
        m.median_abs = (2.0 * std::min(-a, b) >= 0.5 * width) ? width / 4.0 : std::fabs(a + b) / 2.0;
      }
      break;
    }
  }
  return m;
}

std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::up: return "up";
    case Trend::down: return "down";
    case Trend::flat: return "flat";
  }
  return "flat";
}

Trend classify_trend(std::span<const double> curve, double threshold) {
  if (curve.size() < 4) throw InputError("trend classification needs at least 4 points");
  if (!(threshold >= 0.0)) throw InputError("trend threshold must be nonnegative");
  const std::size_t quarter = curve.size() / 4;
  auto mean_of = [](std::span<const double> part) {
    ExactSum s;
    s.add(part);
    return s.value() / static_cast<double>(part.size());
  };
  const double head = mean_of(curve.first(quarter));
  const double tail = mean_of(curve.last(quarter));
  if (!std::isfinite(head) || !std::isfinite(tail)) throw InputError("trend curve contains non-finite values");
  if (head == tail) return Trend::flat;
  if (head == 0.0) return tail > 0.0 ? Trend::up : Trend::down;
  const double change = (tail - head) / std::fabs(head);
  if (change > threshold) return Trend::up;
  if (change < -threshold) return Trend::down;
  return Trend::flat;
}

}  // namespace uaeval
