#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "uaeval/distgen.hpp"

namespace uaeval {

/// Largest possible spread of a size-i subset MAE, for i = 1..n:
///   d_i = (sum of the i largest |e| - sum of the i smallest |e|) / i.
struct RangeCurve {
  std::vector<std::size_t> sizes;
  std::vector<double> d;
};

/// Each d_i is the exact quotient rounded once to nearest, so the curve is
/// non-increasing, d_1 == max|e| - min|e| and d_n == 0 hold bit-exactly.
RangeCurve range_curve(std::span<const double> e);

/// d_{i+1} - d_i for 1 <= i <= n - 1. Never positive.
double delta_d(std::span<const double> e, std::size_t i);

/// The zones that bound RMSE and U_A trends when MAE is held constant:
/// f_mae(n) = mae, f_rmse(n) = sqrt(n) mae, f_ua(n) = mae / sqrt(n).
struct EnvelopeCurves {
  double mae = 0.0;
  std::vector<std::size_t> sizes;
  std::vector<double> f_mae;
  std::vector<double> f_rmse;
  std::vector<double> f_ua;
};

EnvelopeCurves envelope(double mae, std::size_t n_max);

struct BoundsReport {
  std::size_t n = 0;
  double mae = 0.0;
  double rmse = 0.0;
  double u_a = 0.0;
  double sqrt_n_mae = 0.0;     // upper bound for RMSE
  double mae_over_sqrt_n = 0.0;  // lower bound for U_A
  bool mae_le_rmse = false;
  bool rmse_le_sqrt_n_mae = false;
  bool mae_over_sqrt_n_le_u_a = false;
  bool u_a_le_mae = false;

  bool all_hold() const noexcept {
    return mae_le_rmse && rmse_le_sqrt_n_mae && mae_over_sqrt_n_le_u_a && u_a_le_mae;
  }
};

/// Evaluates MAE <= RMSE <= sqrt(n) MAE and MAE/sqrt(n) <= U_A <= MAE on the
/// metric values of `e`, each comparison allowing one ulp.
BoundsReport bounds_check(std::span<const double> e);

/// Closed-form E|X|, sqrt(E[X^2]) and median|X| for a distribution.
struct AnalyticMoments {
  double mean_abs = 0.0;
  double rms = 0.0;
  double median_abs = 0.0;
};

AnalyticMoments analytic_moments(const DistSpec& spec);

enum class Trend { up, down, flat };

std::string_view to_string(Trend t) noexcept;

/// Compares the mean of the first quarter of `curve` with the mean of the
/// last quarter. A relative change beyond `threshold` is a trend.
/// Needs at least 4 points.
Trend classify_trend(std::span<const double> curve, double threshold = 0.05);

}  // namespace uaeval
