#pragma once

// Test-only reference computations. Deliberately naive: plain left-to-right
// long double loops and a full sort, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline long double sum_abs(const std::vector<double>& e) {
  long double s = 0;
  for (double x : e) s += std::fabs(static_cast<long double>(x));
  return s;
}

inline long double sum_sq(const std::vector<double>& e) {
  long double s = 0;
  for (double x : e) s += static_cast<long double>(x) * x;
  return s;
}

inline double mae(const std::vector<double>& e) { return static_cast<double>(sum_abs(e) / e.size()); }

inline double rmse(const std::vector<double>& e) { return static_cast<double>(std::sqrt(sum_sq(e) / e.size())); }

inline double u_a(const std::vector<double>& e) {
  const long double n = e.size();
  return static_cast<double>(std::sqrt(sum_sq(e)) / n);
}

inline double u_a_gum(const std::vector<double>& e) {
  const long double n = e.size();
  return static_cast<double>(std::sqrt(sum_sq(e) / (n * (n - 1))));
}

inline double bias(const std::vector<double>& e) {
  long double s = 0;
  for (double x : e) s += x;
  return static_cast<double>(s / e.size());
}

inline double median_abs(const std::vector<double>& e) {
  std::vector<double> a;
  for (double x : e) a.push_back(std::fabs(x));
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  return n % 2 ? a[n / 2] : (static_cast<long double>(a[n / 2 - 1]) + a[n / 2]) / 2;
}

// Descending/ascending order-statistic sums, straight from the definition.
inline std::vector<long double> range_curve(const std::vector<double>& e) {
  std::vector<double> a;
  for (double x : e) a.push_back(std::fabs(x));
  std::sort(a.begin(), a.end());
  std::vector<long double> d;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    long double top = 0, bottom = 0;
    for (std::size_t m = 0; m < i; ++m) {
      top += a[a.size() - 1 - m];
      bottom += a[m];
    }
    d.push_back((top - bottom) / i);
  }
  return d;
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

// Random vectors: lengths 1..max_len, values uniform in [-bound, bound].
inline std::vector<std::vector<double>> random_vectors(std::size_t count, std::size_t max_len, double bound,
                                                       unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> val(-bound, bound);
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> v(len(gen));
    for (double& x : v) x = val(gen);
    out.push_back(std::move(v));
  }
  return out;
}

// Composite Simpson rule on [a, b] with an even number of panels.
template <class F>
double simpson(F f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
