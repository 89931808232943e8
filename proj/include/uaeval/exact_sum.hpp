#pragma once

#include <span>
#include <vector>

namespace uaeval::detail {

// Accumulates doubles without rounding error (Shewchuk's non-overlapping
// partials, as in Python's math.fsum). value() is the exact sum rounded once
// to nearest-even, so it does not depend on the order of add() calls.
//
// Inputs must be finite and the running sum must stay in range; callers
// scale their data so that holds.
class ExactSum {
 public:
  ExactSum() { partials_.reserve(8); }

  void add(double x);
  void add(std::span<const double> xs) {
    for (double x : xs) add(x);
  }
  void clear() noexcept { partials_.clear(); }

  double value() const;

  std::span<const double> partials() const noexcept { return partials_; }

 private:
  std::vector<double> partials_;
};

}  // namespace uaeval::detail
